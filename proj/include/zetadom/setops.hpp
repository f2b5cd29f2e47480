#pragma once

#include <algorithm>
#include <vector>

namespace zetadom {

// Sorted small-vector set helpers; bags are tiny, linear is fine.
inline bool set_contains(const std::vector<int>& s, int v) {
    return std::binary_search(s.begin(), s.end(), v);
}

inline std::vector<int> set_with(const std::vector<int>& s, int v) {
    std::vector<int> out = s;
    auto it = std::lower_bound(out.begin(), out.end(), v);
    if (it == out.end() || *it != v) out.insert(it, v);
    return out;
}

inline std::vector<int> set_without(const std::vector<int>& s, int v) {
    std::vector<int> out = s;
    auto it = std::lower_bound(out.begin(), out.end(), v);
    if (it != out.end() && *it == v) out.erase(it);
    return out;
}

inline bool set_subset(const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool sets_disjoint(const std::vector<int>& a, const std::vector<int>& b) {
    auto ia = a.begin();
    for (int v : b) {
        while (ia != a.end() && *ia < v) ++ia;
        if (ia != a.end() && *ia == v) return false;
    }
    return true;
}

} // namespace zetadom
