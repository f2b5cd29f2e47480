#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace zetadom {

// Coefficient vector of the size-indexed counting polynomial: entry j holds
// the number of dominating traces of size exactly j. Logical length is always
// n+1; storage is truncated after the last (potentially) nonzero entry so that
// deep strands over small subtrees stay cheap.
template <class V>
struct CoeffVector {
    std::size_t logical = 0;
    std::vector<V> c;

    CoeffVector() = default;
    explicit CoeffVector(std::size_t len) : logical(len) {}

    std::size_t size() const { return logical; }
    std::size_t stored() const { return c.size(); }

    const V& get(std::size_t j) const {
        static const V kZero{};
        return j < c.size() ? c[j] : kZero;
    }
    void set(std::size_t j, V v) {
        if (j >= logical) return;
        if (j >= c.size()) c.resize(j + 1);
        c[j] = std::move(v);
    }

    template <class Ring>
    void add_in(const CoeffVector& o, const Ring& ring) {
        if (o.c.size() > c.size()) c.resize(o.c.size());
        for (std::size_t j = 0; j < o.c.size(); ++j) ring.add_in(c[j], o.c[j]);
    }
    template <class Ring>
    void sub_in(const CoeffVector& o, const Ring& ring) {
        if (o.c.size() > c.size()) c.resize(o.c.size());
        for (std::size_t j = 0; j < o.c.size(); ++j) ring.sub_in(c[j], o.c[j]);
    }
    // Multiply by y: entry j moves to j+1. Anything pushed past index n is
    // dropped (a trace can never exceed n vertices).
    void shift_up() {
        if (c.empty()) return;
        c.insert(c.begin(), V{});
        if (c.size() > logical) c.resize(logical);
    }

    // Least j with a nonzero entry, or -1 if none.
    template <class Ring>
    long long first_nonzero(const Ring& ring) const {
        for (std::size_t j = 0; j < c.size(); ++j)
            if (!ring.is_zero(c[j])) return static_cast<long long>(j);
        return -1;
    }
};

// out[j] = sum over j' + j'' = j + offset of a[j'] * b[j''].
template <class V, class Ring>
CoeffVector<V> convolve_offset(const CoeffVector<V>& a, const CoeffVector<V>& b,
                               std::size_t offset, const Ring& ring) {
    CoeffVector<V> out(a.logical);
    if (a.c.empty() || b.c.empty()) return out;
    std::size_t hi = a.c.size() + b.c.size() - 2;
    if (hi >= offset) {
        std::size_t top = std::min(hi - offset, out.logical - 1);
        out.c.assign(top + 1, V{});
        for (std::size_t ja = 0; ja < a.c.size(); ++ja) {
            if (ring.is_zero(a.c[ja])) continue;
            for (std::size_t jb = 0; jb < b.c.size(); ++jb) {
                std::size_t s = ja + jb;
                if (s < offset || s - offset > top) continue;
                ring.add_in(out.c[s - offset], ring.mul(a.c[ja], b.c[jb]));
            }
        }
    }
    return out;
}

} // namespace zetadom
