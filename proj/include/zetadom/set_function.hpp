#pragma once

#include <bit>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace zetadom {

inline constexpr int kUniverseCap = 25;

// Dense function 2^universe -> ring, indexed by subset bitmask. This module
// is the reference lattice algebra used to cross-check the solver's
// zeta-domain computation; it is never on the solver's hot path.
template <class Ring>
struct SetFunction {
    using Value = typename Ring::Value;
    int m = 0;
    std::vector<Value> v;

    SetFunction() = default;
    explicit SetFunction(int universe) : m(universe) {
        if (universe < 0 || universe > kUniverseCap)
            throw std::invalid_argument("SetFunction universe size out of range");
        v.assign(std::size_t{1} << universe, Value{});
    }
    std::size_t size() const { return v.size(); }
};

// zeta f[Y] = sum over X subseteq Y of f[X], one lattice dimension at a time.
template <class Ring>
SetFunction<Ring> zeta_transform(const SetFunction<Ring>& f, const Ring& ring) {
    SetFunction<Ring> out = f;
    for (int d = 0; d < out.m; ++d) {
        const std::size_t bit = std::size_t{1} << d;
        for (std::size_t s = 0; s < out.size(); ++s)
            if (s & bit) ring.add_in(out.v[s], out.v[s ^ bit]);
    }
    return out;
}

// mu f[Y] = sum over X subseteq Y of (-1)^{|Y\X|} f[X]; inverse of zeta.
template <class Ring>
SetFunction<Ring> mobius_transform(const SetFunction<Ring>& f, const Ring& ring) {
    SetFunction<Ring> out = f;
    for (int d = 0; d < out.m; ++d) {
        const std::size_t bit = std::size_t{1} << d;
        for (std::size_t s = 0; s < out.size(); ++s)
            if (s & bit) ring.sub_in(out.v[s], out.v[s ^ bit]);
    }
    return out;
}

// Direct double loop over subset pairs; test oracle for the fast transform.
template <class Ring>
SetFunction<Ring> zeta_transform_naive(const SetFunction<Ring>& f, const Ring& ring) {
    SetFunction<Ring> out(f.m);
    for (std::size_t y = 0; y < f.size(); ++y) {
        for (std::size_t x = y;; x = (x - 1) & y) {
            ring.add_in(out.v[y], f.v[x]);
            if (x == 0) break;
        }
    }
    return out;
}

template <class Ring>
SetFunction<Ring> mobius_transform_naive(const SetFunction<Ring>& f, const Ring& ring) {
    SetFunction<Ring> out(f.m);
    for (std::size_t y = 0; y < f.size(); ++y) {
        for (std::size_t x = y;; x = (x - 1) & y) {
            int parity = std::popcount(y ^ x) & 1;
            if (parity) ring.sub_in(out.v[y], f.v[x]);
            else ring.add_in(out.v[y], f.v[x]);
            if (x == 0) break;
        }
    }
    return out;
}

// (f *_u g)[X] = sum over X1 union X2 = X of f[X1] g[X2], by exhaustive pair
// enumeration. Quadratic in the lattice size; oracle use only.
template <class Ring>
SetFunction<Ring> union_product(const SetFunction<Ring>& f, const SetFunction<Ring>& g,
                                const Ring& ring) {
    if (f.m != g.m) throw std::invalid_argument("union_product: universe mismatch");
    SetFunction<Ring> out(f.m);
    for (std::size_t x1 = 0; x1 < f.size(); ++x1) {
        if (ring.is_zero(f.v[x1])) continue;
        for (std::size_t x2 = 0; x2 < g.size(); ++x2)
            ring.add_in(out.v[x1 | x2], ring.mul(f.v[x1], g.v[x2]));
    }
    return out;
}

template <class Ring>
SetFunction<Ring> pointwise_product(const SetFunction<Ring>& f, const SetFunction<Ring>& g,
                                    const Ring& ring) {
    if (f.m != g.m) throw std::invalid_argument("pointwise_product: universe mismatch");
    SetFunction<Ring> out(f.m);
    for (std::size_t s = 0; s < f.size(); ++s) out.v[s] = ring.mul(f.v[s], g.v[s]);
    return out;
}

} // namespace zetadom
