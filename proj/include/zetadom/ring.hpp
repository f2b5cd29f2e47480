#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace zetadom {

using BigInt = boost::multiprecision::cpp_int;

// Exact arithmetic over arbitrary-precision integers. Counts of dominating
// sets reach 2^n, so this is the default ring for anything that must be an
// exact count.
struct ExactRing {
    using Value = BigInt;

    Value zero() const { return Value(0); }
    Value one() const { return Value(1); }
    Value from_u64(std::uint64_t x) const { return Value(x); }
    void add_in(Value& a, const Value& b) const { a += b; }
    void sub_in(Value& a, const Value& b) const { a -= b; }
    Value mul(const Value& a, const Value& b) const { return a * b; }
    void mul_in(Value& a, const Value& b) const { a *= b; }
    bool is_zero(const Value& a) const { return a.is_zero(); }
    static constexpr bool exact = true;
};

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

} // namespace detail

// Arithmetic modulo a random ~62-bit prime. A zero entry can be a false zero
// with probability <= n/2^62 per entry, so modular mode is rejected wherever
// an exact count is the contract.
struct ModularRing {
    using Value = std::uint64_t;
    std::uint64_t p = 0;

    Value zero() const { return 0; }
    Value one() const { return 1 % p; }
    Value from_u64(std::uint64_t x) const { return x % p; }
    void add_in(Value& a, const Value& b) const {
        a += b;
        if (a >= p) a -= p;
    }
    void sub_in(Value& a, const Value& b) const {
        a = (a >= b) ? a - b : a + p - b;
    }
    Value mul(const Value& a, const Value& b) const { return detail::mulmod_u64(a, b, p); }
    void mul_in(Value& a, const Value& b) const { a = detail::mulmod_u64(a, b, p); }
    bool is_zero(const Value& a) const { return a == 0; }
    static constexpr bool exact = false;
};

// Draws a prime in [2^61, 2^62) from a seeded generator. Deterministic for a
// fixed generator state.
inline std::uint64_t draw_prime(std::mt19937_64& rng) {
    for (int tries = 0; tries < 1 << 20; ++tries) {
        std::uint64_t c = (rng() % (1ull << 61)) + (1ull << 61);
        c |= 1;
        if (detail::is_prime_u64(c)) return c;
    }
    throw std::runtime_error("draw_prime: no prime found (generator broken?)");
}

} // namespace zetadom
