#pragma once

#include "confspace/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace confspace {

using BigInt = boost::multiprecision::cpp_int;

// Arithmetic dispatch used by the elimination kernels. The int64 overloads
// trap on overflow; the BigInt overloads never do.
namespace arith {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw OverflowError("int64 overflow in addition");
    return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw OverflowError("int64 overflow in subtraction");
    return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw OverflowError("int64 overflow in multiplication");
    return r;
}

inline std::int64_t abs(std::int64_t a) {
    if (a == INT64_MIN)
        throw OverflowError("int64 overflow in abs");
    return a < 0 ? -a : a;
}

inline std::int64_t gcd(std::int64_t a, std::int64_t b) {
    a = abs(a);
    b = abs(b);
    while (b != 0) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline BigInt add(const BigInt& a, const BigInt& b) { return a + b; }
inline BigInt sub(const BigInt& a, const BigInt& b) { return a - b; }
inline BigInt mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt abs(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }
inline BigInt gcd(const BigInt& a, const BigInt& b) {
    return boost::multiprecision::gcd(abs(a), abs(b));
}

/// Quotient rounded towards zero, so |a - q*b| < |b|.
template <typename Int> Int quot(const Int& a, const Int& b) {
    if constexpr (std::is_same_v<Int, std::int64_t>) {
        if (a == INT64_MIN && b == -1)
            throw OverflowError("int64 overflow in division");
    }
    return Int(a / b);
}

inline std::string to_string(std::int64_t v) { return std::to_string(v); }
inline std::string to_string(const BigInt& v) { return v.str(); }

} // namespace arith

/// Exact binomial coefficient; throws OverflowError beyond int64.
inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n)
        return 0;
    if (k > n - k)
        k = n - k;
    // C(n, i) * (n - i) is divisible by (i + 1), so stay exact via 128 bits.
    __int128 r = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        r = r * (n - i) / (i + 1);
        if (r > INT64_MAX)
            throw OverflowError("binomial coefficient exceeds int64");
    }
    return static_cast<std::int64_t>(r);
}

inline std::int64_t factorial(std::int64_t n) {
    std::int64_t r = 1;
    for (std::int64_t i = 2; i <= n; ++i)
        r = arith::mul(r, i);
    return r;
}

} // namespace confspace
