#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace confspace {

/// Fixed 128-bit set used for vertex and edge subsets of small graphs.
struct Mask128 {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;

    static constexpr std::size_t capacity = 128;

    constexpr void set(std::size_t i) { (i < 64 ? lo : hi) |= std::uint64_t{1} << (i & 63); }
    constexpr void reset(std::size_t i) { (i < 64 ? lo : hi) &= ~(std::uint64_t{1} << (i & 63)); }
    constexpr bool test(std::size_t i) const { return ((i < 64 ? lo : hi) >> (i & 63)) & 1U; }
    constexpr bool any() const { return (lo | hi) != 0; }
    constexpr std::size_t count() const { return std::popcount(lo) + std::popcount(hi); }

    /// Number of set bits strictly below position i.
    constexpr std::size_t count_below(std::size_t i) const {
        if (i < 64)
            return std::popcount(lo & ((std::uint64_t{1} << i) - 1));
        std::uint64_t h = (i == 128) ? hi : (hi & ((std::uint64_t{1} << (i - 64)) - 1));
        return std::popcount(lo) + std::popcount(h);
    }

    /// Position of the j-th set bit (0-based).
    constexpr std::size_t select(std::size_t j) const {
        std::size_t c = std::popcount(lo);
        std::uint64_t w = lo;
        std::size_t base = 0;
        if (j >= c) {
            j -= c;
            w = hi;
            base = 64;
        }
        for (; j > 0; --j)
            w &= w - 1;
        return base + static_cast<std::size_t>(std::countr_zero(w));
    }

    constexpr Mask128 operator|(const Mask128& o) const { return {lo | o.lo, hi | o.hi}; }
    constexpr Mask128 operator&(const Mask128& o) const { return {lo & o.lo, hi & o.hi}; }
    constexpr Mask128 operator~() const { return {~lo, ~hi}; }
    constexpr bool operator==(const Mask128&) const = default;

    static constexpr Mask128 first_n(std::size_t n) {
        Mask128 m;
        if (n >= 64) {
            m.lo = ~std::uint64_t{0};
            m.hi = n >= 128 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (n - 64)) - 1);
        } else {
            m.lo = (std::uint64_t{1} << n) - 1;
        }
        return m;
    }
};

struct Mask128Hash {
    std::size_t operator()(const Mask128& m) const noexcept {
        std::uint64_t x = m.lo * 0x9E3779B97F4A7C15ULL ^ (m.hi + 0x632BE59BD9B4E019ULL + (m.lo << 6));
        x ^= x >> 31;
        x *= 0xBF58476D1CE4E5B9ULL;
        x ^= x >> 29;
        return static_cast<std::size_t>(x);
    }
};

} // namespace confspace
