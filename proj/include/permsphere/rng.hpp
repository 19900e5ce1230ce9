#pragma once

// Seedable, reproducible random generation. Draws avoid
// std::uniform_int_distribution so that identical seeds give identical
// streams across standard libraries; parallel replicas use per-stream
// seeding (seed, stream) mixed through splitmix64.

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

#include "permsphere/numeric.hpp"

namespace permsphere {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace detail

class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream),
          engine_(detail::splitmix64(detail::splitmix64(seed) ^ (stream * 0xda942042e4dd58b5ULL + 1))) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on {0, ..., bound-1} by rejection; bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::domain_error("Rng::below: zero bound");
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t x = engine_();
        while (x >= limit) x = engine_();
        return x % bound;
    }

    // Uniform on {lo, ..., hi} inclusive.
    long long uniform_int(long long lo, long long hi) {
        if (lo > hi) throw std::domain_error("Rng::uniform_int: empty range");
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
};

// Uniform big integer in [0, bound); exact, by rejection on the bit length.
inline BigInt uniform_bigint_below(Rng& rng, const BigInt& bound) {
    if (bound <= 0) throw std::domain_error("uniform_bigint_below: bound must be positive");
    if (bound == 1) return 0;
    const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(bound)) + 1;
    const unsigned words = (bits + 63) / 64;
    const unsigned top_shift = words * 64 - bits;
    for (;;) {
        BigInt x = 0;
        for (unsigned w = 0; w < words; ++w) {
            x <<= 64;
            x |= rng.next_u64();
        }
        x >>= top_shift;
        if (x < bound) return x;
    }
}

// Exact Bernoulli draw with rational success probability.
inline bool bernoulli_rational(Rng& rng, const Rational& p) {
    if (p <= 0) {
        if (p < 0) throw std::domain_error("bernoulli_rational: negative probability");
        return false;
    }
    if (p >= 1) {
        if (p > 1) throw std::domain_error("bernoulli_rational: probability above one");
        return true;
    }
    const BigInt& den = boost::multiprecision::denominator(p);
    if (den <= std::numeric_limits<std::uint64_t>::max()) {
        return rng.below(den.convert_to<std::uint64_t>()) <
               boost::multiprecision::numerator(p).convert_to<std::uint64_t>();
    }
    return uniform_bigint_below(rng, den) < boost::multiprecision::numerator(p);
}

}  // namespace permsphere
