#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace gvcrand {

// Counter-based substream RNG. Every consumer derives an independent stream
// from (seed, hi, lo) in O(1), so ensembles are reproducible bit-for-bit no
// matter how instances are scheduled across worker threads.
//
// Stream id conventions used in this project:
//   tables:            hi = resample attempt, lo = instance index
//   moment sampling:   hi = (1 << 32),        lo = sample index
//   bootstrap:         hi = (2 << 32),        lo = resample index

inline constexpr std::uint64_t kStreamMoments = std::uint64_t{1} << 32;
inline constexpr std::uint64_t kStreamBootstrap = std::uint64_t{2} << 32;

namespace detail {

// splitmix64 finalizer
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace detail

struct SplitMix64 {
    std::uint64_t state = 0;

    constexpr std::uint64_t next() noexcept {
        state += 0x9E3779B97F4A7C15ULL;
        return detail::mix64(state);
    }
};

// xoshiro256++ engine, state expanded from (seed, hi, lo) with splitmix64.
class RandomStream {
  public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed, std::uint64_t hi = 0, std::uint64_t lo = 0) noexcept {
        std::uint64_t key = seed;
        key = detail::mix64(key ^ (0xA0761D6478BD642FULL * (hi + 1)));
        key = detail::mix64(key ^ (0xE7037ED1A0B428DBULL * (lo + 1)));
        SplitMix64 sm{key};
        for (auto& w : state_) w = sm.next();
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
    }

    std::uint64_t next() noexcept {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    std::uint64_t operator()() noexcept { return next(); }
    static constexpr std::uint64_t min() noexcept { return 0; }
    static constexpr std::uint64_t max() noexcept { return ~std::uint64_t{0}; }

    // uniform on [0,1), 53-bit resolution
    double uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform on (0,1]; keeps log() finite
    double uniform01_open_low() noexcept {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }

    // strictly positive exponential with the given rate (mean 1/rate)
    double exponential(double rate) noexcept { return -std::log(uniform01_open_low()) / rate; }

    // Box-Muller; consumes exactly two uniforms per variate
    double standard_normal() noexcept {
        const double u1 = uniform01_open_low();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    double lognormal(double log_mean, double log_sd) noexcept {
        return std::exp(log_mean + log_sd * standard_normal());
    }

  private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

} // namespace gvcrand
