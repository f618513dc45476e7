#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace relaylab::sim {

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011).
//
// A stream is addressed by (seed, stream_id): the 64-bit seed is the Philox
// key and the stream id occupies the high half of the 128-bit counter, so
// distinct stream ids index disjoint, statistically independent blocks of the
// same keyed permutation. Identical (seed, stream_id) always reproduce the
// same draw sequence, which is what makes Monte Carlo results independent of
// how trials are partitioned across workers.
class Philox4x32 {
public:
    Philox4x32(std::uint64_t seed, std::uint64_t stream_id) noexcept
        : key0_(static_cast<std::uint32_t>(seed)),
          key1_(static_cast<std::uint32_t>(seed >> 32)),
          block_(0),
          stream_(stream_id) {}

    // One keyed 128-bit block; exposed for known-answer tests.
    static std::array<std::uint32_t, 4> block(std::uint32_t key0, std::uint32_t key1,
                                              std::array<std::uint32_t, 4> counter) noexcept {
        std::uint32_t k0 = key0, k1 = key1;
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                k0 += 0x9E3779B9u;
                k1 += 0xBB67AE85u;
            }
            const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * counter[0];
            const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * counter[2];
            counter = {static_cast<std::uint32_t>(p1 >> 32) ^ counter[1] ^ k0,
                       static_cast<std::uint32_t>(p1),
                       static_cast<std::uint32_t>(p0 >> 32) ^ counter[3] ^ k1,
                       static_cast<std::uint32_t>(p0)};
        }
        return counter;
    }

    std::uint32_t next_u32() noexcept {
        if (have_ == 0) refill();
        return out_[--have_];
    }

    std::uint64_t next_u64() noexcept {
        const std::uint64_t hi = next_u32();
        return (hi << 32) | next_u32();
    }

    // Uniform in (0, 1]: 53 random bits, never zero (safe under log()).
    double next_unit() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Exponential with the given mean (Rayleigh-fading SNR draw).
    double next_exponential(double mean) noexcept { return -mean * std::log(next_unit()); }

    // Standard normal via Box-Muller; pairs are consumed eagerly so the
    // stream position stays a pure function of the draw count.
    double next_normal() noexcept {
        if (have_normal_) {
            have_normal_ = false;
            return cached_normal_;
        }
        const double r = std::sqrt(-2.0 * std::log(next_unit()));
        const double theta = 2.0 * std::numbers::pi * next_unit();
        cached_normal_ = r * std::sin(theta);
        have_normal_ = true;
        return r * std::cos(theta);
    }

private:
    void refill() noexcept {
        out_ = block(key0_, key1_,
                     {static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                      static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)});
        ++block_;
        have_ = 4;
    }

    std::uint32_t key0_, key1_;
    std::uint64_t block_;
    std::uint64_t stream_;
    std::array<std::uint32_t, 4> out_{};
    int have_ = 0;
    double cached_normal_ = 0.0;
    bool have_normal_ = false;
};

// SplitMix64; used to derive decorrelated per-row seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace relaylab::sim
