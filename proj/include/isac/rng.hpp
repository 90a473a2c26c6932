/**
 * rng.hpp — SplitMix64, used counter-based for bit-exact reproducibility.
 *
 * Every random quantity in this project (samples, fuzz channels, Dirichlet
 * sweep laws) derives from this generator so that independent
 * implementations can reproduce outputs bit-for-bit. The algorithm is the
 * standard SplitMix64 finalizer:
 *
 *   value(i) = mix(seed + (i+1) · 0x9E3779B97F4A7C15)
 *   mix(z):  z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9;
 *            z ^= z >> 27;  z *= 0x94D049BB133111EB;
 *            z ^= z >> 31;  return z;
 *
 * Doubles in [0,1) take the top 53 bits: (value >> 11) · 2⁻⁵³.
 *
 * The counter form (value at index i, no mutable state) makes parallel and
 * sequential evaluation agree; Stream is a thin sequential cursor over the
 * same sequence (next() == value(0), value(1), ...).
 */

#ifndef ISAC_RNG_HPP
#define ISAC_RNG_HPP

#include <cstdint>

namespace isac {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : seed_(seed) {}

    /** The i-th 64-bit draw of the sequence for this seed. */
    std::uint64_t value(std::uint64_t i) const {
        return mix(seed_ + (i + 1) * GOLDEN);
    }

    /** The i-th double in [0,1), 53 uniform bits. */
    double unit(std::uint64_t i) const {
        return static_cast<double>(value(i) >> 11) * 0x1.0p-53;
    }

    std::uint64_t seed() const { return seed_; }

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    static constexpr std::uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL;
    std::uint64_t seed_;
};

/** Sequential cursor over a SplitMix64 sequence. */
class Stream {
public:
    explicit Stream(std::uint64_t seed) : rng_(seed) {}
    Stream(const SplitMix64& rng, std::uint64_t start = 0)
        : rng_(rng), next_(start) {}

    std::uint64_t next() { return rng_.value(next_++); }
    double next_unit() { return rng_.unit(next_++); }

    /** Uniform integer in [0, n). n must be ≥ 1; bias is negligible here. */
    std::uint64_t next_below(std::uint64_t n) { return next() % n; }

    std::uint64_t position() const { return next_; }

private:
    SplitMix64 rng_;
    std::uint64_t next_ = 0;
};

} // namespace isac

#endif // ISAC_RNG_HPP
