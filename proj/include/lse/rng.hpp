#pragma once

// Deterministic pseudo-random utilities: a SplitMix64 engine with Box-Muller
// Gaussian sampling plus seed-derivation helpers.  Hand-rolled rather than
// <random> so that every stream is bit-reproducible across platforms and
// standard-library versions; reproducibility of Monte-Carlo experiments is a
// contract of this library, not an accident of the toolchain.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace lse {

/// Fast 64-bit generator (Steele, Lea, Flood: "Fast splittable pseudorandom
/// number generators").  Passes BigCrush as a stream generator and is trivially
/// seedable, which makes derived per-trial streams cheap.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    /// Next raw 64-bit word.
    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Standard normal deviate via Box-Muller; the second deviate of each pair
    /// is cached so consecutive calls consume uniforms in a fixed pattern.
    double next_gaussian() noexcept {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1] so the logarithm is finite; u2 in [0, 1).
        const double u1 = (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = next_double();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    /// Circularly-symmetric complex Gaussian with total variance `variance`
    /// (i.e. variance/2 in each of the real and imaginary parts).
    std::complex<double> next_complex_gaussian(double variance) {
        if (variance < 0.0) {
            throw std::invalid_argument("complex Gaussian variance must be non-negative");
        }
        const double scale = std::sqrt(variance / 2.0);
        const double re = next_gaussian();
        const double im = next_gaussian();
        return {scale * re, scale * im};
    }

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// FNV-1a 64-bit hash of a byte string; used to fold method names and other
/// labels into seed material.
constexpr std::uint64_t fnv1a64(std::string_view text) noexcept {
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    for (const char ch : text) {
        hash ^= static_cast<std::uint8_t>(ch);
        hash *= 0x100000001B3ULL;
    }
    return hash;
}

/// Mixes a new 64-bit ingredient into a seed.  One SplitMix64 step over the
/// xored pair decorrelates nearby inputs (e.g. trial 5 vs trial 6).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t ingredient) noexcept {
    SplitMix64 mixer(seed ^ (0x9E3779B97F4A7C15ULL * (ingredient + 0x632BE59BD9B4E019ULL)));
    return mixer.next();
}

/// Seed for one Monte-Carlo trial.  A pure function of (master seed, method
/// label, SNR, trial index): adding or removing a method from an experiment
/// never shifts another method's random stream.
inline std::uint64_t trial_seed(std::uint64_t master, std::string_view method,
                                double snr_db, std::uint64_t trial) noexcept {
    std::uint64_t seed = mix_seed(master, fnv1a64(method));
    std::uint64_t snr_bits = 0;
    static_assert(sizeof(snr_bits) == sizeof(snr_db));
    __builtin_memcpy(&snr_bits, &snr_db, sizeof(snr_bits));
    seed = mix_seed(seed, snr_bits);
    return mix_seed(seed, trial);
}

/// k distinct integers drawn uniformly from {0, ..., n-1}, returned sorted.
/// Partial Fisher-Yates over an explicit index table: O(n) memory, exact
/// uniformity over k-subsets.
inline std::vector<int> sample_distinct(SplitMix64& rng, int n, int k) {
    if (k < 0 || n < 0 || k > n) {
        throw std::invalid_argument("sample_distinct requires 0 <= k <= n");
    }
    std::vector<int> table(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) table[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < k; ++i) {
        // next() % span is biased by at most 2^-40 for span <= 2^24; index
        // universes here are grid sizes, far below that.
        const int j = i + static_cast<int>(rng.next() % static_cast<std::uint64_t>(n - i));
        std::swap(table[static_cast<std::size_t>(i)], table[static_cast<std::size_t>(j)]);
    }
    std::vector<int> out(table.begin(), table.begin() + k);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace lse
