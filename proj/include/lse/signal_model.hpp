#pragma once

// Frequency-sparse signal synthesis: ground-truth line spectra, calibrated
// complex Gaussian noise, and random test-spectrum generation.
//
// A line spectrum is x(t) = sum_k c_k * exp(j*2*pi*f_k*t) with K complex
// amplitudes c_k and normalized frequencies f_k in cycles/sample.  Samples are
// taken at integer times t, so f and f+1 are indistinguishable (aliasing);
// canonical spectra keep f in [0, 1).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "lse/rng.hpp"

namespace lse {

/// Ground-truth sparse spectrum: K frequencies with complex amplitudes.
struct LineSpectrum {
    std::vector<double> freqs;                ///< normalized, cycles/sample
    std::vector<std::complex<double>> amps;   ///< complex amplitudes c_k

    std::size_t component_count() const noexcept { return freqs.size(); }

    /// Enforces the canonical-form invariants.  Synthesis itself accepts any
    /// frequencies (aliases included); validation is for spectra that claim to
    /// be canonical ground truth.
    void validate() const {
        if (freqs.empty() || freqs.size() != amps.size()) {
            throw std::invalid_argument("line spectrum needs K >= 1 matching freqs/amps");
        }
        for (std::size_t k = 0; k < freqs.size(); ++k) {
            if (!(freqs[k] >= 0.0) || !(freqs[k] < 1.0)) {
                throw std::invalid_argument("line spectrum frequency outside [0,1): " +
                                            std::to_string(freqs[k]));
            }
            if (std::abs(amps[k]) <= 0.0) {
                throw std::invalid_argument("line spectrum amplitude must be nonzero");
            }
            for (std::size_t j = k + 1; j < freqs.size(); ++j) {
                if (freqs[k] == freqs[j]) {
                    throw std::invalid_argument("line spectrum frequencies must be distinct");
                }
            }
        }
    }
};

/// Chronologically ordered samples of a signal at integer times.
struct SampleRecord {
    std::vector<long long> indices;               ///< strictly increasing times
    std::vector<std::complex<double>> values;     ///< y(t_m)
    double noise_variance = 0.0;                  ///< variance of the added noise

    std::size_t size() const noexcept { return indices.size(); }

    void validate() const {
        if (indices.size() != values.size()) {
            throw std::invalid_argument("sample record index/value length mismatch");
        }
        for (std::size_t m = 1; m < indices.size(); ++m) {
            if (indices[m] <= indices[m - 1]) {
                throw std::invalid_argument("sample record indices must be strictly increasing");
            }
        }
        if (noise_variance < 0.0) {
            throw std::invalid_argument("sample record noise variance must be non-negative");
        }
    }
};

/// Noiseless signal value at (possibly non-integer) time t.
inline std::complex<double> spectrum_value_at(const LineSpectrum& spectrum, double t) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t k = 0; k < spectrum.freqs.size(); ++k) {
        const double phase = 2.0 * std::numbers::pi * spectrum.freqs[k] * t;
        acc += spectrum.amps[k] * std::complex<double>{std::cos(phase), std::sin(phase)};
    }
    return acc;
}

/// Noise variance realizing a target SNR against total mean signal power
/// sum_k |c_k|^2 (cross terms between distinct tones average to zero over long
/// windows).  +infinity dB maps to exactly zero variance.
inline double noise_variance_for_snr(const LineSpectrum& spectrum, double snr_db) {
    spectrum.validate();
    if (std::isinf(snr_db) && snr_db > 0.0) return 0.0;
    double power = 0.0;
    for (const auto& amp : spectrum.amps) power += std::norm(amp);
    return power / std::pow(10.0, snr_db / 10.0);
}

/// Samples the spectrum at the given integer times and adds circularly
/// symmetric complex Gaussian noise of the given variance (variance/2 per real
/// and imaginary part).  Deterministic given the seed.  Frequencies are taken
/// as-is — aliases such as f+1 are legal inputs and produce the same samples
/// as f, which is a property tests rely on.
inline SampleRecord synthesize(const LineSpectrum& spectrum,
                               const std::vector<long long>& indices,
                               double noise_variance, std::uint64_t seed) {
    if (indices.empty()) {
        throw std::invalid_argument("synthesize requires a non-empty index list");
    }
    if (noise_variance < 0.0) {
        throw std::invalid_argument("synthesize requires non-negative noise variance");
    }
    for (std::size_t m = 1; m < indices.size(); ++m) {
        if (indices[m] <= indices[m - 1]) {
            throw std::invalid_argument("synthesize requires strictly increasing indices");
        }
    }
    SampleRecord record;
    record.indices = indices;
    record.noise_variance = noise_variance;
    record.values.reserve(indices.size());
    SplitMix64 rng(seed);
    for (const long long t : indices) {
        std::complex<double> value = spectrum_value_at(spectrum, static_cast<double>(t));
        if (noise_variance > 0.0) {
            value += rng.next_complex_gaussian(noise_variance);
        }
        record.values.push_back(value);
    }
    return record;
}

/// Policy for drawing random test spectra.
struct RandomSpectrumConfig {
    int component_count = 3;       ///< K
    int grid_n = 100;              ///< grid size for on-grid snapping
    double min_separation = 0.02;  ///< pairwise circular distance floor
    bool on_grid = true;
    double amp_min = 0.5;          ///< amplitude modulus range (uniform)
    double amp_max = 1.5;
    std::uint64_t seed = 1;
};

/// Circular distance between two normalized frequencies, in cycles/sample.
inline double circular_distance(double f1, double f2) noexcept {
    double diff = std::fmod(std::abs(f1 - f2), 1.0);
    return std::min(diff, 1.0 - diff);
}

/// Draws K frequencies (snapped to n/grid_n when on_grid) with pairwise
/// circular separation >= min_separation, amplitude moduli uniform in
/// [amp_min, amp_max], phases uniform on [0, 2*pi).  Deterministic given seed.
inline LineSpectrum random_spectrum(const RandomSpectrumConfig& config) {
    const int K = config.component_count;
    if (K < 1) throw std::invalid_argument("random spectrum needs K >= 1");
    if (!(static_cast<double>(K) * config.min_separation < 1.0)) {
        throw std::invalid_argument("infeasible spectrum: K * min_separation must be < 1");
    }
    if (config.on_grid) {
        if (config.grid_n < 2) throw std::invalid_argument("random spectrum needs grid_n >= 2");
        if (config.min_separation < 2.0 / config.grid_n) {
            throw std::invalid_argument(
                "on-grid spectra need min_separation >= 2/grid_n so neighbours stay resolvable");
        }
    }
    if (!(config.amp_min > 0.0) || config.amp_max < config.amp_min) {
        throw std::invalid_argument("amplitude modulus range must satisfy 0 < amp_min <= amp_max");
    }

    SplitMix64 rng(config.seed);
    std::vector<double> freqs;
    constexpr int kMaxAttempts = 100000;
    for (int attempt = 0; attempt < kMaxAttempts && static_cast<int>(freqs.size()) < K; ++attempt) {
        double candidate = config.on_grid
            ? static_cast<double>(rng.next() % static_cast<std::uint64_t>(config.grid_n)) /
                  config.grid_n
            : rng.next_double();
        bool accepted = true;
        for (const double existing : freqs) {
            if (circular_distance(existing, candidate) < config.min_separation) {
                accepted = false;
                break;
            }
        }
        if (accepted) freqs.push_back(candidate);
    }
    if (static_cast<int>(freqs.size()) < K) {
        throw std::invalid_argument("random spectrum rejection sampling failed; "
                                    "(K, min_separation) too tight");
    }
    std::sort(freqs.begin(), freqs.end());

    LineSpectrum spectrum;
    spectrum.freqs = std::move(freqs);
    spectrum.amps.reserve(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        const double modulus =
            config.amp_min + (config.amp_max - config.amp_min) * rng.next_double();
        const double phase = 2.0 * std::numbers::pi * rng.next_double();
        spectrum.amps.emplace_back(modulus * std::cos(phase), modulus * std::sin(phase));
    }
    spectrum.validate();
    return spectrum;
}

} // namespace lse
