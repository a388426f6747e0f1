#pragma once

// Reference estimators the proposed method is compared against:
//  - MUSIC on consecutive Nyquist-rate samples (subspace method, needs the
//    model order K), with forward-backward spatial smoothing so a single
//    snapshot still yields a rank-K signal subspace;
//  - compressed-sensing recovery from random sub-Nyquist sampling, running the
//    same multitask VB solver on randomly drawn index windows instead of the
//    deterministic coprime pattern.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "lse/rng.hpp"
#include "lse/sampling.hpp"
#include "lse/vb_estimator.hpp"

namespace lse {

/// MUSIC configuration.  subarray_length = 0 selects the default
/// floor((sample count + 1) / 2), the longest subarray that still leaves
/// enough sliding snapshots for smoothing.
struct MusicConfig {
    int subarray_length = 0;
    int grid_n = 100;          ///< frequency scan grid, f = n / grid_n
    int component_count = 1;   ///< model order K

    int effective_subarray(std::size_t sample_count) const {
        const int m = subarray_length > 0
                          ? subarray_length
                          : static_cast<int>((sample_count + 1) / 2);
        if (m > static_cast<int>(sample_count)) {
            throw std::invalid_argument("music subarray exceeds the sample count");
        }
        if (component_count >= m) {
            throw std::invalid_argument(
                "music needs subarray_length > K (noise subspace would be empty)");
        }
        if (component_count < 1) throw std::invalid_argument("music needs K >= 1");
        if (grid_n < 2) throw std::invalid_argument("music needs grid_n >= 2");
        return m;
    }
};

/// Forward-backward smoothed covariance of sliding length-m subarrays:
/// R = (R_f + J conj(R_f) J) / 2 with J the exchange matrix, averaging over
/// all count-m+1 forward snapshots.
inline Eigen::MatrixXcd music_covariance(const std::vector<std::complex<double>>& samples,
                                         int subarray_length) {
    const int count = static_cast<int>(samples.size());
    const int m = subarray_length;
    if (m < 1 || m > count) throw std::invalid_argument("invalid music subarray length");
    const int snapshots = count - m + 1;
    Eigen::MatrixXcd forward = Eigen::MatrixXcd::Zero(m, m);
    for (int j = 0; j < snapshots; ++j) {
        const Eigen::Map<const Eigen::VectorXcd> x(samples.data() + j, m);
        forward.noalias() += x * x.adjoint();
    }
    forward /= static_cast<double>(snapshots);
    Eigen::MatrixXcd backward = forward.conjugate();
    backward.rowwise().reverseInPlace();
    backward.colwise().reverseInPlace();
    return 0.5 * (forward + backward);
}

/// MUSIC pseudo-spectrum P(f) = 1 / ||E_n^H a(f)||^2 scanned on f = n/grid_n,
/// where E_n spans the noise subspace (the m-K smallest-eigenvalue
/// eigenvectors of the smoothed covariance) and a(f) is the length-m steering
/// vector.  A noiseless on-grid component drives the denominator to 0; the
/// resulting +inf entry is the exact-peak case and sorts first.
inline Eigen::VectorXd music_pseudospectrum(const std::vector<std::complex<double>>& samples,
                                            const MusicConfig& config) {
    const int m = config.effective_subarray(samples.size());
    const Eigen::MatrixXcd covariance = music_covariance(samples, m);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(covariance);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("music covariance eigen-decomposition failed");
    }
    // Eigenvalues ascend, so the first m-K eigenvectors span the noise space.
    const Eigen::MatrixXcd noise_space =
        solver.eigenvectors().leftCols(m - config.component_count);

    Eigen::VectorXd spectrum(config.grid_n);
    Eigen::VectorXcd steering(m);
    for (int n = 0; n < config.grid_n; ++n) {
        const double f = static_cast<double>(n) / config.grid_n;
        for (int t = 0; t < m; ++t) {
            const double phase = 2.0 * std::numbers::pi * f * t;
            steering(t) = {std::cos(phase), std::sin(phase)};
        }
        spectrum(n) = 1.0 / (noise_space.adjoint() * steering).squaredNorm();
    }
    return spectrum;
}

/// Frequencies of the K largest pseudo-spectrum peaks (circular local maxima,
/// descending height; filled with the largest non-maximum bins if fewer than K
/// maxima exist).  Samples must come from consecutive integer sample times.
inline std::vector<double> music_estimate(const std::vector<std::complex<double>>& samples,
                                          const MusicConfig& config) {
    const Eigen::VectorXd spectrum = music_pseudospectrum(samples, config);
    SpectrumEstimate shim;
    shim.grid_n = config.grid_n;
    shim.grid_power = spectrum;
    return extract_peak_frequencies(shim, config.component_count);
}

/// How random_sampling_estimate spends its sample budget.
enum class RandomSamplingMode {
    /// Each of the L windows draws its own M distinct offsets from {0,..,N-1}
    /// and observes the signal on a fresh length-N block (window l is offset
    /// by l*N in time), mirroring the deterministic pipeline's task structure
    /// with fully random per-window patterns.  Total distinct samples: L*M.
    independent_windows,
    /// One shared pool of L+M-1 distinct random indices in {0,..,N-1}, sliced
    /// into L sliding windows of M consecutive pool entries — the exact
    /// deterministic pipeline with the coprime index set replaced by a random
    /// one, consuming the same L+M-1 total samples.
    shared_pool,
};

/// Signal source for the random-sampling baseline: values at arbitrary
/// integer sample times.  The callable may be stochastic (e.g. adding its own
/// seeded noise); each time index is queried exactly once, in increasing
/// window order.
using SignalOracle = std::function<std::complex<double>(long long)>;

/// Builds the random task set for random_sampling_estimate; exposed so tests
/// can inspect index structure and budgets.
inline TaskSet random_sampling_tasks(const SignalOracle& oracle, int window_len,
                                     int task_count, int grid_n, std::uint64_t seed,
                                     RandomSamplingMode mode) {
    if (!oracle) throw std::invalid_argument("random sampling needs a signal oracle");
    if (window_len < 1 || window_len > grid_n) {
        throw std::invalid_argument("random sampling needs 1 <= M <= N");
    }
    if (task_count < 1) throw std::invalid_argument("random sampling needs L >= 1");

    SplitMix64 rng(seed);
    TaskSet tasks;
    tasks.grid_n = grid_n;
    tasks.window_len = window_len;

    if (mode == RandomSamplingMode::shared_pool) {
        const int pool_size = task_count + window_len - 1;
        if (pool_size > grid_n) {
            throw std::invalid_argument(
                "shared-pool random sampling needs L + M - 1 <= N distinct indices");
        }
        const std::vector<int> pool = sample_distinct(rng, grid_n, pool_size);
        std::vector<std::complex<double>> values(pool.size());
        for (std::size_t i = 0; i < pool.size(); ++i) {
            values[i] = oracle(static_cast<long long>(pool[i]));
        }
        for (int l = 0; l < task_count; ++l) {
            Window window;
            window.start_index = pool[static_cast<std::size_t>(l)];
            window.offsets.resize(static_cast<std::size_t>(window_len));
            window.values.resize(static_cast<std::size_t>(window_len));
            for (int m = 0; m < window_len; ++m) {
                window.offsets[static_cast<std::size_t>(m)] =
                    pool[static_cast<std::size_t>(l + m)] - pool[static_cast<std::size_t>(l)];
                window.values[static_cast<std::size_t>(m)] =
                    values[static_cast<std::size_t>(l + m)];
            }
            tasks.windows.push_back(std::move(window));
        }
        return tasks;
    }

    for (int l = 0; l < task_count; ++l) {
        const std::vector<int> drawn = sample_distinct(rng, grid_n, window_len);
        Window window;
        window.start_index =
            static_cast<long long>(l) * grid_n + drawn.front();
        window.offsets.resize(static_cast<std::size_t>(window_len));
        window.values.resize(static_cast<std::size_t>(window_len));
        for (int m = 0; m < window_len; ++m) {
            window.offsets[static_cast<std::size_t>(m)] = drawn[static_cast<std::size_t>(m)] -
                                                          drawn.front();
            window.values[static_cast<std::size_t>(m)] = oracle(
                static_cast<long long>(l) * grid_n + drawn[static_cast<std::size_t>(m)]);
        }
        tasks.windows.push_back(std::move(window));
    }
    return tasks;
}

/// Compressed-sensing baseline: random index windows, same VB solver.
/// Deterministic given the seed and a deterministic oracle.
inline SpectrumEstimate random_sampling_estimate(
    const SignalOracle& oracle, int window_len, int task_count, int grid_n,
    const VbOptions& options, std::uint64_t seed,
    RandomSamplingMode mode = RandomSamplingMode::independent_windows,
    SensingCache* cache = nullptr) {
    const TaskSet tasks =
        random_sampling_tasks(oracle, window_len, task_count, grid_n, seed, mode);
    return run(tasks, options, cache);
}

} // namespace lse
