#pragma once

// Partial-Fourier sensing matrices.  Each window of the multitask model
// observes y_l = Phi_l s_l + noise where Phi_l is the M x N row-submatrix of
// the N-point DFT matrix selected by the window's offsets:
//   Phi_l(m, n) = exp(j * 2*pi * n * offsets[m] / N).
// Windows whose offsets agree modulo N share one matrix; a small cache keyed
// by the reduced offset pattern exploits that.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "lse/rng.hpp"
#include "lse/sampling.hpp"

namespace lse {

/// M x N partial Fourier matrix together with its generating offsets.
struct SensingMatrix {
    Eigen::MatrixXcd entries;      ///< M x N
    std::vector<int> offsets;      ///< the M generating integers
    int grid_n = 0;                ///< N
    bool normalized = false;       ///< true after column normalization

    int rows() const noexcept { return static_cast<int>(entries.rows()); }
    int cols() const noexcept { return static_cast<int>(entries.cols()); }
};

/// Builds Phi for the given offsets.  Offsets must start at 0 (each window is
/// phase-referenced to its own first sample) and be pairwise distinct mod N
/// (no duplicate rows).  Entries have unit modulus.
inline SensingMatrix build_phi(const std::vector<int>& offsets, int grid_n) {
    if (grid_n < 2) throw std::invalid_argument("build_phi needs N >= 2");
    if (offsets.empty()) throw std::invalid_argument("build_phi needs at least one offset");
    if (offsets.front() != 0) {
        throw std::invalid_argument("build_phi offsets must start at 0");
    }
    if (!detail::offsets_distinct_mod(offsets, grid_n)) {
        throw std::invalid_argument("build_phi offsets collide mod N (duplicate rows)");
    }

    const int m_rows = static_cast<int>(offsets.size());
    // Unit roots w[k] = exp(j*2*pi*k/N); every entry is one of these, indexed
    // by (n * offset) mod N, which keeps the matrix exactly periodic in the
    // offsets and bit-identical for offsets o and o mod N.
    std::vector<std::complex<double>> roots(static_cast<std::size_t>(grid_n));
    for (int k = 0; k < grid_n; ++k) {
        const double phase = 2.0 * std::numbers::pi * k / grid_n;
        roots[static_cast<std::size_t>(k)] = {std::cos(phase), std::sin(phase)};
    }

    SensingMatrix matrix;
    matrix.offsets = offsets;
    matrix.grid_n = grid_n;
    matrix.entries.resize(m_rows, grid_n);
    for (int m = 0; m < m_rows; ++m) {
        const long long offset = offsets[static_cast<std::size_t>(m)];
        const long long residue = ((offset % grid_n) + grid_n) % grid_n;
        for (int n = 0; n < grid_n; ++n) {
            matrix.entries(m, n) =
                roots[static_cast<std::size_t>((static_cast<long long>(n) * residue) % grid_n)];
        }
    }
    return matrix;
}

/// Scales every column to unit Euclidean norm.  With unit-modulus entries this
/// is a global division by sqrt(M).  Normalizing twice is an error.
inline SensingMatrix normalize_columns(const SensingMatrix& matrix) {
    if (matrix.normalized) {
        throw std::invalid_argument("sensing matrix is already column-normalized");
    }
    SensingMatrix out = matrix;
    out.entries /= std::sqrt(static_cast<double>(matrix.entries.rows()));
    out.normalized = true;
    return out;
}

/// Selects M distinct offsets uniformly at random from {0,...,N-1}, shifted so
/// the smallest becomes 0 (a global time shift that leaves all sub-Gram
/// spectra unchanged), and builds the matrix.  Deterministic given the seed.
inline SensingMatrix random_partial_fourier(int m_rows, int grid_n, std::uint64_t seed) {
    if (m_rows < 1 || m_rows > grid_n) {
        throw std::invalid_argument("random_partial_fourier needs 1 <= M <= N");
    }
    SplitMix64 rng(seed);
    std::vector<int> offsets = sample_distinct(rng, grid_n, m_rows);
    const int first = offsets.front();
    for (int& offset : offsets) offset -= first;
    return build_phi(offsets, grid_n);
}

/// Thread-safe cache of sensing matrices keyed by (offsets mod N, N).
/// Concurrent readers share immutable matrices; insertion is serialized.
class SensingCache {
public:
    std::shared_ptr<const SensingMatrix> get(const std::vector<int>& offsets, int grid_n) {
        std::vector<int> key(offsets.size());
        for (std::size_t i = 0; i < offsets.size(); ++i) {
            key[i] = ((offsets[i] % grid_n) + grid_n) % grid_n;
        }
        const std::scoped_lock lock(mutex_);
        auto& slot = cache_[{grid_n, std::move(key)}];
        if (!slot) {
            slot = std::make_shared<const SensingMatrix>(build_phi(offsets, grid_n));
        }
        return slot;
    }

    std::size_t size() const {
        const std::scoped_lock lock(mutex_);
        return cache_.size();
    }

private:
    mutable std::mutex mutex_;
    std::map<std::pair<int, std::vector<int>>, std::shared_ptr<const SensingMatrix>> cache_;
};

/// The distinct sensing matrices of a task set plus the task -> pattern map.
/// Sliding coprime windows cycle through few distinct offset patterns, so L
/// tasks typically share a handful of matrices.
struct SensingSet {
    int grid_n = 0;
    std::vector<std::shared_ptr<const SensingMatrix>> matrices;  ///< one per pattern
    std::vector<int> pattern_of_task;                            ///< size L
    std::vector<int> tasks_per_pattern;                          ///< multiplicity

    int pattern_count() const noexcept { return static_cast<int>(matrices.size()); }

    static SensingSet from_tasks(const TaskSet& tasks, SensingCache* cache = nullptr) {
        if (tasks.windows.empty()) {
            throw std::invalid_argument("sensing set needs at least one window");
        }
        SensingSet set;
        set.grid_n = tasks.grid_n;
        set.pattern_of_task.reserve(tasks.windows.size());
        std::map<std::vector<int>, int> pattern_ids;
        for (const Window& window : tasks.windows) {
            std::vector<int> key(window.offsets.size());
            for (std::size_t i = 0; i < window.offsets.size(); ++i) {
                key[i] = ((window.offsets[i] % tasks.grid_n) + tasks.grid_n) % tasks.grid_n;
            }
            auto [it, inserted] = pattern_ids.try_emplace(key, set.pattern_count());
            if (inserted) {
                set.matrices.push_back(cache ? cache->get(window.offsets, tasks.grid_n)
                                             : std::make_shared<const SensingMatrix>(
                                                   build_phi(window.offsets, tasks.grid_n)));
                set.tasks_per_pattern.push_back(0);
            }
            set.pattern_of_task.push_back(it->second);
            ++set.tasks_per_pattern[static_cast<std::size_t>(it->second)];
        }
        return set;
    }
};

} // namespace lse
