#pragma once

// Empirical restricted-isometry diagnostics for partial Fourier sensing
// matrices.  The restricted isometry constant delta_k bounds how far the
// eigenvalues of k-column sub-Gram matrices Phi_K^H Phi_K deviate from 1;
// computing it exactly is combinatorial, so this module estimates the
// per-sparsity eigenvalue spread by sampling k^2*N random column subsets for
// each k and recording the mean and extreme maximum/minimum eigenvalues.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lse/rng.hpp"
#include "lse/sensing.hpp"

namespace lse {

/// Sampled eigenvalue statistics, one entry per sparsity level in k_range.
struct RipReport {
    std::vector<int> k_range;
    std::vector<int> num_submatrices_per_k;   ///< k^2 * N draws at each k
    std::vector<double> avg_max_eig;
    std::vector<double> avg_min_eig;
    std::vector<double> extreme_max_eig;
    std::vector<double> extreme_min_eig;

    void validate() const {
        const std::size_t n = k_range.size();
        if (num_submatrices_per_k.size() != n || avg_max_eig.size() != n ||
            avg_min_eig.size() != n || extreme_max_eig.size() != n ||
            extreme_min_eig.size() != n) {
            throw std::invalid_argument("rip report columns have mismatched lengths");
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!(extreme_min_eig[i] <= avg_min_eig[i] && avg_min_eig[i] <= avg_max_eig[i] &&
                  avg_max_eig[i] <= extreme_max_eig[i])) {
                throw std::invalid_argument(
                    "rip report violates extreme_min <= avg_min <= avg_max <= extreme_max at k=" +
                    std::to_string(k_range[i]));
            }
            if (extreme_min_eig[i] < 0.0) {
                throw std::invalid_argument("rip report holds a negative Gram eigenvalue at k=" +
                                            std::to_string(k_range[i]));
            }
        }
    }
};

/// Default sparsity axis, k = 2..12.
inline std::vector<int> default_k_range() {
    std::vector<int> ks;
    for (int k = 2; k <= 12; ++k) ks.push_back(k);
    return ks;
}

/// Full column Gram Phi^H Phi (N x N); sub-Grams are principal submatrices.
inline Eigen::MatrixXcd column_gram(const SensingMatrix& matrix) {
    return matrix.entries.adjoint() * matrix.entries;
}

/// The k^2*N column subsets (sorted, distinct in-range indices) that
/// sample_subgram_eigs draws at sparsity k.  Exposed so tests can replay the
/// exact draw sequence (e.g. mapping subsets through a column permutation).
inline std::vector<std::vector<int>> rip_subsets(int grid_n, int k, std::uint64_t seed) {
    if (k < 1 || k > grid_n) throw std::invalid_argument("rip_subsets needs 1 <= k <= N");
    SplitMix64 rng(mix_seed(seed, static_cast<std::uint64_t>(k)));
    const long long draws = static_cast<long long>(k) * k * grid_n;
    std::vector<std::vector<int>> subsets;
    subsets.reserve(static_cast<std::size_t>(draws));
    for (long long d = 0; d < draws; ++d) subsets.push_back(sample_distinct(rng, grid_n, k));
    return subsets;
}

/// Minimum and maximum eigenvalue of the principal submatrix gram(K, K).
inline std::pair<double, double> subgram_eig_extremes(const Eigen::MatrixXcd& gram,
                                                      const std::vector<int>& subset) {
    const int k = static_cast<int>(subset.size());
    if (k < 1) throw std::invalid_argument("subgram subset must be non-empty");
    for (const int i : subset) {
        if (i < 0 || i >= gram.rows()) {
            throw std::invalid_argument("subgram subset index out of range");
        }
    }
    Eigen::MatrixXcd sub(k, k);
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
            sub(a, b) = gram(subset[static_cast<std::size_t>(a)],
                             subset[static_cast<std::size_t>(b)]);
        }
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sub,
                                                                 Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("subgram eigenvalue computation failed");
    }
    return {solver.eigenvalues().minCoeff(), solver.eigenvalues().maxCoeff()};
}

/// Samples k^2*N random column subsets per sparsity k and records the mean and
/// extreme max/min sub-Gram eigenvalues.  Requires a normalized matrix (unit
/// columns put the well-conditioned case at eigenvalues 1) and every k <= M
/// (beyond M the minimum eigenvalue is structurally 0 and says nothing about
/// isometry).  Subsets may repeat across draws; each k has its own RNG stream
/// derived from (seed, k), so per-k results are independent of which other
/// sparsities are requested.  Deterministic given the seed.
inline RipReport sample_subgram_eigs(const SensingMatrix& matrix,
                                     const std::vector<int>& k_range, std::uint64_t seed) {
    if (!matrix.normalized) {
        throw std::invalid_argument("sample_subgram_eigs requires a column-normalized matrix");
    }
    if (k_range.empty()) throw std::invalid_argument("sample_subgram_eigs needs k values");
    for (const int k : k_range) {
        if (k < 1) throw std::invalid_argument("sparsity k must be >= 1");
        if (k > matrix.rows()) {
            throw std::invalid_argument("sparsity k=" + std::to_string(k) + " exceeds M=" +
                                        std::to_string(matrix.rows()) +
                                        " (sub-Gram minimum eigenvalue structurally 0)");
        }
    }

    const Eigen::MatrixXcd gram = column_gram(matrix);
    RipReport report;
    report.k_range = k_range;
    for (const int k : k_range) {
        double sum_min = 0.0;
        double sum_max = 0.0;
        double ext_min = std::numeric_limits<double>::infinity();
        double ext_max = -std::numeric_limits<double>::infinity();
        const std::vector<std::vector<int>> subsets = rip_subsets(matrix.grid_n, k, seed);
        for (const std::vector<int>& subset : subsets) {
            const auto [lo, hi] = subgram_eig_extremes(gram, subset);
            sum_min += lo;
            sum_max += hi;
            ext_min = std::min(ext_min, lo);
            ext_max = std::max(ext_max, hi);
        }
        const double draws = static_cast<double>(subsets.size());
        report.num_submatrices_per_k.push_back(static_cast<int>(subsets.size()));
        report.avg_min_eig.push_back(sum_min / draws);
        report.avg_max_eig.push_back(sum_max / draws);
        report.extreme_min_eig.push_back(ext_min);
        report.extreme_max_eig.push_back(ext_max);
    }
    report.validate();
    return report;
}

} // namespace lse
