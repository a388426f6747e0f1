#pragma once

// Slow, obviously-correct reference implementations the tests compare the
// library's optimized paths against.  Everything here is written the naive
// way on purpose: dense inverses, exhaustive searches, direct counting.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "lse/sampling.hpp"
#include "lse/sensing.hpp"

namespace oracle {

/// Dense posterior covariance (beta Phi^H Phi + diag(alpha))^{-1} by direct
/// inversion of the N x N matrix.
inline Eigen::MatrixXcd dense_sigma(const Eigen::MatrixXcd& phi,
                                    const Eigen::VectorXd& alpha, double beta) {
    Eigen::MatrixXcd a = beta * (phi.adjoint() * phi);
    a += alpha.cast<std::complex<double>>().asDiagonal();
    return a.inverse();
}

/// Dense posterior mean beta * Sigma * Phi^H y.
inline Eigen::VectorXcd dense_mu(const Eigen::MatrixXcd& phi, const Eigen::MatrixXcd& sigma,
                                 const Eigen::VectorXcd& y, double beta) {
    return beta * (sigma * (phi.adjoint() * y));
}

/// Exhaustive single-component least squares: for every grid frequency n/N
/// fit the best complex amplitude and return the bin with the smallest
/// residual.
inline int best_single_frequency_bin(const std::vector<long long>& indices,
                                     const std::vector<std::complex<double>>& values,
                                     int grid_n) {
    int best_bin = 0;
    double best_residual = std::numeric_limits<double>::infinity();
    const int m = static_cast<int>(indices.size());
    for (int n = 0; n < grid_n; ++n) {
        Eigen::VectorXcd atom(m);
        Eigen::VectorXcd y(m);
        for (int i = 0; i < m; ++i) {
            const double phase = 2.0 * std::numbers::pi * n *
                                 static_cast<double>(indices[static_cast<std::size_t>(i)]) /
                                 grid_n;
            atom(i) = {std::cos(phase), std::sin(phase)};
            y(i) = values[static_cast<std::size_t>(i)];
        }
        const std::complex<double> coeff = atom.dot(y) / static_cast<double>(m);
        const double residual = (y - coeff * atom).squaredNorm();
        if (residual < best_residual) {
            best_residual = residual;
            best_bin = n;
        }
    }
    return best_bin;
}

/// Direct count of integers in [1, horizon] divisible by any scheme ratio —
/// the brute-force alternative to the inclusion-exclusion formula.
inline long long count_multiples_direct(const lse::CoprimeScheme& scheme, long long horizon) {
    const std::vector<int> ratios = scheme.ratios();
    long long count = 0;
    for (long long t = 1; t <= horizon; ++t) {
        for (const int r : ratios) {
            if (t % r == 0) {
                ++count;
                break;
            }
        }
    }
    return count;
}

/// Brute-force maximum valid window length straight from the definition:
/// the largest M such that every one of the L sliding windows has pairwise
/// mod-N distinct offsets that all fit inside one grid period.
inline int max_window_brute_force(const lse::CoprimeScheme& scheme, int grid_n,
                                  int task_count) {
    const std::vector<long long> indices =
        lse::first_indices(scheme, static_cast<std::size_t>(task_count + grid_n));
    for (int m = grid_n; m >= 2; --m) {
        bool all_ok = true;
        for (int l = 0; l < task_count && all_ok; ++l) {
            const long long base = indices[static_cast<std::size_t>(l)];
            std::vector<int> offsets;
            for (int i = 0; i < m; ++i) {
                offsets.push_back(static_cast<int>(
                    indices[static_cast<std::size_t>(l + i)] - base));
            }
            if (offsets.back() > grid_n - 1) {
                all_ok = false;
                break;
            }
            for (std::size_t a = 0; a < offsets.size() && all_ok; ++a) {
                for (std::size_t b = a + 1; b < offsets.size(); ++b) {
                    if ((offsets[a] - offsets[b]) % grid_n == 0) {
                        all_ok = false;
                        break;
                    }
                }
            }
        }
        if (all_ok) return m;
    }
    return 1;
}

} // namespace oracle
