#pragma once

// Multitask complex-valued variational Bayesian line-spectrum estimator.
//
// Model per window l of M samples on an N-point frequency grid:
//   y_l = Phi_l s_l + n_l,   n_l ~ CN(0, beta^{-1} I)
//   s_l ~ CN(0, diag(alpha)^{-1})        (alpha shared across all L windows)
//   alpha_i ~ Gamma(a, b),  beta ~ Gamma(c, d)
// Mean-field variational inference with q(S) q(alpha) q(beta) gives closed
// coordinate updates:
//   Sigma_l = (<beta> Phi_l^H Phi_l + diag<alpha>)^{-1}
//   mu_l    = <beta> Sigma_l Phi_l^H y_l
//   q(alpha_i) = Gamma(a + L, b + sum_l <|s_{l,i}|^2>)
//   q(beta)    = Gamma(c + L*M, d + sum_l <||y_l - Phi_l s_l||^2>)
// with the Gaussian moments <|s_{l,i}|^2> = |mu_{l,i}|^2 + [Sigma_l]_{ii} and
// <||y_l - Phi_l s_l||^2> = ||y_l - Phi_l mu_l||^2 + tr(Phi_l Sigma_l Phi_l^H).
//
// The N x N inverse is never formed.  With A = diag(alpha) and
// C = Phi A^{-1} Phi^H + beta^{-1} I (an M x M matrix, M << N):
//   mu_l          = A^{-1} Phi^H C^{-1} y_l                  (Woodbury)
//   diag(Sigma)_i = alpha_i^{-1} - alpha_i^{-2} Re(phi_i^H C^{-1} phi_i)
//   tr(Phi Sigma Phi^H) = tr(D) - ||Lc^{-1} D||_F^2,  D = Phi A^{-1} Phi^H
//   ln det Sigma  = -( sum_i ln alpha_i + M ln beta + ln det C )
// Both D and the quadratic forms phi_i^H C^{-1} phi_i reduce to discrete
// Fourier sums over the window's offset differences:
//   D(m,m')  = h[(o_m - o_m') mod N],   h = DFT of alpha^{-1}
//   phi_i^H E phi_i = sum_d g_d e^{j 2 pi i d / N},  g_d = sum over entry
//   pairs of E at offset difference d — so one iteration costs O(N^2 + P*M^3)
//   for P distinct window patterns instead of O(L*N^3).

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <boost/math/special_functions/digamma.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lse/sampling.hpp"
#include "lse/sensing.hpp"

namespace lse {

/// Gamma hyperparameters of the hierarchical prior; small values make the
/// priors effectively non-informative.
struct Hyperparams {
    double a = 1e-6;
    double b = 1e-6;
    double c = 1e-6;
    double d = 1e-6;

    void validate() const {
        if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0) || !(d > 0.0)) {
            throw std::invalid_argument("hyperparameters a, b, c, d must all be positive");
        }
    }
};

/// Solver options.
struct VbOptions {
    Hyperparams hyper;
    int max_iter = 200;     ///< hard iteration cap
    double tol = 1e-6;      ///< relative bound-change stopping threshold

    void validate() const {
        hyper.validate();
        if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
        if (tol < 0.0) throw std::invalid_argument("tol must be >= 0");
    }
};

/// Posterior covariance information for one distinct sensing matrix.  The full
/// N x N matrix is materialized only on demand (tests, diagnostics); the
/// solver itself needs the diagonal, the trace of the sandwiched quadratic
/// form, and the log determinant.
struct PatternPosterior {
    Eigen::VectorXd sigma_diag;     ///< diag(Sigma), real
    double trace_quad = 0.0;        ///< tr(Phi Sigma Phi^H)
    double log_det_sigma = 0.0;     ///< ln det Sigma
    Eigen::MatrixXcd chol_lower;    ///< Cholesky factor Lc of C (M x M)
    Eigen::VectorXd inv_alpha;      ///< alpha^{-1} used to build this posterior

    /// Reconstructs the dense covariance Sigma = A^{-1} - W^H W with
    /// W = Lc^{-1} Phi A^{-1}.  O(M N^2) — test/diagnostic use only.
    Eigen::MatrixXcd full(const SensingMatrix& phi) const {
        const Eigen::MatrixXcd phi_scaled = phi.entries * inv_alpha.asDiagonal();
        const Eigen::MatrixXcd w =
            chol_lower.triangularView<Eigen::Lower>().solve(phi_scaled);
        Eigen::MatrixXcd sigma = -(w.adjoint() * w);
        sigma.diagonal() += inv_alpha.cast<std::complex<double>>();
        return sigma;
    }
};

/// Full variational state: Gaussian posteriors per task (means; covariances
/// shared per distinct sensing pattern) and Gamma posteriors for alpha, beta.
struct VbState {
    int grid_n = 0;
    int window_len = 0;
    int task_count = 0;
    std::vector<int> pattern_of_task;

    Eigen::MatrixXcd mu;              ///< N x L posterior means
    std::vector<PatternPosterior> pattern_posteriors;

    Eigen::VectorXd alpha_expect;     ///< <alpha_i>
    double beta_expect = 0.0;         ///< <beta>
    double alpha_shape = 0.0;         ///< a~ = a + L     (set by update_alpha)
    Eigen::VectorXd alpha_rate;       ///< b~_i           (set by update_alpha)
    double beta_shape = 0.0;          ///< c~ = c + L*M   (set by update_beta)
    double beta_rate = 0.0;           ///< d~             (set by update_beta)

    double bound = -std::numeric_limits<double>::infinity();
    int iteration = 0;
    bool converged = false;
    std::vector<double> bound_history;
};

/// Posterior power spectrum with detected peaks.
struct SpectrumEstimate {
    int grid_n = 0;
    Eigen::VectorXd grid_power;       ///< (1/L) sum_l <|s_{l,i}|^2>
    Eigen::VectorXd alpha_expect;     ///< <alpha_i>; valleys mark frequencies
    double beta_expect = 0.0;
    std::vector<std::pair<double, double>> detected;  ///< (freq, power), desc power
    bool converged = false;
    int iterations_used = 0;
    double bound = -std::numeric_limits<double>::infinity();
};

namespace detail {

/// Unit roots exp(j*2*pi*k/N), k = 0..N-1.
inline std::vector<std::complex<double>> unit_roots(int grid_n) {
    std::vector<std::complex<double>> roots(static_cast<std::size_t>(grid_n));
    for (int k = 0; k < grid_n; ++k) {
        const double phase = 2.0 * std::numbers::pi * k / grid_n;
        roots[static_cast<std::size_t>(k)] = {std::cos(phase), std::sin(phase)};
    }
    return roots;
}

/// Residue of o_a - o_b modulo N in [0, N).
inline int diff_mod(int a, int b, int grid_n) noexcept {
    return (((a - b) % grid_n) + grid_n) % grid_n;
}

} // namespace detail

/// Refreshes the Gaussian factor q(s_l) = CN(mu_l, Sigma_l) for every task
/// from the current <alpha>, <beta>.  Covariances are computed once per
/// distinct sensing pattern and shared.  Signals numerical breakdown
/// (non-finite results) naming the offending task.
inline void update_s(VbState& state, const TaskSet& tasks, const SensingSet& sensing) {
    const int grid_n = state.grid_n;
    const int m_rows = state.window_len;
    if (!(state.beta_expect > 0.0) || !(state.alpha_expect.minCoeff() > 0.0)) {
        throw std::runtime_error("update_s requires positive alpha and beta expectations");
    }

    const std::vector<std::complex<double>> roots = detail::unit_roots(grid_n);
    const Eigen::VectorXd inv_alpha = state.alpha_expect.cwiseInverse();

    // h = N-point discrete Fourier transform of alpha^{-1}; every entry of
    // every D = Phi A^{-1} Phi^H is one of these N values.
    std::vector<std::complex<double>> h(static_cast<std::size_t>(grid_n), {0.0, 0.0});
    for (int d = 0; d < grid_n; ++d) {
        std::complex<double> acc{0.0, 0.0};
        for (int n = 0; n < grid_n; ++n) {
            acc += inv_alpha(n) *
                   roots[static_cast<std::size_t>((static_cast<long long>(n) * d) % grid_n)];
        }
        h[static_cast<std::size_t>(d)] = acc;
    }

    const double log_alpha_sum = state.alpha_expect.array().log().sum();
    const double log_beta = std::log(state.beta_expect);

    state.pattern_posteriors.assign(static_cast<std::size_t>(sensing.pattern_count()), {});
    std::vector<Eigen::LLT<Eigen::MatrixXcd>> factors(
        static_cast<std::size_t>(sensing.pattern_count()));

    for (int p = 0; p < sensing.pattern_count(); ++p) {
        const SensingMatrix& phi = *sensing.matrices[static_cast<std::size_t>(p)];
        const std::vector<int>& offsets = phi.offsets;

        // D(m,m') = h[(o_m - o_m') mod N]; build the lower triangle and
        // mirror conjugates so D is exactly Hermitian.
        Eigen::MatrixXcd c_matrix(m_rows, m_rows);
        for (int m = 0; m < m_rows; ++m) {
            for (int mp = 0; mp <= m; ++mp) {
                const std::complex<double> value =
                    h[static_cast<std::size_t>(detail::diff_mod(
                        offsets[static_cast<std::size_t>(m)],
                        offsets[static_cast<std::size_t>(mp)], grid_n))];
                c_matrix(m, mp) = value;
                c_matrix(mp, m) = std::conj(value);
            }
        }
        const double trace_d = c_matrix.real().trace();
        const Eigen::MatrixXcd d_matrix = c_matrix;
        c_matrix.diagonal().array() += 1.0 / state.beta_expect;

        Eigen::LLT<Eigen::MatrixXcd>& llt = factors[static_cast<std::size_t>(p)];
        llt.compute(c_matrix);
        if (llt.info() != Eigen::Success) {
            // One retry with a mean-diagonal-scaled jitter; C is positive
            // definite in exact arithmetic, so only roundoff can land here.
            c_matrix.diagonal().array() += 1e-12 * c_matrix.real().trace() / m_rows;
            llt.compute(c_matrix);
            if (llt.info() != Eigen::Success) {
                throw std::runtime_error(
                    "update_s: covariance factorization failed for pattern " +
                    std::to_string(p));
            }
        }

        // g accumulates C^{-1} over equal offset differences; the diagonal of
        // Sigma is then a Fourier sum over g.
        const Eigen::MatrixXcd c_inverse =
            llt.solve(Eigen::MatrixXcd::Identity(m_rows, m_rows));
        std::vector<std::complex<double>> g(static_cast<std::size_t>(grid_n), {0.0, 0.0});
        for (int m = 0; m < m_rows; ++m) {
            for (int mp = 0; mp < m_rows; ++mp) {
                g[static_cast<std::size_t>(detail::diff_mod(
                      offsets[static_cast<std::size_t>(mp)],
                      offsets[static_cast<std::size_t>(m)], grid_n))] += c_inverse(m, mp);
            }
        }

        PatternPosterior& posterior = state.pattern_posteriors[static_cast<std::size_t>(p)];
        posterior.inv_alpha = inv_alpha;
        posterior.chol_lower = llt.matrixL();
        posterior.sigma_diag.resize(grid_n);
        for (int i = 0; i < grid_n; ++i) {
            std::complex<double> quad{0.0, 0.0};
            for (int d = 0; d < grid_n; ++d) {
                if (g[static_cast<std::size_t>(d)] != std::complex<double>{0.0, 0.0}) {
                    quad += g[static_cast<std::size_t>(d)] *
                            roots[static_cast<std::size_t>(
                                (static_cast<long long>(i) * d) % grid_n)];
                }
            }
            posterior.sigma_diag(i) =
                inv_alpha(i) - inv_alpha(i) * inv_alpha(i) * quad.real();
        }

        const Eigen::MatrixXcd half_solved =
            posterior.chol_lower.triangularView<Eigen::Lower>().solve(d_matrix);
        posterior.trace_quad = trace_d - half_solved.squaredNorm();

        double log_det_c = 0.0;
        for (int m = 0; m < m_rows; ++m) {
            log_det_c += 2.0 * std::log(posterior.chol_lower(m, m).real());
        }
        posterior.log_det_sigma =
            -(log_alpha_sum + m_rows * log_beta + log_det_c);

        if (!posterior.sigma_diag.allFinite() || !std::isfinite(posterior.trace_quad) ||
            !std::isfinite(posterior.log_det_sigma)) {
            throw std::runtime_error("update_s: non-finite covariance moments for pattern " +
                                     std::to_string(p));
        }
    }

    // Posterior means: mu_l = A^{-1} Phi^H (C^{-1} y_l).
    state.mu.resize(grid_n, state.task_count);
    for (int l = 0; l < state.task_count; ++l) {
        const int p = state.pattern_of_task[static_cast<std::size_t>(l)];
        const SensingMatrix& phi = *sensing.matrices[static_cast<std::size_t>(p)];
        const Eigen::Map<const Eigen::VectorXcd> y(
            tasks.windows[static_cast<std::size_t>(l)].values.data(), m_rows);
        const Eigen::VectorXcd solved = factors[static_cast<std::size_t>(p)].solve(y);
        state.mu.col(l) = inv_alpha.asDiagonal() * (phi.entries.adjoint() * solved);
        if (!state.mu.col(l).allFinite()) {
            throw std::runtime_error("update_s: non-finite posterior mean for task " +
                                     std::to_string(l + 1));
        }
    }
}

namespace detail {

/// sum_l <|s_{l,i}|^2> = sum_l (|mu_{l,i}|^2 + [Sigma_{p(l)}]_{ii}).
inline Eigen::VectorXd second_moment_sums(const VbState& state) {
    Eigen::VectorXd sums = state.mu.cwiseAbs2().rowwise().sum();
    for (int l = 0; l < state.task_count; ++l) {
        sums += state
                    .pattern_posteriors[static_cast<std::size_t>(
                        state.pattern_of_task[static_cast<std::size_t>(l)])]
                    .sigma_diag;
    }
    return sums;
}

/// sum_l <||y_l - Phi_l s_l||^2> = sum_l (||y_l - Phi_l mu_l||^2 + trace_quad).
inline double expected_residual(const VbState& state, const TaskSet& tasks,
                                const SensingSet& sensing) {
    double total = 0.0;
    for (int l = 0; l < state.task_count; ++l) {
        const int p = state.pattern_of_task[static_cast<std::size_t>(l)];
        const SensingMatrix& phi = *sensing.matrices[static_cast<std::size_t>(p)];
        const Eigen::Map<const Eigen::VectorXcd> y(
            tasks.windows[static_cast<std::size_t>(l)].values.data(), state.window_len);
        total += (y - phi.entries * state.mu.col(l)).squaredNorm();
        total += state.pattern_posteriors[static_cast<std::size_t>(p)].trace_quad;
    }
    return total;
}

} // namespace detail

/// Gamma update for the shared precisions alpha_i (one per grid point):
/// q(alpha_i) = Gamma(a + L, b + sum_l <|s_{l,i}|^2>).
inline void update_alpha(VbState& state, const Hyperparams& hyper) {
    state.alpha_shape = hyper.a + static_cast<double>(state.task_count);
    state.alpha_rate = detail::second_moment_sums(state).array() + hyper.b;
    state.alpha_expect = state.alpha_shape / state.alpha_rate.array();
}

/// Gamma update for the noise precision beta:
/// q(beta) = Gamma(c + L*M, d + sum_l <||y_l - Phi_l s_l||^2>).
inline void update_beta(VbState& state, const TaskSet& tasks, const SensingSet& sensing,
                        const Hyperparams& hyper) {
    state.beta_shape =
        hyper.c + static_cast<double>(state.task_count) * static_cast<double>(state.window_len);
    state.beta_rate = hyper.d + detail::expected_residual(state, tasks, sensing);
    state.beta_expect = state.beta_shape / state.beta_rate;
}

/// Mean-field evidence lower bound under q(S) q(alpha) q(beta):
/// expected log-likelihood + expected log-priors + entropies, all closed-form
/// for the Gaussian and Gamma families.  Serves as the convergence monitor;
/// coordinate updates never decrease it (up to roundoff).
inline double variational_bound(const VbState& state, const TaskSet& tasks,
                                const SensingSet& sensing, const Hyperparams& hyper) {
    const double L = static_cast<double>(state.task_count);
    const double M = static_cast<double>(state.window_len);
    const double N = static_cast<double>(state.grid_n);
    const double log_pi = std::log(std::numbers::pi);

    // Gamma-posterior parameters implied by the stored expectations.  Before
    // the first alpha/beta update the shapes are unset; fall back to the
    // fixed-point shapes (the expectations then define matching rates).
    const double a_shape = state.alpha_shape > 0.0 ? state.alpha_shape : hyper.a + L;
    const Eigen::VectorXd b_rate = state.alpha_rate.size() == state.grid_n
                                       ? state.alpha_rate
                                       : (a_shape / state.alpha_expect.array()).matrix();
    const double c_shape = state.beta_shape > 0.0 ? state.beta_shape : hyper.c + L * M;
    const double d_rate = state.beta_rate > 0.0 ? state.beta_rate : c_shape / state.beta_expect;

    const double digamma_a = boost::math::digamma(a_shape);
    const double digamma_c = boost::math::digamma(c_shape);
    const Eigen::VectorXd log_alpha_expect =
        (digamma_a - b_rate.array().log()).matrix();          // <ln alpha_i>
    const double log_beta_expect = digamma_c - std::log(d_rate);  // <ln beta>

    const Eigen::VectorXd moment_sums = detail::second_moment_sums(state);
    const double residual = detail::expected_residual(state, tasks, sensing);

    // E_q[ln p(Y | S, beta)]
    const double e_likelihood =
        -L * M * log_pi + L * M * log_beta_expect - state.beta_expect * residual;
    // E_q[ln p(S | alpha)]
    const double e_prior_s = -L * N * log_pi + L * log_alpha_expect.sum() -
                             state.alpha_expect.dot(moment_sums);
    // E_q[ln p(alpha)]
    const double e_prior_alpha =
        N * (hyper.a * std::log(hyper.b) - std::lgamma(hyper.a)) +
        (hyper.a - 1.0) * log_alpha_expect.sum() - hyper.b * state.alpha_expect.sum();
    // E_q[ln p(beta)]
    const double e_prior_beta = hyper.c * std::log(hyper.d) - std::lgamma(hyper.c) +
                                (hyper.c - 1.0) * log_beta_expect -
                                hyper.d * state.beta_expect;
    // Entropy of q(S): complex Gaussian, N ln(pi e) + ln det Sigma per task.
    double entropy_s = L * N * (log_pi + 1.0);
    for (int l = 0; l < state.task_count; ++l) {
        entropy_s += state
                         .pattern_posteriors[static_cast<std::size_t>(
                             state.pattern_of_task[static_cast<std::size_t>(l)])]
                         .log_det_sigma;
    }
    // Entropy of q(alpha_i) and q(beta): Gamma entropies.
    const double entropy_alpha =
        N * (a_shape + std::lgamma(a_shape) + (1.0 - a_shape) * digamma_a) -
        b_rate.array().log().sum();
    const double entropy_beta =
        c_shape - std::log(d_rate) + std::lgamma(c_shape) + (1.0 - c_shape) * digamma_c;

    return e_likelihood + e_prior_s + e_prior_alpha + e_prior_beta + entropy_s +
           entropy_alpha + entropy_beta;
}

/// Initial state: alpha = 1 everywhere, beta = 1 / pooled sample variance
/// (100 when the variance vanishes), mu = 0, covariances refreshed once from
/// these expectations so the first alpha/beta updates have moments to consume.
inline VbState init_state(const TaskSet& tasks, const SensingSet& sensing,
                          const VbOptions& options = {}) {
    options.validate();
    if (tasks.windows.empty()) throw std::invalid_argument("init_state needs at least one task");

    VbState state;
    state.grid_n = tasks.grid_n;
    state.window_len = tasks.window_len;
    state.task_count = tasks.task_count();
    state.pattern_of_task = sensing.pattern_of_task;

    std::complex<double> mean{0.0, 0.0};
    std::size_t count = 0;
    for (const Window& window : tasks.windows) {
        for (const auto& value : window.values) mean += value;
        count += window.values.size();
    }
    mean /= static_cast<double>(count);
    double variance = 0.0;
    double mean_power = 0.0;
    for (const Window& window : tasks.windows) {
        for (const auto& value : window.values) {
            variance += std::norm(value - mean);
            mean_power += std::norm(value);
        }
    }
    variance /= static_cast<double>(count);
    mean_power /= static_cast<double>(count);

    state.alpha_expect = Eigen::VectorXd::Ones(state.grid_n);
    // A constant record has zero variance in exact arithmetic; the mean
    // subtraction can leave a roundoff-sized residue, so anything at that
    // level counts as vanishing.
    const bool degenerate = !(variance > 1e-24 * mean_power);
    state.beta_expect = degenerate ? 100.0 : 1.0 / variance;
    state.mu = Eigen::MatrixXcd::Zero(state.grid_n, state.task_count);

    // One covariance refresh at the initial expectations; the means stay zero
    // until the first full sweep reaches its s-update.
    VbState refreshed = state;
    update_s(refreshed, tasks, sensing);
    state.pattern_posteriors = std::move(refreshed.pattern_posteriors);
    return state;
}

/// Mean posterior power per grid point: (1/L) sum_l <|s_{l,i}|^2>.
inline Eigen::VectorXd grid_power_of(const VbState& state) {
    return detail::second_moment_sums(state) / static_cast<double>(state.task_count);
}

namespace detail {

/// Indices of circular local maxima of `power`, sorted by descending value
/// (ties broken toward the lower index).
inline std::vector<int> local_maxima_desc(const Eigen::VectorXd& power) {
    const int n = static_cast<int>(power.size());
    std::vector<int> maxima;
    for (int i = 0; i < n; ++i) {
        const double left = power((i + n - 1) % n);
        const double right = power((i + 1) % n);
        if (power(i) >= left && power(i) >= right) maxima.push_back(i);
    }
    std::sort(maxima.begin(), maxima.end(), [&](int lhs, int rhs) {
        if (power(lhs) != power(rhs)) return power(lhs) > power(rhs);
        return lhs < rhs;
    });
    return maxima;
}

} // namespace detail

/// Assembles the public estimate from a converged (or stopped) state.
inline SpectrumEstimate make_estimate(const VbState& state) {
    SpectrumEstimate estimate;
    estimate.grid_n = state.grid_n;
    estimate.grid_power = grid_power_of(state);
    estimate.alpha_expect = state.alpha_expect;
    estimate.beta_expect = state.beta_expect;
    estimate.converged = state.converged;
    estimate.iterations_used = state.iteration;
    estimate.bound = state.bound;
    for (const int i : detail::local_maxima_desc(estimate.grid_power)) {
        estimate.detected.emplace_back(static_cast<double>(i) / state.grid_n,
                                       estimate.grid_power(i));
    }
    return estimate;
}

/// Everything a caller might want from one solver run.
struct VbRun {
    SensingSet sensing;
    VbState state;
    SpectrumEstimate estimate;
};

/// Full solver: init, then sweeps of (update_alpha, update_beta, update_s)
/// with the bound evaluated after every sweep, stopping at max_iter or when
/// the relative bound change drops below tol.
inline VbRun run_detailed(const TaskSet& tasks, const VbOptions& options = {},
                          SensingCache* cache = nullptr) {
    options.validate();
    VbRun result;
    result.sensing = SensingSet::from_tasks(tasks, cache);
    result.state = init_state(tasks, result.sensing, options);
    VbState& state = result.state;

    try {
        for (int it = 1; it <= options.max_iter; ++it) {
            update_alpha(state, options.hyper);
            update_beta(state, tasks, result.sensing, options.hyper);
            update_s(state, tasks, result.sensing);
            const double previous = state.bound;
            state.bound = variational_bound(state, tasks, result.sensing, options.hyper);
            state.bound_history.push_back(state.bound);
            state.iteration = it;
            if (std::isfinite(previous) &&
                std::abs(state.bound - previous) < options.tol * std::abs(previous)) {
                state.converged = true;
                break;
            }
        }
    } catch (const std::runtime_error& error) {
        throw std::runtime_error("vb solver failed at iteration " +
                                 std::to_string(state.iteration + 1) + ": " + error.what());
    }

    result.estimate = make_estimate(state);
    return result;
}

/// Convenience wrapper returning only the estimate.
inline SpectrumEstimate run(const TaskSet& tasks, const VbOptions& options = {},
                            SensingCache* cache = nullptr) {
    return run_detailed(tasks, options, cache).estimate;
}

/// Grid frequencies n/N of the K largest grid_power entries, in descending
/// power order; ties broken toward the lower index.
inline std::vector<double> extract_frequencies(const SpectrumEstimate& estimate, int K) {
    const int n = estimate.grid_n;
    if (K < 0 || K > n) throw std::invalid_argument("extract_frequencies needs 0 <= K <= N");
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int lhs, int rhs) {
        if (estimate.grid_power(lhs) != estimate.grid_power(rhs)) {
            return estimate.grid_power(lhs) > estimate.grid_power(rhs);
        }
        return lhs < rhs;
    });
    std::vector<double> freqs;
    freqs.reserve(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        freqs.push_back(static_cast<double>(order[static_cast<std::size_t>(k)]) / n);
    }
    return freqs;
}

/// Grid frequencies of the K strongest spectrum peaks, reading "peak" as a
/// circular local maximum of grid_power.  A shoulder bin adjacent to a
/// dominant peak holds leakage power but is not itself a peak, so peak-based
/// read-off is how a spectrum plot is actually interpreted.  When fewer than K
/// local maxima exist the remainder is filled with the largest non-maximum
/// entries.  Descending power order, ties toward the lower index.
inline std::vector<double> extract_peak_frequencies(const SpectrumEstimate& estimate, int K) {
    const int n = estimate.grid_n;
    if (K < 0 || K > n) throw std::invalid_argument("extract_peak_frequencies needs 0 <= K <= N");
    const std::vector<int> maxima = detail::local_maxima_desc(estimate.grid_power);
    std::vector<bool> taken(static_cast<std::size_t>(n), false);
    std::vector<int> picked;
    picked.reserve(static_cast<std::size_t>(K));
    for (const int i : maxima) {
        if (static_cast<int>(picked.size()) == K) break;
        picked.push_back(i);
        taken[static_cast<std::size_t>(i)] = true;
    }
    if (static_cast<int>(picked.size()) < K) {
        std::vector<int> rest;
        for (int i = 0; i < n; ++i) {
            if (!taken[static_cast<std::size_t>(i)]) rest.push_back(i);
        }
        std::sort(rest.begin(), rest.end(), [&](int lhs, int rhs) {
            if (estimate.grid_power(lhs) != estimate.grid_power(rhs)) {
                return estimate.grid_power(lhs) > estimate.grid_power(rhs);
            }
            return lhs < rhs;
        });
        for (const int i : rest) {
            if (static_cast<int>(picked.size()) == K) break;
            picked.push_back(i);
        }
    }
    std::vector<double> freqs;
    freqs.reserve(picked.size());
    for (const int i : picked) freqs.push_back(static_cast<double>(i) / n);
    return freqs;
}

} // namespace lse
