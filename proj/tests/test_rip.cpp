#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numeric>

#include "lse/rip_analysis.hpp"
#include "lse/sampling.hpp"

using namespace lse;
using Catch::Matchers::WithinAbs;

namespace {

SensingMatrix first_window_matrix(const CoprimeScheme& scheme, int window_len, int grid_n) {
    const std::vector<long long> indices =
        first_indices(scheme, static_cast<std::size_t>(window_len));
    std::vector<int> offsets;
    for (const long long index : indices) {
        offsets.push_back(static_cast<int>(index - indices.front()));
    }
    return normalize_columns(build_phi(offsets, grid_n));
}

} // namespace

TEST_CASE("sparsity one gives unit eigenvalues exactly", "[rip]") {
    const SensingMatrix phi = first_window_matrix({9, 10, 11}, 27, 100);
    const RipReport report = sample_subgram_eigs(phi, {1}, 3);
    CHECK_THAT(report.avg_min_eig[0], WithinAbs(1.0, 1e-12));
    CHECK_THAT(report.avg_max_eig[0], WithinAbs(1.0, 1e-12));
    CHECK_THAT(report.extreme_min_eig[0], WithinAbs(1.0, 1e-12));
    CHECK_THAT(report.extreme_max_eig[0], WithinAbs(1.0, 1e-12));
    CHECK(report.num_submatrices_per_k[0] == 1 * 1 * 100);
}

TEST_CASE("full Fourier sub-Grams are perfectly isometric", "[rip]") {
    const int grid_n = 32;
    std::vector<int> offsets(static_cast<std::size_t>(grid_n));
    std::iota(offsets.begin(), offsets.end(), 0);
    const SensingMatrix full = normalize_columns(build_phi(offsets, grid_n));
    const RipReport report = sample_subgram_eigs(full, {2, 5, 9, 12}, 17);
    for (std::size_t i = 0; i < report.k_range.size(); ++i) {
        CHECK_THAT(report.extreme_min_eig[i], WithinAbs(1.0, 1e-9));
        CHECK_THAT(report.extreme_max_eig[i], WithinAbs(1.0, 1e-9));
    }
}

TEST_CASE("pair sub-Grams have eigenvalues 1 +/- coherence", "[rip]") {
    const SensingMatrix phi = first_window_matrix({9, 10, 11}, 27, 100);
    const Eigen::MatrixXcd gram = column_gram(phi);
    for (const auto& [a, b] : std::vector<std::pair<int, int>>{
             {0, 1}, {3, 40}, {17, 18}, {50, 99}, {12, 60}}) {
        const double coherence = std::abs(gram(a, b));
        const auto [lo, hi] = subgram_eig_extremes(gram, {a, b});
        CHECK_THAT(lo, WithinAbs(1.0 - coherence, 1e-10));
        CHECK_THAT(hi, WithinAbs(1.0 + coherence, 1e-10));
    }
}

TEST_CASE("sub-Gram traces equal k", "[rip]") {
    const SensingMatrix phi = first_window_matrix({9, 10, 11}, 27, 100);
    const Eigen::MatrixXcd gram = column_gram(phi);
    for (const int k : {2, 5, 8}) {
        for (const std::vector<int>& subset : rip_subsets(100, k, 23)) {
            Eigen::MatrixXcd sub(k, k);
            for (int a = 0; a < k; ++a) {
                for (int b = 0; b < k; ++b) {
                    sub(a, b) = gram(subset[static_cast<std::size_t>(a)],
                                     subset[static_cast<std::size_t>(b)]);
                }
            }
            const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
                sub, Eigen::EigenvaluesOnly);
            REQUIRE_THAT(solver.eigenvalues().sum(), WithinAbs(static_cast<double>(k), 1e-9));
            REQUIRE(solver.eigenvalues().minCoeff() >= -1e-12);
        }
    }
}

TEST_CASE("rip report is deterministic and well-formed", "[rip]") {
    const SensingMatrix phi = first_window_matrix({9, 10, 11}, 27, 100);
    const RipReport a = sample_subgram_eigs(phi, {2, 3, 4}, 7);
    const RipReport b = sample_subgram_eigs(phi, {2, 3, 4}, 7);
    CHECK(a.avg_min_eig == b.avg_min_eig);
    CHECK(a.avg_max_eig == b.avg_max_eig);
    CHECK(a.extreme_min_eig == b.extreme_min_eig);
    CHECK(a.extreme_max_eig == b.extreme_max_eig);
    CHECK_NOTHROW(a.validate());

    SECTION("per-k streams do not depend on the requested k set") {
        const RipReport only3 = sample_subgram_eigs(phi, {3}, 7);
        CHECK(only3.avg_min_eig[0] == a.avg_min_eig[1]);
        CHECK(only3.extreme_max_eig[0] == a.extreme_max_eig[1]);
    }
    SECTION("draw counts follow k^2 N") {
        const std::vector<int> expected{400, 900, 1600};
        CHECK(a.num_submatrices_per_k == expected);
    }
}

TEST_CASE("rip report is invariant under column permutation", "[rip]") {
    // Permute the columns and map each drawn subset through the inverse
    // permutation: every sub-Gram is then similar to the original one, so the
    // whole report must match exactly.
    const SensingMatrix phi = first_window_matrix({9, 10, 11}, 20, 64);
    const Eigen::MatrixXcd gram = column_gram(phi);

    const int grid_n = phi.grid_n;
    std::vector<int> perm(static_cast<std::size_t>(grid_n));
    std::iota(perm.begin(), perm.end(), 0);
    SplitMix64 shuffle_rng(99);
    for (int i = grid_n - 1; i > 0; --i) {
        const int j = static_cast<int>(shuffle_rng.next() % static_cast<std::uint64_t>(i + 1));
        std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
    Eigen::MatrixXcd permuted_entries(phi.rows(), grid_n);
    for (int n = 0; n < grid_n; ++n) {
        permuted_entries.col(n) = phi.entries.col(perm[static_cast<std::size_t>(n)]);
    }
    const Eigen::MatrixXcd permuted_gram = permuted_entries.adjoint() * permuted_entries;

    for (const int k : {2, 4}) {
        for (const std::vector<int>& subset : rip_subsets(grid_n, k, 13)) {
            std::vector<int> mapped;
            for (const int i : subset) mapped.push_back(perm[static_cast<std::size_t>(i)]);
            const auto [lo_p, hi_p] = subgram_eig_extremes(permuted_gram, subset);
            const auto [lo, hi] = subgram_eig_extremes(gram, mapped);
            REQUIRE_THAT(lo_p, WithinAbs(lo, 1e-12));
            REQUIRE_THAT(hi_p, WithinAbs(hi, 1e-12));
        }
    }
}

TEST_CASE("rip rejects invalid inputs", "[rip]") {
    const SensingMatrix phi = first_window_matrix({9, 10, 11}, 7, 100);

    SECTION("unnormalized matrices") {
        const SensingMatrix raw = build_phi({0, 1, 2}, 100);
        CHECK_THROWS_AS(sample_subgram_eigs(raw, {2}, 1), std::invalid_argument);
    }
    SECTION("k beyond M") {
        CHECK_THROWS_AS(sample_subgram_eigs(phi, {8}, 1), std::invalid_argument);
    }
    SECTION("empty k range") {
        CHECK_THROWS_AS(sample_subgram_eigs(phi, {}, 1), std::invalid_argument);
    }
    SECTION("bad subsets") {
        const Eigen::MatrixXcd gram = column_gram(phi);
        CHECK_THROWS_AS(subgram_eig_extremes(gram, {}), std::invalid_argument);
        CHECK_THROWS_AS(subgram_eig_extremes(gram, {0, 100}), std::invalid_argument);
    }
}
