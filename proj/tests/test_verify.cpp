#include "rootflow/verify.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace rootflow;

TEST_SUITE_BEGIN("verify");

TEST_CASE("hermite_fit recovers an exact shift") {
    for (int ell : {1, 5, 20, 60}) {
        const RootSet y = hermite_roots(ell);
        const std::size_t n = 4000;
        const double sqrt_n = std::sqrt(static_cast<double>(n));
        for (double c : {0.0, -0.8, 1.7}) {
            std::vector<double> r(y.n());
            for (std::size_t i = 0; i < y.n(); ++i) r[i] = (y[i] - c) / sqrt_n;
            const HermiteFitReport rep = hermite_fit(RootSet(r), n);
            CHECK(rep.gamma == doctest::Approx(c).epsilon(1e-10));
            CHECK(rep.rms_error <= 1e-12);
        }
    }
    CHECK_THROWS_AS(hermite_fit(RootSet({0.0, 1.0}), 1), std::invalid_argument);
}

TEST_CASE("lemma residual: degenerate and closed-form orders") {
    oracle::TestRng rng(13);
    for (int rep = 0; rep < 100; ++rep) {
        const int n = 5 + static_cast<int>(rng.uniform(0.0, 40.0));
        const RootSet roots(oracle::random_distinct(rng, n, -2.5, 2.5));

        // m = 1: prediction is e_1 itself
        CHECK(lemma_residual(roots, 1) == 0.0);

        // m = 2: residual is (n - p_2)/2 algebraically
        const double residual = lemma_residual(roots, 2);
        const double expected = 0.5 * (static_cast<double>(n) - power_sum(roots, 2));
        const double scale = 1.0 + std::abs(expected);
        CHECK(std::abs(residual - expected) <= 1e-10 * scale);
    }
}

TEST_CASE("prediction agrees with its Hermite form") {
    oracle::TestRng rng(99);
    for (int m = 1; m <= 10; ++m) {
        for (int rep = 0; rep < 10; ++rep) {
            const double e1 = rng.uniform(-30.0, 30.0);
            const std::size_t n = static_cast<std::size_t>(rng.uniform(10.0, 2000.0));
            const double direct = lemma_predicted_sum(e1, n, m);
            double mfact = 1.0;
            for (int i = 2; i <= m; ++i) mfact *= i;
            const double hermite_form =
                std::pow(static_cast<double>(n), m / 2.0) *
                hermite_eval(HermiteKind::probabilists, m, e1 / std::sqrt(static_cast<double>(n))) /
                mfact;
            CHECK(direct == doctest::Approx(hermite_form).epsilon(1e-10));
        }
    }
}

TEST_CASE("lemma sweep ratios stay bounded for m = 2") {
    const std::vector<LemmaReport> reports =
        lemma_sweep({Law::uniform_sym}, 2, {100, 400, 1600}, 400, RngStream{5, 0});
    REQUIRE(reports.size() == 3);
    for (const LemmaReport& r : reports) {
        CHECK(std::isfinite(r.normalized_ratio));
        CHECK(r.normalized_ratio > 0.0);
    }
    CHECK(reports[2].normalized_ratio <= 2.0 * reports[0].normalized_ratio);
    CHECK_THROWS_AS(lemma_sweep({Law::uniform_sym}, 2, {100}, 10, RngStream{5, 0}),
                    std::invalid_argument);
}

TEST_CASE("single-root collapse equals the sample mean") {
    for (std::size_t n : {10, 100}) {
        const RootSet roots = sample_roots({Law::gaussian_std}, n, RngStream{17, n});
        const Trajectory traj =
            differentiate_many(roots, static_cast<int>(n) - 1, EvolveConfig{});
        REQUIRE(traj.final.n() == 1);
        CHECK(std::abs(traj.final[0] - roots.mean()) <= 1e-12 * (1.0 + roots.spread()));
    }
}

TEST_CASE("conservation report on known trajectories") {
    Trajectory tiny;
    tiny.snapshots.push_back({0, RootSet({-1.0, 0.0, 1.0})});
    tiny.snapshots.push_back({1, differentiate_once(RootSet({-1.0, 0.0, 1.0}), EvolveConfig{})});
    tiny.final = tiny.snapshots.back().roots;
    const ConservationReport rep = conservation_report(tiny);
    CHECK(rep.mean_drift <= 1e-14);
    CHECK(rep.pairwise_identity_rel_err <= 1e-12);
    CHECK(rep.steps_checked == 1);
    CHECK(rep.skipped == 0);

    const Trajectory chain = differentiate_many(hermite_roots(20), 1, EvolveConfig{});
    const ConservationReport rep20 = conservation_report(chain);
    CHECK(rep20.mean_drift <= 1e-12);

    // ending at a single root: identity skipped, mean still checked
    const Trajectory collapse =
        differentiate_many(RootSet({0.0, 1.0, 2.0}), 2, []() {
            EvolveConfig c;
            c.snapshot_stride = 1;
            return c;
        }());
    const ConservationReport repc = conservation_report(collapse);
    CHECK(repc.skipped == 1);
    CHECK(repc.steps_checked == 2);
    CHECK(repc.mean_drift <= 1e-13);
}

TEST_CASE("proposition check: pointwise zeros and the 1/n trend") {
    CHECK(proposition_check(50, 0, {0.0}).max_deviation == doctest::Approx(0.0));
    CHECK(proposition_check(50, 1, {0.0}).max_deviation <= 1e-14);

    std::vector<double> grid;
    for (int i = -40; i <= 40; ++i) grid.push_back(0.05 * i);

    const double dev100 = proposition_check(100, 3, grid).max_deviation;
    const double dev1000 = proposition_check(1000, 3, grid).max_deviation;
    const double ratio = dev1000 / dev100;
    CHECK(ratio > 0.05);
    CHECK(ratio < 0.2);

    CHECK_THROWS_AS(proposition_check(9, 1, {3.5}), std::invalid_argument);
}

TEST_CASE("evolve route and coefficient route agree") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL}) {
        const RootSet roots = sample_roots({Law::parabolic}, 150, RngStream{seed, 0});
        const int ell = 8;
        const RootSet by_engine =
            differentiate_many(roots, static_cast<int>(roots.n()) - ell, EvolveConfig{}).final;
        const RootSet by_coeffs = theorem_roots_by_coefficients(roots, ell);
        REQUIRE(by_engine.n() == by_coeffs.n());
        CHECK(oracle::max_abs_diff(by_engine.roots(), by_coeffs.roots()) <= 1e-8);
    }
}

TEST_SUITE_END();
