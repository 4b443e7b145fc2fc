#include "rootflow/fast_cauchy.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <chrono>
#include <cmath>
#include <vector>

using namespace rootflow;

namespace {

SourceSet unit_sources(std::vector<double> xs) {
    std::vector<double> w(xs.size(), 1.0);
    return SourceSet(std::move(xs), std::move(w));
}

std::vector<double> midpoint_queries(const SourceSet& s, std::size_t stride = 1) {
    std::vector<double> q;
    for (std::size_t i = 0; i + 1 < s.n(); i += stride)
        q.push_back(0.5 * (s.positions()[i] + s.positions()[i + 1]));
    return q;
}

double now_build_eval_seconds(const SourceSet& s, double eps) {
    const auto t0 = std::chrono::steady_clock::now();
    const SumPlan plan = build_plan(s, eps);
    const std::vector<double> queries = midpoint_queries(s);
    double sink = 0.0;
    for (double r : queries) sink += eval_pair(plan, s, r).first;
    DOCTEST_CHECK(std::isfinite(sink));
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

TEST_SUITE_BEGIN("fast_cauchy");

TEST_CASE("single source and tiny sets evaluate exactly") {
    const SourceSet one = unit_sources({0.0});
    const SumPlan plan = build_plan(one, 1e-12);
    CHECK(plan.direct);
    const auto [s, ds] = eval_pair(plan, one, 2.0);
    CHECK(s == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(ds == doctest::Approx(-0.25).epsilon(1e-15));

    const SourceSet two = unit_sources({-1.0, 1.0});
    const SumPlan plan2 = build_plan(two, 1e-12);
    const auto [s2, ds2] = eval_pair(plan2, two, 0.0);
    CHECK(s2 == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(ds2 == doctest::Approx(-2.0).epsilon(1e-15));
}

TEST_CASE("argument validation") {
    const SourceSet s = unit_sources({0.0, 1.0});
    CHECK_THROWS_AS(build_plan(s, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_plan(s, 1.0), std::invalid_argument);
    const SumPlan plan = build_plan(s, 1e-10);
    CHECK_THROWS_AS(eval_pair(plan, s, 1.0), std::domain_error);
}

TEST_CASE("fast evaluation matches direct summation, n = 1000") {
    oracle::TestRng rng(41);
    const SourceSet s = unit_sources(oracle::random_distinct(rng, 1000, -1.0, 1.0));
    const SumPlan plan = build_plan(s, 1e-12);
    CHECK_FALSE(plan.direct);

    oracle::TestRng pick(17);
    for (int q = 0; q < 100; ++q) {
        const std::size_t i = static_cast<std::size_t>(pick.uniform(0.0, 998.99));
        const double t = pick.uniform(0.25, 0.75);
        const double r = s.positions()[i] + t * (s.positions()[i + 1] - s.positions()[i]);
        const auto [fs, fds] = eval_pair(plan, s, r);
        const auto [es, eds] = oracle::direct_cauchy(s.positions(), s.weights(), r);
        CHECK(std::abs(fs - es) <= 1e-9);
        CHECK(std::abs(fds - eds) <= 1e-9 * (1.0 + std::abs(eds)));
    }
}

TEST_CASE("oracle equivalence bound at n = 10^4") {
    oracle::TestRng rng(97);
    std::vector<double> xs = oracle::random_distinct(rng, 10000, -3.0, 3.0);
    std::vector<double> ws(xs.size());
    double wsum = 0.0;
    for (double& w : ws) {
        w = rng.uniform(0.5, 1.5);
        wsum += w;
    }
    const SourceSet s(xs, ws);
    const double eps = 1e-12;
    const SumPlan plan = build_plan(s, eps);

    const double panel = plan.panel_width;
    std::size_t checked = 0;
    double worst_ratio = 0.0;
    for (std::size_t i = 0; i + 1 < s.n(); i += 7) {
        const double r = 0.5 * (s.positions()[i] + s.positions()[i + 1]);
        const auto [fs, fds] = eval_pair(plan, s, r);
        const auto [es, eds] = oracle::direct_cauchy(s.positions(), s.weights(), r);
        // distance to the nearest farfield panel: one full panel past the
        // near neighbourhood boundary
        const int b = plan.panel_of(r);
        const double left_far = plan.lo + (b - 1) * panel;
        const double right_far = plan.lo + (b + 2) * panel;
        const double d_min = std::min(r - left_far, right_far - r);
        const double allowed = 10.0 * eps * wsum / std::max(d_min, 1e-12);
        CHECK(std::abs(fs - es) <= allowed);
        worst_ratio = std::max(worst_ratio, std::abs(fs - es) / allowed);
        ++checked;
    }
    CHECK(checked >= 1000);
    CHECK(worst_ratio <= 1.0);
}

TEST_CASE("derivative is negative between sources") {
    oracle::TestRng rng(5);
    const SourceSet s = unit_sources(oracle::random_distinct(rng, 2000, -2.0, 2.0));
    const SumPlan plan = build_plan(s, 1e-10);
    for (double r : midpoint_queries(s, 3)) CHECK(eval_pair(plan, s, r).second < 0.0);
}

TEST_CASE("batch evaluation is bit-identical to mapped eval_pair") {
    oracle::TestRng rng(29);
    const SourceSet s = unit_sources(oracle::random_distinct(rng, 1000, 0.0, 5.0));
    const SumPlan plan = build_plan(s, 1e-12);

    CHECK(eval_batch(plan, s, {}).empty());

    const std::vector<double> queries = midpoint_queries(s, 11);
    const auto batch = eval_batch(plan, s, queries);
    REQUIRE(batch.size() == queries.size());
    for (std::size_t i = 0; i < queries.size(); ++i) {
        const auto single = eval_pair(plan, s, queries[i]);
        CHECK(batch[i].first == single.first);
        CHECK(batch[i].second == single.second);
    }
}

TEST_CASE("translation equivariance") {
    // Sources snapped to a 2^-20 grid so that the shifts below are exactly
    // representable: the two frames then see bitwise-identical distances and
    // any deviation is the plan's own, not input rounding.
    oracle::TestRng rng(61);
    std::vector<double> xs;
    double x = -1.0;
    while (xs.size() < 500) {
        x += 0x1p-20 * (1.0 + std::floor(rng.uniform(0.0, 4000.0)));
        xs.push_back(x);
    }
    const SourceSet s = unit_sources(xs);
    const SumPlan plan = build_plan(s, 1e-12);

    for (double c : {2.0, -0.5}) {
        std::vector<double> shifted(xs);
        for (double& v : shifted) v += c;
        const SourceSet sc = unit_sources(shifted);
        const SumPlan plan_c = build_plan(sc, 1e-12);

        for (double r : midpoint_queries(s, 5)) {
            const auto [a, da] = eval_pair(plan, s, r);
            const auto [b, db] = eval_pair(plan_c, sc, r + c);
            // conditioning scale sum w_i/|r-x_i|: S itself cancels near its
            // zeros, where no summation order holds a tighter relative error
            double s_scale = 0.0, ds_scale = 0.0;
            for (std::size_t i = 0; i < s.n(); ++i) {
                const double d = std::abs(r - s.positions()[i]);
                s_scale += s.weights()[i] / d;
                ds_scale += s.weights()[i] / (d * d);
            }
            CHECK(std::abs(a - b) <= 1e-12 * s_scale);
            CHECK(std::abs(da - db) <= 1e-12 * ds_scale);
        }
    }
}

TEST_CASE("near-linear scaling of build plus full query sweep") {
    oracle::TestRng rng(83);
    std::vector<double> times;
    for (int k = 13; k <= 17; ++k) {
        const int n = 1 << k;
        const SourceSet s = unit_sources(oracle::random_distinct(rng, n, 0.0, 1.0));
        double best = 1e100;
        for (int rep = 0; rep < 3; ++rep) best = std::min(best, now_build_eval_seconds(s, 1e-12));
        times.push_back(best);
    }
    for (std::size_t i = 1; i < times.size(); ++i) CHECK(times[i] < 3.0 * times[i - 1]);
}

TEST_SUITE_END();
