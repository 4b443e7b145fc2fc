#include "rootflow/histogram.hpp"
#include "rootflow/report_io.hpp"
#include "rootflow/run_command.hpp"

#include "oracles.hpp"
#include "rootflow/poly_core.hpp"
#include "rootflow/sampling.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

using namespace rootflow;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_SUITE_BEGIN("reporting");

TEST_CASE("histogram basics") {
    const Histogram single = histogram({0.0}, 1);
    REQUIRE(single.counts.size() == 1);
    CHECK(single.counts[0] == 1);
    CHECK(single.total == 1);

    const Histogram pairs = histogram({0.0, 1.0, 2.0, 3.0}, 2);
    REQUIRE(pairs.counts.size() == 2);
    CHECK(pairs.counts[0] == 2);
    CHECK(pairs.counts[1] == 2);

    CHECK_THROWS_AS(histogram({}, 4), std::invalid_argument);
    CHECK_THROWS_AS(histogram({1.0}, 0), std::invalid_argument);
}

TEST_CASE("histogram conserves counts and covers the closed range") {
    oracle::TestRng rng(9);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<double> values;
        const int n = 100 + static_cast<int>(rng.uniform(0.0, 4000.0));
        for (int i = 0; i < n; ++i) values.push_back(rng.uniform(-5.0, 5.0));
        const Histogram h = histogram(values, 1 + static_cast<int>(rng.uniform(0.0, 60.0)));
        long sum = 0;
        for (long c : h.counts) sum += c;
        CHECK(sum == h.total);
        CHECK(h.total == n);
        for (std::size_t b = 1; b < h.bin_edges.size(); ++b)
            CHECK(h.bin_edges[b] > h.bin_edges[b - 1]);
    }
}

TEST_CASE("semicircle bin masses match the analytic density") {
    const std::size_t n = 100000;
    const RootSet sample = sample_roots({Law::semicircle_ref}, n, RngStream{21, 0});
    const Histogram h = histogram(sample.roots(), 50);
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
        const double mass = semicircle_cdf(2.0, h.bin_edges[b + 1]) -
                            semicircle_cdf(2.0, h.bin_edges[b]);
        const double observed = static_cast<double>(h.counts[b]) / static_cast<double>(n);
        const double clt = std::sqrt(mass * (1.0 - mass) / static_cast<double>(n));
        CHECK(std::abs(observed - mass) <= 5.0 * clt + 1e-12);
    }
}

TEST_CASE("semicircle distance separates shapes") {
    // Hermite roots approach the semicircle profile
    const RootSet he = hermite_roots(200);
    CHECK(semicircle_distance(he.roots()) <= 0.05);

    // two points are far from a semicircle
    CHECK(semicircle_distance({-1.0, 1.0}) > 0.2);

    // i.i.d. semicircle draws converge
    const RootSet sample = sample_roots({Law::semicircle_ref}, 100000, RngStream{22, 0});
    CHECK(semicircle_distance(sample.roots()) <= 0.01);

    CHECK_THROWS(semicircle_distance({2.0, 2.0, 2.0}));
}

TEST_CASE("atomic write and roots CSV round trip") {
    TempDir dir("rootflow_io_test");
    const fs::path path = dir.path / "roots.csv";
    const std::vector<double> values{-1.25, 0.0, 0.3333333333333333, 2e-15};
    atomic_write_text(path, roots_csv(values));
    CHECK_FALSE(fs::exists(path.string() + ".tmp"));
    const std::vector<double> back = read_roots_csv(path);
    REQUIRE(back.size() == values.size());
    for (std::size_t i = 0; i < values.size(); ++i) CHECK(back[i] == values[i]);
}

TEST_CASE("sample then evolve --input round trip") {
    TempDir dir("rootflow_cli_roundtrip");

    RunConfig sample;
    sample.command = "sample";
    sample.dist = "uniform";
    sample.n = 200;
    sample.seed = 7;
    sample.out_dir = dir.path.string();
    REQUIRE(run_command(sample) == 0);

    RunConfig evolve;
    evolve.command = "evolve";
    evolve.input_path = (dir.path / "roots.csv").string();
    evolve.steps = 50;
    evolve.out_dir = (dir.path / "evolved").string();
    REQUIRE(run_command(evolve) == 0);
    CHECK(fs::exists(dir.path / "evolved" / "final_roots.csv"));
    CHECK(fs::exists(dir.path / "evolved" / "conservation_report.json"));
    CHECK(read_roots_csv(dir.path / "evolved" / "final_roots.csv").size() == 150);
}

TEST_CASE("identical configs produce byte-identical outputs") {
    TempDir a("rootflow_det_a");
    TempDir b("rootflow_det_b");
    for (const TempDir* dir : {&a, &b}) {
        RunConfig cfg;
        cfg.command = "evolve";
        cfg.dist = "parabolic";
        cfg.n = 300;
        cfg.steps = 120;
        cfg.seed = 99;
        cfg.out_dir = dir->path.string();
        REQUIRE(run_command(cfg) == 0);
    }
    CHECK(slurp(a.path / "final_roots.csv") == slurp(b.path / "final_roots.csv"));
    CHECK(slurp(a.path / "conservation_report.json") == slurp(b.path / "conservation_report.json"));
    CHECK(slurp(a.path / "hist_step000012.csv") == slurp(b.path / "hist_step000012.csv"));
}

TEST_CASE("exit codes distinguish usage and numerical failures") {
    TempDir dir("rootflow_exit_codes");

    RunConfig bad;
    bad.command = "sample";
    bad.dist = "cauchy"; // unsupported law
    bad.out_dir = dir.path.string();
    CHECK(run_command(bad) == 2);

    RunConfig badsteps;
    badsteps.command = "evolve";
    badsteps.dist = "uniform";
    badsteps.n = 10;
    badsteps.steps = 10; // > n-1
    badsteps.out_dir = dir.path.string();
    CHECK(run_command(badsteps) == 2);

    // constant input: histogram works but the semicircle comparison is
    // degenerate -> numerical failure
    const fs::path flat = dir.path / "flat.csv";
    atomic_write_text(flat, "root\n1\n1\n1\n1\n");
    RunConfig hist;
    hist.command = "hist";
    hist.input_path = flat.string();
    hist.out_dir = dir.path.string();
    CHECK(run_command(hist) == 1);

    RunConfig unknown;
    unknown.command = "frobnicate";
    CHECK(run_command(unknown) == 2);
}

TEST_CASE("verify subcommands emit reports") {
    TempDir dir("rootflow_verify_cli");

    RunConfig prop;
    prop.command = "verify";
    prop.verify_kind = "proposition";
    prop.n = 200;
    prop.ell = 2;
    prop.out_dir = dir.path.string();
    REQUIRE(run_command(prop) == 0);
    const auto report = nlohmann::json::parse(slurp(dir.path / "proposition_report.json"));
    CHECK(report.at("ell") == 2);
    CHECK(report.at("max_deviation").get<double>() < 0.1);

    RunConfig theorem;
    theorem.command = "verify";
    theorem.verify_kind = "theorem";
    theorem.dist = "parabolic";
    theorem.n = 120;
    theorem.ell = 6;
    theorem.trials = 8;
    theorem.route = "coeffs";
    theorem.out_dir = dir.path.string();
    REQUIRE(run_command(theorem) == 0);
    CHECK(fs::exists(dir.path / "theorem_trials.csv"));
    CHECK(fs::exists(dir.path / "theorem_report.json"));
}

TEST_SUITE_END();
