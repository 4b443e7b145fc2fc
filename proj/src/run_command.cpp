#include "rootflow/run_command.hpp"

#include "rootflow/evolve.hpp"
#include "rootflow/histogram.hpp"
#include "rootflow/numeric.hpp"
#include "rootflow/parallel.hpp"
#include "rootflow/poly_core.hpp"
#include "rootflow/projections.hpp"
#include "rootflow/report_io.hpp"
#include "rootflow/sampling.hpp"
#include "rootflow/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <stdexcept>

namespace rootflow {

namespace {

namespace fs = std::filesystem;

double elapsed_seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

EvolveConfig evolve_config(const RunConfig& cfg) {
    if (!(cfg.eps > 0.0 && cfg.eps < 1.0))
        throw std::invalid_argument("--eps must be in (0, 1)");
    EvolveConfig e;
    e.epsilon = cfg.eps;
    e.snapshot_stride = cfg.stride;
    return e;
}

RootSet load_or_sample(const RunConfig& cfg) {
    if (!cfg.input_path.empty()) return RootSet::from_unsorted(read_roots_csv(cfg.input_path));
    if (cfg.n < 1) throw std::invalid_argument("--n must be >= 1");
    const DistributionSpec spec = parse_distribution(cfg.dist);
    RootSet roots = sample_roots(spec, static_cast<std::size_t>(cfg.n), RngStream{cfg.seed, 0});
    if (cfg.normalize) return normalize_affine(roots).roots;
    return roots;
}

long default_steps(const RunConfig& cfg, std::size_t n) {
    if (cfg.steps >= 0) return cfg.steps;
    return static_cast<long>(n / 2);
}

int cmd_sample(const RunConfig& cfg) {
    const RootSet roots = load_or_sample(cfg);
    const fs::path out = fs::path(cfg.out_dir) / "roots.csv";
    atomic_write_text(out, roots_csv(roots.roots()));
    double mean = roots.mean();
    CompensatedSum var;
    for (double x : roots.roots()) var.add((x - mean) * (x - mean));
    std::printf("sample dist=%s n=%zu seed=%llu mean=%.6g var=%.6g -> %s\n", cfg.dist.c_str(),
                roots.n(), static_cast<unsigned long long>(cfg.seed), mean,
                var.value() / static_cast<double>(roots.n()), out.string().c_str());
    return 0;
}

void write_snapshot_histograms(const fs::path& dir, const std::vector<Snapshot>& snapshots,
                               int bins) {
    for (const Snapshot& snap : snapshots) {
        char name[64];
        std::snprintf(name, sizeof(name), "hist_step%06d.csv", snap.derivative_count);
        atomic_write_text(dir / name, histogram_csv(histogram(snap.roots.roots(), bins)));
    }
}

int cmd_evolve(const RunConfig& cfg) {
    const RootSet roots = load_or_sample(cfg);
    const long steps = default_steps(cfg, roots.n());
    if (steps < 1 || static_cast<std::size_t>(steps) > roots.n() - 1)
        throw std::invalid_argument("--steps must be in [1, n-1]");

    const Trajectory traj = differentiate_many(roots, static_cast<int>(steps), evolve_config(cfg));
    const ConservationReport cons = conservation_report(traj);

    const fs::path dir(cfg.out_dir);
    atomic_write_text(dir / "final_roots.csv", roots_csv(traj.final.roots()));
    write_snapshot_histograms(dir, traj.snapshots, cfg.bins);
    atomic_write_text(dir / "conservation_report.json", to_json(cons).dump(2) + "\n");

    std::printf("evolve n=%zu steps=%ld final=%zu mean_drift=%.3e pairwise_rel_err=%.3e -> %s\n",
                roots.n(), steps, traj.final.n(), cons.mean_drift,
                cons.pairwise_identity_rel_err, dir.string().c_str());
    return 0;
}

int cmd_verify_theorem(const RunConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("--trials must be >= 1");
    if (cfg.ell < 1) throw std::invalid_argument("--ell must be >= 1");
    if (cfg.n <= cfg.ell) throw std::invalid_argument("--n must exceed --ell");
    if (cfg.route != "evolve" && cfg.route != "coeffs")
        throw std::invalid_argument("--route must be evolve or coeffs");
    const DistributionSpec spec = parse_distribution(cfg.dist);
    const std::size_t n = static_cast<std::size_t>(cfg.n);
    const int steps = static_cast<int>(n) - cfg.ell;
    const EvolveConfig ecfg = evolve_config(cfg);

    std::vector<HermiteFitReport> fits(cfg.trials);
    parallel_for(0, static_cast<std::size_t>(cfg.trials), 1, [&](std::size_t b, std::size_t e) {
        for (std::size_t t = b; t < e; ++t) {
            RootSet roots = sample_roots(spec, n, RngStream{cfg.seed, t});
            if (cfg.normalize) roots = normalize_affine(roots).roots;
            const RootSet final_roots = cfg.route == "coeffs"
                                            ? theorem_roots_by_coefficients(roots, cfg.ell)
                                            : differentiate_many(roots, steps, ecfg).final;
            fits[t] = hermite_fit(final_roots, n);
        }
    });

    std::string table = "gamma,rms_error\n";
    CompensatedSum gsum, gsq, rsum;
    std::vector<double> rms(cfg.trials);
    for (int t = 0; t < cfg.trials; ++t) {
        table += format_g17(fits[t].gamma) + "," + format_g17(fits[t].rms_error) + "\n";
        gsum.add(fits[t].gamma);
        rsum.add(fits[t].rms_error);
        rms[t] = fits[t].rms_error;
    }
    const double gmean = gsum.value() / cfg.trials;
    for (int t = 0; t < cfg.trials; ++t) gsq.add((fits[t].gamma - gmean) * (fits[t].gamma - gmean));
    const double gvar = gsq.value() / cfg.trials;
    std::nth_element(rms.begin(), rms.begin() + cfg.trials / 2, rms.end());
    const double rms_median = rms[cfg.trials / 2];

    const fs::path dir(cfg.out_dir);
    atomic_write_text(dir / "theorem_trials.csv", table);
    nlohmann::json report = {{"n", n},
                             {"ell", cfg.ell},
                             {"trials", cfg.trials},
                             {"route", cfg.route},
                             {"gamma_mean", gmean},
                             {"gamma_variance", gvar},
                             {"rms_mean", rsum.value() / cfg.trials},
                             {"rms_median", rms_median}};
    atomic_write_text(dir / "theorem_report.json", report.dump(2) + "\n");
    std::printf(
        "verify theorem dist=%s n=%zu ell=%d trials=%d route=%s gamma_mean=%.4f gamma_var=%.4f "
        "rms_median=%.4g -> %s\n",
        cfg.dist.c_str(), n, cfg.ell, cfg.trials, cfg.route.c_str(), gmean, gvar, rms_median,
        dir.string().c_str());
    return 0;
}

int cmd_verify_lemma(const RunConfig& cfg) {
    std::vector<std::size_t> grid;
    for (long v : cfg.n_grid) {
        if (v < cfg.m) throw std::invalid_argument("--n values must be >= m");
        grid.push_back(static_cast<std::size_t>(v));
    }
    if (grid.empty()) grid = {100, 400, 1600};
    const DistributionSpec spec = parse_distribution(cfg.dist);
    const std::vector<LemmaReport> reports =
        lemma_sweep(spec, cfg.m, grid, cfg.trials, RngStream{cfg.seed, 0});

    nlohmann::json arr = nlohmann::json::array();
    for (const LemmaReport& r : reports) arr.push_back(to_json(r));
    const fs::path out = fs::path(cfg.out_dir) / "lemma_report.json";
    atomic_write_text(out, arr.dump(2) + "\n");

    std::string ratios;
    for (const LemmaReport& r : reports) {
        char buf[48];
        std::snprintf(buf, sizeof(buf), " %zu:%.4g", r.n, r.normalized_ratio);
        ratios += buf;
    }
    std::printf("verify lemma dist=%s m=%d trials=%d ratios%s -> %s\n", cfg.dist.c_str(), cfg.m,
                cfg.trials, ratios.c_str(), out.string().c_str());
    return 0;
}

int cmd_verify_conservation(const RunConfig& cfg) {
    const RootSet roots = load_or_sample(cfg);
    const long steps = default_steps(cfg, roots.n());
    if (steps < 1 || static_cast<std::size_t>(steps) > roots.n() - 1)
        throw std::invalid_argument("--steps must be in [1, n-1]");
    EvolveConfig ecfg = evolve_config(cfg);
    if (ecfg.snapshot_stride == 0) ecfg.snapshot_stride = 1; // check every step
    const Trajectory traj = differentiate_many(roots, static_cast<int>(steps), ecfg);
    const ConservationReport report = conservation_report(traj);
    const fs::path out = fs::path(cfg.out_dir) / "conservation_report.json";
    atomic_write_text(out, to_json(report).dump(2) + "\n");
    std::printf(
        "verify conservation n=%zu steps=%ld mean_drift=%.3e pairwise_rel_err=%.3e -> %s\n",
        roots.n(), steps, report.mean_drift, report.pairwise_identity_rel_err,
        out.string().c_str());
    return 0;
}

int cmd_verify_proposition(const RunConfig& cfg) {
    if (cfg.n < 1) throw std::invalid_argument("--n must be >= 1");
    std::vector<double> grid;
    for (int i = -40; i <= 40; ++i) grid.push_back(0.05 * i);
    const PropositionReport report =
        proposition_check(static_cast<std::size_t>(cfg.n), cfg.ell, grid);
    const fs::path out = fs::path(cfg.out_dir) / "proposition_report.json";
    atomic_write_text(out, to_json(report).dump(2) + "\n");
    std::printf("verify proposition n=%zu ell=%d max_deviation=%.6e -> %s\n", report.n,
                report.ell, report.max_deviation, out.string().c_str());
    return 0;
}

int cmd_verify_hermite_chain(const RunConfig& cfg) {
    if (cfg.n < 2 || cfg.n % 2 != 0)
        throw std::invalid_argument("hermite-chain: --n must be even and >= 2");
    const int n = static_cast<int>(cfg.n);
    const int ell = n / 2;
    const auto t0 = std::chrono::steady_clock::now();
    const RootSet start = hermite_roots(n);
    const Trajectory traj = differentiate_many(start, n - ell, evolve_config(cfg));
    const RootSet target = hermite_roots(ell);
    double max_err = 0.0;
    for (std::size_t i = 0; i < target.n(); ++i)
        max_err = std::max(max_err, std::abs(traj.final[i] - target[i]));
    const double seconds = elapsed_seconds(t0);

    nlohmann::json report = {
        {"n", n}, {"ell", ell}, {"max_root_error", max_err}, {"seconds", seconds}};
    const fs::path out = fs::path(cfg.out_dir) / "hermite_chain_report.json";
    atomic_write_text(out, report.dump(2) + "\n");
    std::printf("verify hermite-chain n=%d ell=%d max_root_error=%.6e seconds=%.2f -> %s\n", n,
                ell, max_err, seconds, out.string().c_str());
    return 0;
}

int cmd_project(const RunConfig& cfg) {
    if (cfg.mode != "deterministic" && cfg.mode != "random" && cfg.mode != "both")
        throw std::invalid_argument("--mode must be deterministic, random, or both");
    const RootSet eigs = load_or_sample(cfg);
    const long steps = default_steps(cfg, eigs.n());
    if (steps < 1 || static_cast<std::size_t>(steps) > eigs.n() - 1)
        throw std::invalid_argument("--steps must be in [1, n-1]");
    const EvolveConfig ecfg = evolve_config(cfg);
    const fs::path dir(cfg.out_dir);

    std::vector<std::pair<std::string, ProjectionMode>> runs;
    if (cfg.mode == "deterministic" || cfg.mode == "both")
        runs.emplace_back("deterministic", ProjectionMode::deterministic);
    if (cfg.mode == "random" || cfg.mode == "both")
        runs.emplace_back("random", ProjectionMode::random);

    std::vector<SpectrumTrajectory> trajs;
    for (const auto& [name, mode] : runs) {
        trajs.push_back(
            iterate_projections(eigs, static_cast<int>(steps), mode, RngStream{cfg.seed, 1}, ecfg));
        const SpectrumTrajectory& traj = trajs.back();
        atomic_write_text(dir / ("spectrum_" + name + ".csv"), roots_csv(traj.final.roots()));
        atomic_write_text(dir / ("spectrum_" + name + "_hist.csv"),
                          histogram_csv(histogram(traj.final.roots(), cfg.bins)));
    }

    if (cfg.mode == "both") {
        // KS distance between the two final empirical spectra
        const std::vector<double>& a = trajs[0].final.roots();
        const std::vector<double>& b = trajs[1].final.roots();
        double ks = 0.0;
        {
            std::size_t i = 0, j = 0;
            const double na = static_cast<double>(a.size());
            const double nb = static_cast<double>(b.size());
            while (i < a.size() && j < b.size()) {
                if (a[i] <= b[j])
                    ++i;
                else
                    ++j;
                ks = std::max(ks, std::abs(i / na - j / nb));
            }
        }
        nlohmann::json report = {{"n", eigs.n()}, {"steps", steps}, {"ks_distance", ks}};
        atomic_write_text(dir / "projection_report.json", report.dump(2) + "\n");
        std::printf("project n=%zu steps=%ld modes=both ks_distance=%.4f -> %s\n", eigs.n(),
                    steps, ks, dir.string().c_str());
    } else {
        std::printf("project n=%zu steps=%ld mode=%s final=%zu -> %s\n", eigs.n(), steps,
                    cfg.mode.c_str(), trajs[0].final.n(), dir.string().c_str());
    }
    return 0;
}

int cmd_hist(const RunConfig& cfg) {
    if (cfg.input_path.empty()) throw std::invalid_argument("hist: --input is required");
    const std::vector<double> values = read_roots_csv(cfg.input_path);
    const Histogram h = histogram(values, cfg.bins);
    const double distance = semicircle_distance(values);
    const fs::path dir(cfg.out_dir);
    atomic_write_text(dir / "hist.csv", histogram_csv(h));
    nlohmann::json summary = {
        {"total", h.total}, {"bins", h.counts.size()}, {"semicircle_distance", distance}};
    atomic_write_text(dir / "hist_summary.json", summary.dump(2) + "\n");
    std::printf("hist input=%s total=%ld bins=%zu semicircle_distance=%.4f -> %s\n",
                cfg.input_path.c_str(), h.total, h.counts.size(), distance, dir.string().c_str());
    return 0;
}

int dispatch(const RunConfig& cfg) {
    if (cfg.command == "sample") return cmd_sample(cfg);
    if (cfg.command == "evolve") return cmd_evolve(cfg);
    if (cfg.command == "project") return cmd_project(cfg);
    if (cfg.command == "hist") return cmd_hist(cfg);
    if (cfg.command == "verify") {
        if (cfg.verify_kind == "theorem") return cmd_verify_theorem(cfg);
        if (cfg.verify_kind == "lemma") return cmd_verify_lemma(cfg);
        if (cfg.verify_kind == "conservation") return cmd_verify_conservation(cfg);
        if (cfg.verify_kind == "proposition") return cmd_verify_proposition(cfg);
        if (cfg.verify_kind == "hermite-chain") return cmd_verify_hermite_chain(cfg);
        throw std::invalid_argument("unknown verify kind: " + cfg.verify_kind);
    }
    throw std::invalid_argument("unknown command: " + cfg.command);
}

} // namespace

int run_command(const RunConfig& cfg) {
    try {
        return dispatch(cfg);
    } catch (const NumericalError& err) {
        std::fprintf(stderr, "numerical failure: %s\n", err.what());
        return 1;
    } catch (const std::domain_error& err) {
        std::fprintf(stderr, "numerical failure: %s\n", err.what());
        return 1;
    } catch (const std::invalid_argument& err) {
        std::fprintf(stderr, "usage error: %s\n", err.what());
        return 2;
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 1;
    }
}

} // namespace rootflow
