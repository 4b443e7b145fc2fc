// rootflow: track the roots of a real-rooted polynomial under repeated
// differentiation and check the conservation / Hermite-limit structure of
// the dynamics. Emits CSV/JSON data only; plotting is up to the caller.

#include "rootflow/run_command.hpp"

#include <CLI11.hpp>

#include <cstdio>

namespace {

void add_common(CLI::App* cmd, rootflow::RunConfig& cfg) {
    cmd->add_option("--seed", cfg.seed, "RNG seed");
    cmd->add_option("--out", cfg.out_dir, "output directory");
}

void add_sampling(CLI::App* cmd, rootflow::RunConfig& cfg) {
    cmd->add_option("--dist", cfg.dist, "uniform|gaussian|parabolic|gap|semicircle");
    cmd->add_option("--n", cfg.n, "number of roots");
    cmd->add_flag("--normalize", cfg.normalize, "recenter to mean 0, rescale to variance 1");
}

void add_engine(CLI::App* cmd, rootflow::RunConfig& cfg) {
    cmd->add_option("--eps", cfg.eps, "fast-sum accuracy");
    cmd->add_option("--stride", cfg.stride, "snapshot stride (0 = steps/10)");
    cmd->add_option("--bins", cfg.bins, "histogram bins");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"root dynamics of repeated differentiation"};
    app.require_subcommand(1);

    rootflow::RunConfig cfg;

    CLI::App* sample = app.add_subcommand("sample", "draw i.i.d. roots and write roots.csv");
    add_sampling(sample, cfg);
    add_common(sample, cfg);

    CLI::App* evolve = app.add_subcommand("evolve", "apply repeated differentiation");
    add_sampling(evolve, cfg);
    add_engine(evolve, cfg);
    add_common(evolve, cfg);
    evolve->add_option("--steps", cfg.steps, "number of differentiations (default n/2)");
    evolve->add_option("--input", cfg.input_path, "roots CSV instead of sampling");

    CLI::App* verify = app.add_subcommand("verify", "check a claim of the root dynamics");
    verify->require_subcommand(1);

    CLI::App* theorem = verify->add_subcommand("theorem", "Hermite fit of scaled final roots");
    add_sampling(theorem, cfg);
    add_engine(theorem, cfg);
    add_common(theorem, cfg);
    theorem->add_option("--ell", cfg.ell, "remaining roots l");
    theorem->add_option("--trials", cfg.trials, "Monte Carlo trials");
    theorem->add_option("--route", cfg.route, "evolve|coeffs");

    CLI::App* lemma = verify->add_subcommand("lemma", "concentration of e_m");
    lemma->add_option("--dist", cfg.dist, "uniform|gaussian|parabolic|gap|semicircle");
    lemma->add_option("--m", cfg.m, "symmetric polynomial order");
    lemma->add_option("--n", cfg.n_grid, "sample sizes (repeatable)");
    lemma->add_option("--trials", cfg.trials, "Monte Carlo trials per cell");
    add_common(lemma, cfg);

    CLI::App* conservation = verify->add_subcommand("conservation", "mean/pairwise invariants");
    add_sampling(conservation, cfg);
    add_engine(conservation, cfg);
    add_common(conservation, cfg);
    conservation->add_option("--steps", cfg.steps, "number of differentiations (default n/2)");
    conservation->add_option("--input", cfg.input_path, "roots CSV instead of sampling");

    CLI::App* proposition = verify->add_subcommand("proposition", "(x^2-1)^n derivative limit");
    proposition->add_option("--n", cfg.n, "power n");
    proposition->add_option("--ell", cfg.ell, "derivative order");
    add_common(proposition, cfg);

    CLI::App* chain = verify->add_subcommand("hermite-chain", "He_n -> He_{n/2} benchmark");
    chain->add_option("--n", cfg.n, "starting Hermite degree (even)");
    chain->add_option("--eps", cfg.eps, "fast-sum accuracy");
    add_common(chain, cfg);

    CLI::App* project = app.add_subcommand("project", "iterated rank-one spectrum projections");
    add_sampling(project, cfg);
    add_engine(project, cfg);
    add_common(project, cfg);
    project->add_option("--steps", cfg.steps, "number of projections (default n/2)");
    project->add_option("--mode", cfg.mode, "deterministic|random|both");
    project->add_option("--input", cfg.input_path, "eigenvalue CSV instead of sampling");

    CLI::App* hist = app.add_subcommand("hist", "histogram + semicircle distance of a CSV");
    hist->add_option("--input", cfg.input_path, "values CSV")->required();
    hist->add_option("--bins", cfg.bins, "histogram bins");
    add_common(hist, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    for (CLI::App* cmd : {sample, evolve, project, hist})
        if (cmd->parsed()) cfg.command = cmd->get_name();
    if (verify->parsed()) {
        cfg.command = "verify";
        for (CLI::App* kind : {theorem, lemma, conservation, proposition, chain})
            if (kind->parsed()) cfg.verify_kind = kind->get_name();
    }
    if (proposition->parsed() && !proposition->count("--ell")) cfg.ell = 3;

    return rootflow::run_command(cfg);
}
