#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rootflow {

// One CLI invocation, validated before execution. Commands:
//   sample | evolve | verify <theorem|lemma|conservation|proposition|hermite-chain>
//   | project | hist
struct RunConfig {
    std::string command;
    std::string verify_kind;

    std::string dist = "uniform";
    long n = 1000;
    long steps = -1; // -1: command default (n/2)
    int ell = 50;
    int m = 4;                     // lemma order
    std::vector<long> n_grid;      // lemma sweep sizes
    std::uint64_t seed = 1;
    int trials = 200;
    double eps = 1e-12;
    int bins = 50;
    int stride = 0; // 0: auto, max(1, steps/10)
    std::string input_path;
    std::string out_dir = ".";
    bool normalize = false;        // recenter/rescale samples (gap measure)
    std::string route = "evolve";  // theorem check: evolve | coeffs
    std::string mode = "deterministic"; // project: deterministic | random | both
};

// Executes the command, writes outputs atomically under out_dir, prints a
// one-line summary. Returns 0 on success, 1 on numerical failure, 2 on
// usage/argument errors.
int run_command(const RunConfig& cfg);

} // namespace rootflow
