// Command-line surface tying the three routes together: sweeps,
// cross-method comparison reports, convergence studies, minimum detection
// and deterministic file emission.
//
//   nucav <subcommand> --config <path> [--route oracle|fewmode|green]
//         [--modes N] [--subensembles K] [--check --tol X] [--out <path>]
//
// Subcommands: rocking, map2d, spectrum, scheme, compare, converge, fano.
// Grids are (start, stop, count) inclusive; defaults: detuning +-200 gamma
// x 801 points, angle 1-10 mrad x 901 points. The env var NUCAV_THREADS
// caps parallelism. All emitted files use fixed 17-significant-digit float
// formatting; identical inputs produce byte-identical outputs.
#pragma once

#include <string>
#include <utility>
#include <vector>

namespace nucav {

// Local minima of a sampled curve (3-point test, parabolic refinement).
// Returns (x, y) pairs in ascending x order.
std::vector<std::pair<double, double>> find_minima(
    const std::vector<double>& x, const std::vector<double>& y);

// Full CLI entry point; returns the process exit code.
int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args);  // without argv[0]

}  // namespace nucav
