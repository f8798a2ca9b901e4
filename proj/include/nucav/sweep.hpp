// Grid sweeps, threading helpers and deterministic file output.
//
// Every sweep writes result[i] for an independent index i; parallel and
// serial execution therefore produce identical output bit-for-bit. The
// serial path is kept as a reference implementation for testing and
// benchmarking (see bench/).
#pragma once

#include <cstdio>
#include <functional>
#include <string>
#include <vector>

namespace nucav {

// Inclusive linear grid with `count` points from start to stop.
struct Grid {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;

  double at(int i) const {
    if (count <= 1) return start;
    return start + (stop - start) * static_cast<double>(i) / (count - 1);
  }
  std::vector<double> values() const {
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i) v[i] = at(i);
    return v;
  }
};

// Thread cap: NUCAV_THREADS if set, else the OpenMP default (1 if built
// without OpenMP).
int max_threads();

// Run f(i) for i in [0, n), distributed over threads. Deterministic as long
// as f(i) only writes to slot i of preallocated storage.
void parallel_for(int n, const std::function<void(int)>& f);

// Serial reference with identical semantics.
void serial_for(int n, const std::function<void(int)>& f);

// Fixed float formatting used by every emitted file: decimal, 17 significant
// digits. Guarantees byte-identical reruns and lossless double round-trip.
std::string format17(double x);

// Write rows of doubles as CSV with the given header line.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows);
std::string csv_to_string(const std::string& header,
                          const std::vector<std::vector<double>>& rows);

}  // namespace nucav
