// Benchmark: OpenMP-parallel sweep kernels against the serial reference
// implementations. Each kernel is run both ways; results must be
// bit-identical (the parallel path only distributes loop indices), and the
// wall-clock times and speedup are reported.
#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "nucav/fewmode.hpp"
#include "nucav/scheme.hpp"
#include "nucav/sweep.hpp"

using namespace nucav;

namespace {

NuclearSpecies fe57() {
  NuclearSpecies s;
  s.resonance_energy_eV = 14400.0;
  s.natural_linewidth_eV = 4.7e-9;
  s.internal_conversion_alpha = 8.56;
  s.lamb_moessbauer_f = 0.796;
  s.spin_ratio = 2.0;
  s.number_density_nm3 = 84.9;
  s.abundance = 0.95;
  return s;
}

LayerStack mirror_cavity() {
  OpticalConstants fe{"Fe", 7.3e-6, 3.3e-7}, vac{"vacuum", 0.0, 0.0};
  LayerStack st;
  st.layers.push_back({LayerKind::SemiInfinite, vac, 0.0, {}});
  st.layers.push_back({LayerKind::Finite, fe, 14.0, {}});
  st.layers.push_back({LayerKind::Finite, fe, 0.5, fe57()});
  st.layers.push_back({LayerKind::Finite, fe, 14.0, {}});
  st.layers.push_back({LayerKind::Mirror, {}, 0.0, {}});
  return st;
}

template <typename F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

int mismatches = 0;

void report(const char* name, double ts, double tp, bool identical) {
  std::printf("%-34s serial %8.3f s   parallel %8.3f s   speedup %5.2fx   %s\n",
              name, ts, tp, ts / tp, identical ? "identical" : "MISMATCH");
  if (!identical) ++mismatches;
}

}  // namespace

int main() {
  const LayerStack st = mirror_cavity();
  std::printf("threads: %d\n", max_threads());

  {
    const Grid energies{13400.0, 15400.0, 160};
    const Grid angles{1e-3, 10e-3, 400};
    std::vector<cd> a, b;
    const double tp = timed([&] {
      a = energy_angle_map(st, energies, angles, true);
    });
    const double ts = timed([&] {
      b = energy_angle_map(st, energies, angles, false);
    });
    report("multilayer energy-angle map", ts, tp, a == b);
  }

  {
    const Grid dets{-200.0, 200.0, 40000};
    const auto setup = fewmode_setup(st, FewModeBasis::first(30, 0.0),
                                     14400.0, 4.0954e-3);
    std::vector<cd> a, b;
    const double tp = timed([&] {
      a = scattering_with_nuclei(setup.couplings, setup.g, setup.species,
                                 dets, true, true);
    });
    const double ts = timed([&] {
      b = scattering_with_nuclei(setup.couplings, setup.g, setup.species,
                                 dets, true, false);
    });
    report("few-mode nuclear spectrum", ts, tp, a == b);
  }

  {
    LayerStack s2 = st;
    s2.partition_counts[2] = 8;
    const LevelScheme scheme = build_level_scheme(s2, 14400.0, 4.0954e-3);
    const Grid dets{-200.0, 200.0, 200000};
    std::vector<cd> a, b;
    const double tp = timed([&] { a = reconstruct_reflection(scheme, dets, true); });
    const double ts = timed([&] { b = reconstruct_reflection(scheme, dets, false); });
    report("level-scheme reconstruction", ts, tp, a == b);
  }

  return mismatches;
}
