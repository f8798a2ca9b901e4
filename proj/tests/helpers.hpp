// Shared fixtures for the test binaries.
#pragma once

#include <string>

#include "nucav/stack.hpp"

namespace nucav::testing {

inline std::string config_path(const std::string& name) {
  return std::string(NUCAV_CONFIG_DIR) + "/" + name;
}

inline OpticalConstants mat_vacuum() { return {"vacuum", 0.0, 0.0}; }
inline OpticalConstants mat_fe() { return {"Fe", 7.3e-6, 3.3e-7}; }
inline OpticalConstants mat_pt() { return {"Pt", 1.73e-5, 2.2e-6}; }
inline OpticalConstants mat_c() { return {"C", 2.26e-6, 8.0e-10}; }

inline NuclearSpecies fe57(double abundance = 0.95) {
  NuclearSpecies s;
  s.resonance_energy_eV = 14400.0;
  s.natural_linewidth_eV = 4.7e-9;
  s.internal_conversion_alpha = 8.56;
  s.lamb_moessbauer_f = 0.796;
  s.spin_ratio = 2.0;
  s.number_density_nm3 = 84.9;
  s.abundance = abundance;
  return s;
}

// Iron slab cavity on a mirror: vacuum / Fe 14.0 / 57Fe 0.5 / Fe 14.0 / mirror
inline LayerStack mirror_cavity(double t_res = 0.5, double abundance = 0.95,
                                double total = 28.5) {
  LayerStack st;
  const double t_clad = (total - t_res) / 2.0;
  st.layers.push_back({LayerKind::SemiInfinite, mat_vacuum(), 0.0, {}});
  st.layers.push_back({LayerKind::Finite, mat_fe(), t_clad, {}});
  st.layers.push_back(
      {LayerKind::Finite, mat_fe(), t_res, fe57(abundance)});
  st.layers.push_back({LayerKind::Finite, mat_fe(), t_clad, {}});
  st.layers.push_back({LayerKind::Mirror, {}, 0.0, {}});
  return st;
}

// Thin resonant layer suspended in vacuum between transparent half spaces
// (free-space calibration geometry; the electronic index is vacuum so the
// background Green's function is the free-space one).
inline LayerStack free_space_layer(double t_res = 0.5) {
  LayerStack st;
  OpticalConstants host = mat_vacuum();
  st.layers.push_back({LayerKind::SemiInfinite, host, 0.0, {}});
  st.layers.push_back({LayerKind::Finite, host, 1.0, {}});
  st.layers.push_back({LayerKind::Finite, host, t_res, fe57()});
  st.layers.push_back({LayerKind::Finite, host, 1.0, {}});
  st.layers.push_back({LayerKind::SemiInfinite, host, 0.0, {}});
  return st;
}

}  // namespace nucav::testing
