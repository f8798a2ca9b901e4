// Green's-function route to the effective nuclear level scheme at fixed
// parallel wave vector: inter-ensemble coupling matrix, drive vector, the
// linear frequency-space solution, spectral reconstruction at the top
// surface, and the Fano line-shape fit used as an oracle for the scheme
// parameters.
//
// Conventions (gamma denotes the natural linewidth):
//   coupling(l,l') = sqrt(NA_l NA_l') k0^2 |d|^2 G(z_l, z_l') / gamma   [gamma units]
//   shift  Delta_ll' = Re coupling,   decay gamma_ll' = 2 Im coupling
//   drive_raw(l) = sqrt(NA_l) |d| E0(z_l) / gamma
//   sigma(Delta) = -[(Delta + i/2) I + coupling]^{-1} drive_raw
//   r(Delta) = r_empty + k0^2 sum_l G(0, z_l) |d| sqrt(NA_l) sigma_l
// with NA_l the resonant area density of sub-ensemble l. The coupling
// matrix uses the empty-cavity (electronic background) Green's function at
// the nuclear resonance energy.
#pragma once

#include <Eigen/Dense>

#include "nucav/green.hpp"

namespace nucav {

struct LevelScheme {
  double energy_eV = 0.0;
  double angle_rad = 0.0;
  std::vector<SubEnsemble> ensembles;
  Eigen::MatrixXcd coupling;   // gamma units
  Eigen::VectorXcd drive_raw;  // gamma units, unnormalized
  cd r_empty;                  // empty-cavity reflection amplitude
  Eigen::VectorXcd g_top;      // k0^2 G(0,z_l) |d| sqrt(NA_l), reconstruction

  // Drive in the exported gauge: unit norm, largest-magnitude component
  // rotated real-positive (overall phase is not an observable).
  Eigen::VectorXcd normalized_drive() const;
};

// Density-scaled coupling between two sub-ensembles in gamma units.
cd curly_g(const GreenContext& ctx, const SubEnsemble& a, const SubEnsemble& b,
           double energy_eV);

LevelScheme build_level_scheme(const LayerStack& stack, double energy_eV,
                               double angle_rad);

// Lowering-operator expectation values at one detuning (gamma units).
Eigen::VectorXcd linear_response(const LevelScheme& scheme,
                                 double detuning_gamma);

cd reconstruct_reflection_point(const LevelScheme& scheme,
                                double detuning_gamma);
std::vector<cd> reconstruct_reflection(const LevelScheme& scheme,
                                       const Grid& detunings,
                                       bool parallel = true);

// ---- Fano line-shape fit -------------------------------------------------
// R(Delta) = sigma0 |q + eps|^2 / (1 + eps^2), eps = (Delta - delta1)/(gamma1/2)
struct FanoFit {
  double sigma0 = 0.0;
  cd q;
  double delta1 = 0.0;  // gamma units
  double gamma1 = 0.0;  // gamma units
  double residual = 0.0;  // RMS misfit / max |R|
  bool converged = false;
  int iterations = 0;
};

double fano_model(double sigma0, cd q, double delta1, double gamma1,
                  double detuning);
// Damped Gauss-Newton least squares; tolerance 1e-10 on relative cost
// decrease, at most 500 iterations.
FanoFit fano_fit(const std::vector<double>& detunings,
                 const std::vector<double>& reflectance);

}  // namespace nucav
