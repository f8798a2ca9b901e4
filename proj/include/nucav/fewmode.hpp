// Ab initio few-mode input-output solver for the analytically solvable
// mirror-substrate cavity: Dirichlet sine basis, closed-form system-bath
// couplings and propagator, background scattering scalar, nuclear scattering
// via the Woodbury separation, effective level scheme and the thick-layer
// continuum limit.
//
// Closed forms (L = cavity thickness, theta = grazing angle, omega = k0
// sin(theta), beta = omega L, n_eff = sqrt(n^2 - cos^2 theta)/sin(theta),
// Vt = (1 - n_eff^2) omega^2 / 2, alpha = sqrt(beta^2 - 2 Vt L^2),
// A = alpha cot(alpha), s = sum_{lam in basis} 2 lam^2 pi^2/(alpha^2 -
// lam^2 pi^2), omega_lam = sqrt(pi^2 lam^2/L^2 + 2 Vt), v_lam =
// lam (-1)^lam, dd = beta^2/L^2 - omega_lam^2):
//
//   W_lam    = (sqrt(pi beta)/L) e^{-i beta} v_lam / [(A - s - i beta) sqrt(omega_lam)]
//   Wdag_lam = (sqrt(pi beta)/L) e^{+i beta} v_lam / [(A - s + i beta) sqrt(omega_lam)]
//   D        = diag(dd/2 omega_lam)
//              + (pi^2/L^2)/(A - s - i beta) outer(v/sqrt(omega), v/sqrt(omega))
//   Dinv     = diag(2 omega_lam/dd) - (pi^2/L^2)/(A - i beta) outer(u, u),
//              u = 2 v sqrt(omega)/dd
//   S_bg     = e^{-2 i beta} [A(A-s) + beta^2 + i beta s] /
//              [(A - i beta)(A - s - i beta)]
//
// The empty-cavity amplitude S_bg (1 - 2 pi i Wdag Dinv W) equals the
// multilayer reflection of the slab-on-mirror cavity exactly for ANY basis
// choice (tested to 1e-10). The non-conjugation rule applies throughout:
// Wdag, gdag are computed from their own closed forms (quantities derived
// from the complex refractive index are never conjugated); elementwise
// gdag = -g.
//
// Adiabatic freezing: all cavity quantities entering nuclear spectra are
// evaluated once at the nuclear resonance energy (the single freezing point
// in this code path); empty-cavity quantities follow the probe energy.
#pragma once

#include <Eigen/Dense>

#include "nucav/stack.hpp"
#include "nucav/sweep.hpp"

namespace nucav {

struct FewModeBasis {
  std::vector<int> modes;  // distinct positive integers, sorted
  double L = 0.0;          // cavity thickness, nm

  static FewModeBasis first(int n, double L);
  // chi_lam(z) = sqrt(2/L) sin(pi lam z / L)
  double mode_function(int lam, double z) const;
};

struct FewModeCouplings {
  FewModeBasis basis;
  double energy_eV = 0.0, angle_rad = 0.0;
  cd n_eff, omega, beta, V, alpha, s;
  Eigen::VectorXcd om_l;
  Eigen::VectorXcd W, Wdag;
  Eigen::MatrixXcd D, Dinv;
  cd S_bg;
  cd S_io_empty;  // 1 - 2 pi i Wdag Dinv W

  cd empty_cavity_amplitude() const { return S_bg * S_io_empty; }
};

// (n_eff, beta) of the exact 3D -> 1D reduction.
std::pair<cd, cd> map_3d_to_1d(cd n, double energy_eV, double angle_rad,
                               double L);

// Closed-form couplings; throws on an accidental s-sum pole
// (alpha^2 == lam^2 pi^2 within 1e-9 relative).
FewModeCouplings build_couplings(const FewModeBasis& basis, cd n,
                                 double energy_eV, double angle_rad);

// Collective coupling of a thin ensemble at depth z_l, thickness t_l:
//   g_lam = -i d k0 sqrt(f rho ab t_l / (2 omega_lam)) chi_lam(z_l)
Eigen::VectorXcd nucleus_coupling(const FewModeCouplings& c,
                                  const NuclearSpecies& species, double z_l,
                                  double t_l);

// Mode-overlap integral of a centered layer of thickness t_res:
//   Xi(lam,lam') = (2/L) int sin(pi lam z/L) sin(pi lam' z/L) dz
// over [(L-t)/2, (L+t)/2], closed form.
Eigen::MatrixXcd thick_layer_xi(const FewModeBasis& basis, double t_res);

// Nuclear spectrum S(Delta) for thin ensembles (rows of g). When `woodbury`
// is set the separated identity
//   S = S_bg [S_io_empty + 2 pi i Wdag Dinv gdag (Lam^-1 + g Dinv gdag)^-1 g Dinv W]
// is used; otherwise the interacting propagator D - gdag g / den is
// inverted directly (den = gamma_nm (Delta + i/2)).
std::vector<cd> scattering_with_nuclei(const FewModeCouplings& c,
                                       const Eigen::MatrixXcd& g,
                                       const NuclearSpecies& species,
                                       const Grid& detunings,
                                       bool woodbury = true,
                                       bool parallel = true);

// Thick-layer continuum limit: D_int = D - prefactor(Delta) * Xi with
// prefactor = d^2 k0^2 f rho ab / (2 sqrt(omega_lam omega_lam') den).
std::vector<cd> scattering_thick_layer(const FewModeCouplings& c,
                                       const NuclearSpecies& species,
                                       double t_res, const Grid& detunings,
                                       bool parallel = true);

// Single-mode single-ensemble closed form (scalar Woodbury special case).
cd single_mode_fano_amplitude(const FewModeCouplings& c, cd g,
                              const NuclearSpecies& species,
                              double detuning_gamma);

struct EffectiveSchemeFM {
  Eigen::VectorXcd Omega;   // 2 pi g Dinv W
  Eigen::MatrixXcd Geff;    // g Dinv gdag / gamma_nm   [gamma units]
  cd F;                     // Geff(0,0) = Delta_LS - i Gamma_S/2
  cd F_R;                   // -2 pi i (Wdag Dinv gdag)(g Dinv W) / gamma_nm
};
EffectiveSchemeFM effective_scheme_fm(const FewModeCouplings& c,
                                      const Eigen::MatrixXcd& g,
                                      const NuclearSpecies& species);

// Phenomenological resonance trajectory omega_nuc sin(theta0)/sin(theta).
double pheno_resonance_trajectory(double theta, double theta0,
                                  double omega_nuc_eV);

// Few-mode route applied to a full stack: requires vacuum top, uniform
// electronic interior material and a mirror substrate. Returns couplings at
// the given probe energy plus the thin-ensemble coupling rows for the
// stack's sub-ensembles.
// (interior index, cavity thickness) of a stack usable by the few-mode
// route; throws if the stack has no mirror, no vacuum top or a non-uniform
// interior material.
std::pair<cd, double> fewmode_interior(const LayerStack& stack);

struct FewModeSetup {
  FewModeCouplings couplings;
  Eigen::MatrixXcd g;  // one row per sub-ensemble
  NuclearSpecies species;
};
FewModeSetup fewmode_setup(const LayerStack& stack, const FewModeBasis& basis,
                           double energy_eV, double angle_rad);

}  // namespace nucav
