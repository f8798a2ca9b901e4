// Unit conventions, physical constants, material optical data and nuclear
// resonance parameters.
//
// Internal unit system: natural units hbar = c = eps0 = 1. Energies are eV,
// lengths are nm, converted via hbar*c = 197.3269804 eV nm. A photon of
// energy E has wave number k0 = E/(hbar c) in nm^-1.
#pragma once

#include <complex>
#include <numbers>
#include <string>

namespace nucav {

using cd = std::complex<double>;
using std::numbers::pi;

inline constexpr double HBARC_EV_NM = 197.3269804;  // eV nm

// Wave number k0 = E/(hbar c) in nm^-1 for photon energy E in eV.
inline double wave_number(double energy_eV) { return energy_eV / HBARC_EV_NM; }

// Electronic optical constants of a material at the working energy;
// refractive index n = 1 - delta + i beta_abs.
struct OpticalConstants {
  std::string name;
  double delta = 0.0;
  double beta_abs = 0.0;

  cd index() const { return cd(1.0 - delta, beta_abs); }
};

// Parameters of a narrow nuclear resonance (e.g. the 14.4 keV Moessbauer
// transition of 57Fe) plus the doping of the host layer.
struct NuclearSpecies {
  double resonance_energy_eV = 0.0;     // omega_nuc
  double natural_linewidth_eV = 0.0;    // gamma (total: radiative + conversion)
  double internal_conversion_alpha = 0.0;
  double lamb_moessbauer_f = 0.0;       // recoil-free fraction, in [0,1]
  double spin_ratio = 0.0;              // (2 Ie + 1)/(2 Ig + 1)
  double number_density_nm3 = 0.0;      // host atom number density rho_N
  double abundance = 1.0;               // resonant isotope fraction, in [0,1]

  bool valid() const {
    return resonance_energy_eV > 0 && natural_linewidth_eV > 0 &&
           lamb_moessbauer_f >= 0 && lamb_moessbauer_f <= 1 &&
           spin_ratio > 0 && number_density_nm3 >= 0 && abundance >= 0 &&
           abundance <= 1;
  }

  // Natural linewidth expressed as a wave number (nm^-1).
  double gamma_nm() const { return natural_linewidth_eV / HBARC_EV_NM; }

  // Effective resonant number density: rho_N * abundance * f_LM (nm^-3).
  double effective_density() const {
    return number_density_nm3 * abundance * lamb_moessbauer_f;
  }
};

// Squared effective dipole matrix element of the nuclear transition in
// natural units (nm^2):
//   |d|^2 = (2 pi gamma / k0^3) * spin_ratio / (2 (1 + alpha)).
double effective_dipole_moment_sq(const NuclearSpecies& s);

// Refractive index of a resonantly doped layer at detuning Delta (units of
// the natural linewidth gamma):
//   n(Delta) = n_base
//     - 2 pi (rho_N ab f_LM / k0^3) * spin_ratio/(2(1+alpha)) * 1/(2 Delta + i)
cd resonant_refractive_index(const NuclearSpecies& s, double detuning_gamma,
                             const OpticalConstants& base);

}  // namespace nucav
