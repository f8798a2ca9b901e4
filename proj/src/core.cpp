#include "nucav/core.hpp"

#include <cmath>

namespace nucav {

double effective_dipole_moment_sq(const NuclearSpecies& s) {
  const double k0 = wave_number(s.resonance_energy_eV);
  const double gamma_nm = s.natural_linewidth_eV / HBARC_EV_NM;
  return (2.0 * pi * gamma_nm / (k0 * k0 * k0)) * s.spin_ratio /
         (2.0 * (1.0 + s.internal_conversion_alpha));
}

cd resonant_refractive_index(const NuclearSpecies& s, double detuning_gamma,
                             const OpticalConstants& base) {
  const double k0 = wave_number(s.resonance_energy_eV);
  const double amp = 2.0 * pi * (s.effective_density() / (k0 * k0 * k0)) *
                     s.spin_ratio / (2.0 * (1.0 + s.internal_conversion_alpha));
  return base.index() - amp / cd(2.0 * detuning_gamma, 1.0);
}

}  // namespace nucav
