#include "nucav/oracle.hpp"

#include <cmath>

namespace nucav {

cd sqrt_im_pos(cd z) {
  cd r = std::sqrt(z);
  if (r.imag() < 0.0 || (r.imag() == 0.0 && r.real() < 0.0)) r = -r;
  return r;
}

cd beta_z(cd n, double energy_eV, double angle_rad) {
  const double k = wave_number(energy_eV);
  const double kc = k * std::cos(angle_rad);
  return sqrt_im_pos(n * n * k * k - kc * kc);
}

InterfaceCoefficients fresnel(cd ni, cd nj, double energy_eV, double angle_rad,
                              Pol pol) {
  const cd bi = beta_z(ni, energy_eV, angle_rad);
  const cd bj = beta_z(nj, energy_eV, angle_rad);
  if (pol == Pol::S) {
    return {(bi - bj) / (bi + bj), 2.0 * bi / (bi + bj)};
  }
  // p polarization: continuity of H and (1/eps) dH/dz.
  const cd ei = ni * ni, ej = nj * nj;
  const cd num = ej * bi - ei * bj;
  const cd den = ej * bi + ei * bj;
  return {num / den, 2.0 * ej * bi / den};
}

cd airy_slab(cd n0, cd n1, cd n2, double d_nm, double energy_eV,
             double angle_rad) {
  const cd r01 = fresnel(n0, n1, energy_eV, angle_rad).r;
  const cd r12 = fresnel(n1, n2, energy_eV, angle_rad).r;
  const cd ph = std::exp(cd(0, 2) * beta_z(n1, energy_eV, angle_rad) * d_nm);
  return (r01 + r12 * ph) / (1.0 + r01 * r12 * ph);
}

cd parratt_reflection(const std::vector<cd>& ns, const std::vector<double>& ds,
                      double energy_eV, double angle_rad, bool mirror) {
  std::vector<cd> betas(ns.size());
  for (size_t i = 0; i < ns.size(); ++i)
    betas[i] = beta_z(ns[i], energy_eV, angle_rad);
  cd R;
  size_t start;
  if (mirror) {
    R = cd(-1.0, 0.0);  // looking down from the last finite layer
    start = ns.size() - 1;
  } else {
    const size_t j = ns.size() - 2;
    R = (betas[j] - betas[j + 1]) / (betas[j] + betas[j + 1]);
    start = j;
  }
  for (size_t j = start; j >= 1; --j) {
    const cd ph = std::exp(cd(0, 2) * betas[j] * ds[j - 1]);
    const cd r = (betas[j - 1] - betas[j]) / (betas[j - 1] + betas[j]);
    R = (r + R * ph) / (1.0 + r * R * ph);
  }
  return R;
}

cd stack_reflection(const LayerStack& stack, double energy_eV, double angle_rad,
                    std::optional<double> detuning_gamma) {
  return parratt_reflection(stack.indices(detuning_gamma),
                            stack.interior_thicknesses(), energy_eV, angle_rad,
                            stack.mirror_substrate());
}

cd stack_transmission(const LayerStack& stack, double energy_eV,
                      double angle_rad, std::optional<double> detuning_gamma) {
  if (stack.mirror_substrate()) return cd(0.0, 0.0);
  const auto ns = stack.indices(detuning_gamma);
  const auto ds = stack.interior_thicknesses();
  std::vector<cd> betas(ns.size());
  for (size_t i = 0; i < ns.size(); ++i)
    betas[i] = beta_z(ns[i], energy_eV, angle_rad);
  // Propagate the purely-transmitted solution from the substrate surface to
  // the top surface; for unit field at the substrate surface the incident
  // amplitude at the top is a0, so t = 1/a0.
  cd u(1.0, 0.0), up = cd(0, 1) * betas.back();
  for (size_t j = ns.size() - 2; j >= 1; --j) {
    const cd b = betas[j];
    const cd c = std::cos(b * ds[j - 1]), s = std::sin(b * ds[j - 1]);
    const cd u2 = c * u - s / b * up;
    const cd up2 = b * s * u + c * up;
    u = u2;
    up = up2;
  }
  const cd a0 = 0.5 * (u + up / (cd(0, 1) * betas[0]));
  return 1.0 / a0;
}

std::vector<cd> rocking_curve(const LayerStack& stack, double energy_eV,
                              const Grid& angles, bool parallel) {
  std::vector<cd> out(angles.count);
  auto body = [&](int i) {
    out[i] = stack_reflection(stack, energy_eV, angles.at(i));
  };
  parallel ? parallel_for(angles.count, body) : serial_for(angles.count, body);
  return out;
}

std::vector<cd> energy_angle_map(const LayerStack& stack, const Grid& energies,
                                 const Grid& angles, bool parallel) {
  std::vector<cd> out(static_cast<size_t>(energies.count) * angles.count);
  auto body = [&](int idx) {
    const int ie = idx / angles.count, ia = idx % angles.count;
    out[idx] = stack_reflection(stack, energies.at(ie), angles.at(ia));
  };
  const int n = energies.count * angles.count;
  parallel ? parallel_for(n, body) : serial_for(n, body);
  return out;
}

std::vector<cd> nuclear_spectrum(const LayerStack& stack, double energy_eV,
                                 double angle_rad, const Grid& detunings,
                                 bool parallel) {
  std::vector<cd> out(detunings.count);
  auto body = [&](int i) {
    out[i] = stack_reflection(stack, energy_eV, angle_rad, detunings.at(i));
  };
  parallel ? parallel_for(detunings.count, body)
           : serial_for(detunings.count, body);
  return out;
}

}  // namespace nucav
