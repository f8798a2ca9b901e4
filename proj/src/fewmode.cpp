#include "nucav/fewmode.hpp"

#include <cmath>
#include <stdexcept>

#include "nucav/oracle.hpp"

namespace nucav {

FewModeBasis FewModeBasis::first(int n, double L) {
  FewModeBasis b;
  b.L = L;
  for (int i = 1; i <= n; ++i) b.modes.push_back(i);
  return b;
}

double FewModeBasis::mode_function(int lam, double z) const {
  return std::sqrt(2.0 / L) * std::sin(pi * lam * z / L);
}

std::pair<cd, cd> map_3d_to_1d(cd n, double energy_eV, double angle_rad,
                               double L) {
  const double st = std::sin(angle_rad), ct = std::cos(angle_rad);
  const cd n_eff = sqrt_im_pos(n * n - ct * ct) / st;
  const cd beta = wave_number(energy_eV) * st * L;
  return {n_eff, beta};
}

FewModeCouplings build_couplings(const FewModeBasis& basis, cd n,
                                 double energy_eV, double angle_rad) {
  FewModeCouplings c;
  c.basis = basis;
  c.energy_eV = energy_eV;
  c.angle_rad = angle_rad;
  const double L = basis.L;
  auto [n_eff, beta] = map_3d_to_1d(n, energy_eV, angle_rad, L);
  c.n_eff = n_eff;
  c.omega = wave_number(energy_eV) * std::sin(angle_rad);
  c.beta = beta;
  c.V = (1.0 - n_eff * n_eff) * c.omega * c.omega / 2.0;
  c.alpha = sqrt_im_pos(beta * beta - 2.0 * c.V * L * L);
  const cd A = c.alpha / std::tan(c.alpha);
  const int N = static_cast<int>(basis.modes.size());
  c.om_l.resize(N);
  Eigen::VectorXcd v(N), dd(N);
  cd s(0, 0);
  for (int i = 0; i < N; ++i) {
    const double lam = basis.modes[i];
    const cd pole = c.alpha * c.alpha - lam * lam * pi * pi;
    if (std::abs(pole) < 1e-9 * lam * lam * pi * pi)
      throw std::runtime_error(
          "singular configuration: bath-system degeneracy at mode " +
          std::to_string(basis.modes[i]));
    s += 2.0 * lam * lam * pi * pi / pole;
    c.om_l(i) = sqrt_im_pos(cd(pi * pi * lam * lam / (L * L), 0) + 2.0 * c.V);
    v(i) = lam * ((basis.modes[i] % 2 == 0) ? 1.0 : -1.0);
    dd(i) = beta * beta / (L * L) - c.om_l(i) * c.om_l(i);
  }
  c.s = s;
  const cd Fm = 1.0 / (A - s - cd(0, 1) * beta);
  const cd Fp = 1.0 / (A - s + cd(0, 1) * beta);
  const cd G0 = 1.0 / (A - cd(0, 1) * beta);
  const cd pref = std::sqrt(pi * beta) / L;
  c.W.resize(N);
  c.Wdag.resize(N);
  Eigen::VectorXcd vs(N), u(N);
  for (int i = 0; i < N; ++i) {
    vs(i) = v(i) / std::sqrt(c.om_l(i));
    c.W(i) = pref * std::exp(cd(0, -1) * beta) * Fm * vs(i);
    c.Wdag(i) = pref * std::exp(cd(0, 1) * beta) * Fp * vs(i);
    u(i) = 2.0 * v(i) * std::sqrt(c.om_l(i)) / dd(i);
  }
  c.D = (dd.array() / (2.0 * c.om_l.array())).matrix().asDiagonal();
  c.D += (pi * pi / (L * L)) * Fm * (vs * vs.transpose());
  c.Dinv = (2.0 * c.om_l.array() / dd.array()).matrix().asDiagonal();
  c.Dinv -= (pi * pi / (L * L)) * G0 * (u * u.transpose());
  c.S_bg = std::exp(cd(0, -2) * beta) *
           (A * (A - s) + beta * beta + cd(0, 1) * beta * s) /
           ((A - cd(0, 1) * beta) * (A - s - cd(0, 1) * beta));
  c.S_io_empty =
      1.0 - cd(0, 2) * pi * (c.Wdag.transpose() * (c.Dinv * c.W))(0, 0);
  return c;
}

Eigen::VectorXcd nucleus_coupling(const FewModeCouplings& c,
                                  const NuclearSpecies& species, double z_l,
                                  double t_l) {
  const int N = static_cast<int>(c.basis.modes.size());
  const double d = std::sqrt(effective_dipole_moment_sq(species));
  const double kn = wave_number(species.resonance_energy_eV);
  const double rho = species.effective_density();
  Eigen::VectorXcd g(N);
  for (int i = 0; i < N; ++i) {
    const double chi = c.basis.mode_function(c.basis.modes[i], z_l);
    g(i) = cd(0, -1) * d * kn * std::sqrt(rho * t_l / (2.0 * c.om_l(i))) * chi;
  }
  return g;
}

Eigen::MatrixXcd thick_layer_xi(const FewModeBasis& basis, double t_res) {
  const double L = basis.L;
  if (!(t_res > 0.0) || t_res > L + 1e-12)
    throw std::runtime_error("thick layer must satisfy 0 < t <= L");
  const double lo = (L - t_res) / 2.0, hi = (L + t_res) / 2.0;
  const int N = static_cast<int>(basis.modes.size());
  Eigen::MatrixXcd Xi(N, N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      const double lm = basis.modes[i], ln = basis.modes[j];
      const double kd = pi * (lm - ln) / L;
      const double ks = pi * (lm + ln) / L;
      const double td = (basis.modes[i] == basis.modes[j])
                            ? (hi - lo) / 2.0
                            : (std::sin(kd * hi) - std::sin(kd * lo)) /
                                  (2.0 * kd);
      const double ts =
          (std::sin(ks * hi) - std::sin(ks * lo)) / (2.0 * ks);
      Xi(i, j) = (2.0 / L) * (td - ts);
    }
  }
  return Xi;
}

std::vector<cd> scattering_with_nuclei(const FewModeCouplings& c,
                                       const Eigen::MatrixXcd& g,
                                       const NuclearSpecies& species,
                                       const Grid& detunings, bool woodbury,
                                       bool parallel) {
  const double gnm = species.gamma_nm();
  const int Lens = static_cast<int>(g.rows());
  const Eigen::MatrixXcd gdag = -g.transpose();  // non-conjugation rule
  std::vector<cd> out(detunings.count);
  if (woodbury) {
    const Eigen::VectorXcd DinvW = c.Dinv * c.W;
    const Eigen::RowVectorXcd WdagDinvGdag =
        c.Wdag.transpose() * c.Dinv * gdag;          // 1 x Lens
    const Eigen::VectorXcd gDinvW = g * DinvW;       // Lens
    const Eigen::MatrixXcd C = g * c.Dinv * gdag;    // Lens x Lens
    auto body = [&](int i) {
      const cd den = gnm * cd(detunings.at(i), 0.5);
      Eigen::MatrixXcd M = C;
      M -= den * Eigen::MatrixXcd::Identity(Lens, Lens);
      const Eigen::VectorXcd x = M.partialPivLu().solve(gDinvW);
      const cd Sio = c.S_io_empty + cd(0, 2) * pi * (WdagDinvGdag * x)(0, 0);
      out[i] = c.S_bg * Sio;
    };
    parallel ? parallel_for(detunings.count, body)
             : serial_for(detunings.count, body);
  } else {
    const Eigen::MatrixXcd P = gdag * g;
    auto body = [&](int i) {
      const cd den = gnm * cd(detunings.at(i), 0.5);
      const Eigen::MatrixXcd Dint = c.D - P / den;
      const Eigen::VectorXcd y = Dint.partialPivLu().solve(c.W);
      out[i] =
          c.S_bg * (1.0 - cd(0, 2) * pi * (c.Wdag.transpose() * y)(0, 0));
    };
    parallel ? parallel_for(detunings.count, body)
             : serial_for(detunings.count, body);
  }
  return out;
}

std::vector<cd> scattering_thick_layer(const FewModeCouplings& c,
                                       const NuclearSpecies& species,
                                       double t_res, const Grid& detunings,
                                       bool parallel) {
  const double gnm = species.gamma_nm();
  const double d2 = effective_dipole_moment_sq(species);
  const double kn = wave_number(species.resonance_energy_eV);
  const double rho = species.effective_density();
  const Eigen::MatrixXcd Xi = thick_layer_xi(c.basis, t_res);
  const int N = static_cast<int>(c.basis.modes.size());
  Eigen::MatrixXcd P(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      // sqrt per factor, not of the product: the branch must match the
      // 1/sqrt(omega) normalization used in the thin-ensemble couplings.
      P(i, j) = d2 * kn * kn * rho * Xi(i, j) /
                (2.0 * std::sqrt(c.om_l(i)) * std::sqrt(c.om_l(j)));
  std::vector<cd> out(detunings.count);
  auto body = [&](int i) {
    const cd den = gnm * cd(detunings.at(i), 0.5);
    const Eigen::MatrixXcd Dint = c.D - P / den;
    const Eigen::VectorXcd y = Dint.partialPivLu().solve(c.W);
    out[i] = c.S_bg * (1.0 - cd(0, 2) * pi * (c.Wdag.transpose() * y)(0, 0));
  };
  parallel ? parallel_for(detunings.count, body)
           : serial_for(detunings.count, body);
  return out;
}

cd single_mode_fano_amplitude(const FewModeCouplings& c, cd g,
                              const NuclearSpecies& species,
                              double detuning_gamma) {
  if (c.basis.modes.size() != 1)
    throw std::runtime_error("single-mode closed form needs one mode");
  const cd D = c.D(0, 0);
  const cd A = g * (-g);                      // g gdag
  const cd At = A / (D * species.gamma_nm());  // gamma units
  const cd Snn = 1.0 - cd(0, 2) * pi * c.Wdag(0) * c.W(0) / D;
  const cd Sio = Snn - cd(0, 2) * pi * (c.Wdag(0) * c.W(0) / D) * At /
                           (cd(detuning_gamma, 0.5) - At);
  return c.S_bg * Sio;
}

EffectiveSchemeFM effective_scheme_fm(const FewModeCouplings& c,
                                      const Eigen::MatrixXcd& g,
                                      const NuclearSpecies& species) {
  EffectiveSchemeFM e;
  const Eigen::MatrixXcd gdag = -g.transpose();
  const double gnm = species.gamma_nm();
  e.Omega = 2.0 * pi * (g * (c.Dinv * c.W));
  e.Geff = (g * c.Dinv * gdag) / gnm;
  e.F = e.Geff(0, 0);
  e.F_R = cd(0, -2) * pi *
          ((c.Wdag.transpose() * c.Dinv * gdag) * (g * (c.Dinv * c.W)))(0, 0) /
          gnm;
  return e;
}

double pheno_resonance_trajectory(double theta, double theta0,
                                  double omega_nuc_eV) {
  return omega_nuc_eV * std::sin(theta0) / std::sin(theta);
}

std::pair<cd, double> fewmode_interior(const LayerStack& stack) {
  if (!stack.mirror_substrate())
    throw std::runtime_error("few-mode route requires a mirror substrate");
  const auto& top = stack.layers.front().material;
  if (top.delta != 0.0 || top.beta_abs != 0.0)
    throw std::runtime_error("few-mode route requires a vacuum top layer");
  cd n(0, 0);
  bool have_n = false;
  for (size_t i = 1; i + 1 < stack.layers.size(); ++i) {
    const cd ni = stack.layers[i].material.index();
    if (!have_n) {
      n = ni;
      have_n = true;
    } else if (ni != n) {
      throw std::runtime_error(
          "few-mode route requires a uniform interior material");
    }
  }
  if (!have_n) throw std::runtime_error("few-mode route: no interior layers");
  return {n, stack.total_interior_thickness()};
}

FewModeSetup fewmode_setup(const LayerStack& stack, const FewModeBasis& basis_in,
                           double energy_eV, double angle_rad) {
  auto [n, L] = fewmode_interior(stack);
  FewModeBasis basis = basis_in;
  basis.L = L;
  FewModeSetup setup{build_couplings(basis, n, energy_eV, angle_rad), {}, {}};
  const auto ens = stack.sub_ensembles();
  if (ens.empty())
    throw std::runtime_error("few-mode route: no resonant layers");
  setup.species = ens.front().species;
  const int N = static_cast<int>(basis.modes.size());
  setup.g.resize(static_cast<int>(ens.size()), N);
  for (size_t l = 0; l < ens.size(); ++l)
    setup.g.row(l) =
        nucleus_coupling(setup.couplings, ens[l].species, ens[l].z_nm,
                         ens[l].t_nm)
            .transpose();
  return setup;
}

}  // namespace nucav
