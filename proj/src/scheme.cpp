#include "nucav/scheme.hpp"

#include <cmath>

namespace nucav {

Eigen::VectorXcd LevelScheme::normalized_drive() const {
  Eigen::VectorXcd v = drive_raw / drive_raw.norm();
  int imax = 0;
  for (int i = 1; i < v.size(); ++i)
    if (std::abs(v(i)) > std::abs(v(imax))) imax = i;
  const cd ph = v(imax) / std::abs(v(imax));
  return v / ph;
}

cd curly_g(const GreenContext& ctx, const SubEnsemble& a, const SubEnsemble& b,
           double energy_eV) {
  const double k0 = wave_number(energy_eV);
  const double d2 = std::sqrt(effective_dipole_moment_sq(a.species) *
                              effective_dipole_moment_sq(b.species));
  const double gnm = std::sqrt(a.species.gamma_nm() * b.species.gamma_nm());
  return std::sqrt(a.area_density() * b.area_density()) * k0 * k0 * d2 *
         ctx.green(a.z_nm, b.z_nm) / gnm;
}

LevelScheme build_level_scheme(const LayerStack& stack, double energy_eV,
                               double angle_rad) {
  LevelScheme s;
  s.energy_eV = energy_eV;
  s.angle_rad = angle_rad;
  s.ensembles = stack.sub_ensembles();
  const int L = static_cast<int>(s.ensembles.size());
  if (L == 0) throw StackError("no resonant layers in stack");
  GreenContext ctx(stack, energy_eV, angle_rad);  // electronic background
  s.r_empty = ctx.r();
  s.coupling.resize(L, L);
  s.drive_raw.resize(L);
  s.g_top.resize(L);
  const double k0 = wave_number(energy_eV);
  for (int i = 0; i < L; ++i) {
    const auto& ei = s.ensembles[i];
    const double d = std::sqrt(effective_dipole_moment_sq(ei.species));
    const double gnm = ei.species.gamma_nm();
    const double sq = std::sqrt(ei.area_density());
    s.drive_raw(i) = sq * d * ctx.field_profile(ei.z_nm) / gnm;
    s.g_top(i) = k0 * k0 * ctx.green(0.0, ei.z_nm) * d * sq;
    for (int j = 0; j < L; ++j)
      s.coupling(i, j) = curly_g(ctx, ei, s.ensembles[j], energy_eV);
  }
  return s;
}

Eigen::VectorXcd linear_response(const LevelScheme& scheme,
                                 double detuning_gamma) {
  const int L = static_cast<int>(scheme.ensembles.size());
  Eigen::MatrixXcd M =
      cd(detuning_gamma, 0.5) * Eigen::MatrixXcd::Identity(L, L) +
      scheme.coupling;
  return -M.partialPivLu().solve(scheme.drive_raw);
}

cd reconstruct_reflection_point(const LevelScheme& scheme,
                                double detuning_gamma) {
  const Eigen::VectorXcd sigma = linear_response(scheme, detuning_gamma);
  return scheme.r_empty + scheme.g_top.cwiseProduct(sigma).sum();
}

std::vector<cd> reconstruct_reflection(const LevelScheme& scheme,
                                       const Grid& detunings, bool parallel) {
  std::vector<cd> out(detunings.count);
  auto body = [&](int i) {
    out[i] = reconstruct_reflection_point(scheme, detunings.at(i));
  };
  parallel ? parallel_for(detunings.count, body)
           : serial_for(detunings.count, body);
  return out;
}

// ---- Fano fit ------------------------------------------------------------

double fano_model(double sigma0, cd q, double delta1, double gamma1,
                  double detuning) {
  const double eps = (detuning - delta1) / (gamma1 / 2.0);
  const double qr = q.real() + eps, qi = q.imag();
  return sigma0 * (qr * qr + qi * qi) / (1.0 + eps * eps);
}

namespace {

double fano_cost(const std::vector<double>& x, const std::vector<double>& y,
                 const double p[5]) {
  double c = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double r =
        fano_model(p[0], cd(p[1], p[2]), p[3], p[4], x[i]) - y[i];
    c += r * r;
  }
  return c;
}

// Damped Gauss-Newton (Levenberg-Marquardt) on the 5 real parameters.
FanoFit lm_fit(const std::vector<double>& x, const std::vector<double>& y,
               double p[5]) {
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd J(n, 5);
  Eigen::VectorXd r(n);
  double lambda = 1e-3;
  double cost = fano_cost(x, y, p);
  FanoFit fit;
  int iter = 0;
  for (; iter < 500; ++iter) {
    for (int i = 0; i < n; ++i)
      r(i) = fano_model(p[0], cd(p[1], p[2]), p[3], p[4], x[i]) - y[i];
    for (int k = 0; k < 5; ++k) {
      double pk[5] = {p[0], p[1], p[2], p[3], p[4]};
      const double h = 1e-7 * (1.0 + std::abs(p[k]));
      pk[k] += h;
      for (int i = 0; i < n; ++i)
        J(i, k) =
            (fano_model(pk[0], cd(pk[1], pk[2]), pk[3], pk[4], x[i]) -
             fano_model(p[0], cd(p[1], p[2]), p[3], p[4], x[i])) /
            h;
    }
    const Eigen::MatrixXd JtJ = J.transpose() * J;
    const Eigen::VectorXd Jtr = J.transpose() * r;
    bool accepted = false;
    for (int tries = 0; tries < 30; ++tries) {
      Eigen::MatrixXd A = JtJ;
      for (int k = 0; k < 5; ++k)
        A(k, k) += lambda * std::max(JtJ(k, k), 1e-12);
      const Eigen::VectorXd dp = A.ldlt().solve(-Jtr);
      double pn[5];
      for (int k = 0; k < 5; ++k) pn[k] = p[k] + dp(k);
      const double cn = fano_cost(x, y, pn);
      if (cn < cost) {
        const double dc = cost - cn;
        for (int k = 0; k < 5; ++k) p[k] = pn[k];
        cost = cn;
        lambda = std::max(lambda / 3.0, 1e-12);
        accepted = true;
        if (dc < 1e-10 * std::max(cost, 1e-300)) {
          fit.converged = true;
          iter = 501;
        }
        break;
      }
      lambda *= 5.0;
      if (lambda > 1e14) break;
    }
    if (!accepted) {
      fit.converged = true;  // stalled at a (local) minimum
      break;
    }
    if (iter > 500) break;
  }
  fit.iterations = std::min(iter, 500);
  fit.sigma0 = std::abs(p[0]);
  fit.q = cd(p[1], p[2]);
  fit.delta1 = p[3];
  fit.gamma1 = std::abs(p[4]);
  double ymax = 1e-300;
  for (double v : y) ymax = std::max(ymax, std::abs(v));
  fit.residual = std::sqrt(cost / n) / ymax;
  if (fit.residual < 1e-8) fit.converged = true;  // exact fit reached
  return fit;
}

}  // namespace

FanoFit fano_fit(const std::vector<double>& detunings,
                 const std::vector<double>& reflectance) {
  const auto& x = detunings;
  const auto& y = reflectance;
  const int n = static_cast<int>(x.size());
  if (n < 8) throw std::runtime_error("fano_fit: too few points");
  // Initialization: background from the endpoints, resonance at the largest
  // excursion, width at half depth.
  double bg = 0.0;
  const int ne = std::max(1, n / 50);
  for (int i = 0; i < ne; ++i) bg += y[i] + y[n - 1 - i];
  bg /= 2.0 * ne;
  int idx = 0;
  for (int i = 0; i < n; ++i)
    if (std::abs(y[i] - bg) > std::abs(y[idx] - bg)) idx = i;
  const double depth = std::abs(y[idx] - bg);
  int k = idx;
  while (k + 1 < n && std::abs(y[k] - bg) > depth / 2.0) ++k;
  double width = 2.0 * std::abs(x[k] - x[idx]);
  if (width <= 0.0) width = (x.back() - x.front()) / 20.0;
  const double sigma0 = std::max(bg, 1e-8);
  const double qmag = std::sqrt(std::max(y[idx], 1e-12) / sigma0);
  // The damped least-squares solver is local; restart from a small set of
  // initial widths, centers and q signs and keep the best fit.
  int imin = 0;
  for (int i = 0; i < n; ++i)
    if (y[i] < y[imin]) imin = i;
  FanoFit best;
  double best_res = 1e300;
  for (double qs : {qmag, -qmag}) {
    for (double ws : {width, width / 3.0, 3.0 * width}) {
      for (double ds : {x[idx], x[imin]}) {
        double p[5] = {sigma0, qs, 0.0, ds, ws};
        FanoFit f = lm_fit(x, y, p);
        if (f.residual < best_res) {
          best_res = f.residual;
          best = f;
        }
        if (best_res < 1e-9) return best;
      }
    }
  }
  return best;
}

}  // namespace nucav
