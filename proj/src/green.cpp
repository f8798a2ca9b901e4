#include "nucav/green.hpp"

#include <cmath>
#include <stdexcept>

namespace nucav {

namespace {
// Propagate (u, u') across a uniform region of length dz (signed).
inline std::pair<cd, cd> prop(cd u, cd up, cd beta, double dz) {
  const cd c = std::cos(beta * dz), s = std::sin(beta * dz);
  return {c * u + s / beta * up, -beta * s * u + c * up};
}
}  // namespace

GreenContext::GreenContext(const LayerStack& stack, double energy_eV,
                           double angle_rad,
                           std::optional<double> detuning_gamma) {
  mirror_ = stack.mirror_substrate();
  const auto ns = stack.indices(detuning_gamma);
  const auto ds = stack.interior_thicknesses();
  const int nfin = static_cast<int>(ds.size());
  betas_.resize(ns.size());
  eps_.resize(ns.size());
  for (size_t i = 0; i < ns.size(); ++i) {
    betas_[i] = beta_z(ns[i], energy_eV, angle_rad);
    eps_[i] = ns[i] * ns[i];
  }
  edges_.assign(1, 0.0);
  for (double d : ds) edges_.push_back(edges_.back() + d);

  // u_r: bottom boundary condition, built upward.
  vr_.assign(nfin + 1, {});
  cd u, up;
  if (mirror_) {
    u = cd(0, 0);
    up = cd(1, 0);
  } else {
    u = cd(1, 0);
    up = cd(0, 1) * betas_.back();
  }
  vr_[nfin] = {u, up};
  for (int j = nfin; j >= 1; --j) {
    std::tie(u, up) = prop(u, up, betas_[j], -ds[j - 1]);
    vr_[j - 1] = {u, up};
  }
  const cd b0 = betas_[0];
  a0_ = 0.5 * (vr_[0].first + vr_[0].second / (cd(0, 1) * b0));
  b0_ = 0.5 * (vr_[0].first - vr_[0].second / (cd(0, 1) * b0));

  // u_l: outgoing at the top, built downward.
  u = cd(1, 0);
  up = cd(0, -1) * b0;
  vl_.assign(nfin + 1, {});
  vl_[0] = {u, up};
  for (int j = 1; j <= nfin; ++j) {
    std::tie(u, up) = prop(u, up, betas_[j], ds[j - 1]);
    vl_[j] = {u, up};
  }
  W_ = vl_[0].first * vr_[0].second - vl_[0].second * vr_[0].first;

  // p polarization: (u, w = u'/eps) continuous; bottom boundary condition.
  vp_.assign(nfin + 1, {});
  cd pu, pw;
  if (mirror_) {
    pu = cd(1, 0);  // perfect conductor: tangential E = w = 0
    pw = cd(0, 0);
  } else {
    pu = cd(1, 0);
    pw = cd(0, 1) * betas_.back() / eps_.back();
  }
  vp_[nfin] = {pu, pw};
  for (int j = nfin; j >= 1; --j) {
    auto [u2, up2] = prop(pu, eps_[j] * pw, betas_[j], -ds[j - 1]);
    pu = u2;
    pw = up2 / eps_[j];
    vp_[j - 1] = {pu, pw};
  }
  ap0_ = 0.5 * (vp_[0].first + eps_[0] * vp_[0].second / (cd(0, 1) * b0));
}

std::pair<cd, cd> GreenContext::eval(
    const std::vector<std::pair<cd, cd>>& vals, double z) const {
  const int nfin = static_cast<int>(edges_.size()) - 1;
  if (z <= 0.0) {
    auto [u, up] = vals[0];
    return prop(u, up, betas_[0], z);
  }
  if (z >= edges_.back()) {
    if (mirror_)
      throw std::runtime_error("no field below the mirror substrate");
    auto [u, up] = vals[nfin];
    return prop(u, up, betas_.back(), z - edges_.back());
  }
  int j = 1;
  while (j < nfin && z > edges_[j]) ++j;
  auto [u, up] = vals[j - 1];
  return prop(u, up, betas_[j], z - edges_[j - 1]);
}

cd GreenContext::ur(double z) const { return eval(vr_, z).first; }
cd GreenContext::ul(double z) const { return eval(vl_, z).first; }

cd GreenContext::t() const {
  if (mirror_) return cd(0, 0);
  return 1.0 / a0_;
}

cd GreenContext::field_profile_bottom(double z) const {
  if (mirror_)
    throw std::runtime_error("no bottom illumination through a mirror");
  // Decompose u_l below the last interface into up/down-going waves; the
  // up-going part is the incident amplitude for illumination from below.
  const auto [u, up] = vl_.back();
  const cd bn = betas_.back();
  const cd an = 0.5 * (u - up / (cd(0, 1) * bn));
  return ul(z) / an;
}

cd GreenContext::field_profile_p(double z) const {
  const int nfin = static_cast<int>(edges_.size()) - 1;
  cd u, up;
  int j;  // layer index owning z
  if (z <= 0.0) {
    j = 0;
    std::tie(u, up) = prop(vp_[0].first, eps_[0] * vp_[0].second, betas_[0], z);
  } else if (z >= edges_.back()) {
    if (mirror_)
      throw std::runtime_error("no field below the mirror substrate");
    j = static_cast<int>(betas_.size()) - 1;
    std::tie(u, up) = prop(vp_[nfin].first, eps_[j] * vp_[nfin].second,
                           betas_[j], z - edges_.back());
  } else {
    j = 1;
    while (j < nfin && z > edges_[j]) ++j;
    std::tie(u, up) = prop(vp_[j - 1].first, eps_[j] * vp_[j - 1].second,
                           betas_[j], z - edges_[j - 1]);
  }
  (void)up;
  return u / ap0_;
}

cd GreenContext::green(double z, double zp) const {
  const double zl = std::min(z, zp), zg = std::max(z, zp);
  return -ul(zl) * ur(zg) / W_;
}

cd mode_profile(const LayerStack& stack, Pol pol, Side side, double z,
                double energy_eV, double angle_rad) {
  GreenContext ctx(stack, energy_eV, angle_rad);
  if (pol == Pol::P) {
    if (side == Side::Bottom)
      throw std::runtime_error("p-polarization bottom profile not exported");
    return ctx.field_profile_p(z);
  }
  return side == Side::Top ? ctx.field_profile(z)
                           : ctx.field_profile_bottom(z);
}

cd green_parallel(const LayerStack& stack, double z, double zp,
                  double energy_eV, double angle_rad) {
  return GreenContext(stack, energy_eV, angle_rad).green(z, zp);
}

}  // namespace nucav
