#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "nucav/oracle.hpp"

using namespace nucav;
using namespace nucav::testing;

TEST_SUITE_BEGIN("oracle");

namespace {

LayerStack lossless_stack() {
  // Transparent lossless stack for flux-conservation checks.
  OpticalConstants a{"a", 5e-6, 0.0}, b{"b", 1.5e-5, 0.0}, v{"v", 0.0, 0.0};
  LayerStack st;
  st.layers.push_back({LayerKind::SemiInfinite, v, 0.0, {}});
  st.layers.push_back({LayerKind::Finite, a, 8.0, {}});
  st.layers.push_back({LayerKind::Finite, b, 3.0, {}});
  st.layers.push_back({LayerKind::Finite, a, 12.0, {}});
  st.layers.push_back({LayerKind::SemiInfinite, b, 0.0, {}});
  return st;
}

}  // namespace

TEST_CASE("identical adjacent media: r = 0, t = 1") {
  const auto [r, t] = fresnel(mat_fe().index(), mat_fe().index(), 14400.0,
                              4e-3);
  CHECK(std::abs(r) < 1e-15);
  CHECK(std::abs(t - 1.0) < 1e-15);
}

TEST_CASE("interface flux conservation for lossless media (s pol)") {
  const cd n0(1.0, 0.0), n1(1.0 - 1e-5, 0.0);
  for (double th : {2e-3, 4e-3, 7e-3}) {
    const auto [r, t] = fresnel(n0, n1, 14400.0, th);
    const cd b0 = beta_z(n0, 14400.0, th), b1 = beta_z(n1, 14400.0, th);
    CHECK(std::abs(std::norm(r) + (b1.real() / b0.real()) * std::norm(t) -
                   1.0) < 1e-12);
  }
}

TEST_CASE("recursion equals the Airy closed form for a single slab") {
  const cd n0(1.0, 0.0), n1 = mat_fe().index(), n2 = mat_pt().index();
  for (double th : {1.5e-3, 4e-3, 8e-3}) {
    const cd direct = airy_slab(n0, n1, n2, 11.0, 14400.0, th);
    const cd rec = parratt_reflection({n0, n1, n2}, {11.0}, 14400.0, th,
                                      false);
    CHECK(std::abs(direct - rec) < 1e-12);
  }
}

TEST_CASE("uniform stack reflects nothing; vacuum transmits unity") {
  const LayerStack st = load_stack(config_path("vacuum.json"));
  CHECK(std::abs(stack_reflection(st, 14400.0, 4e-3)) < 1e-15);
  CHECK(std::abs(stack_transmission(st, 14400.0, 4e-3) - 1.0) < 1e-12);
}

TEST_CASE("mirror substrate: unit reflectance for lossless layers, t = 0") {
  LayerStack st = mirror_cavity();
  for (auto& l : st.layers) l.material.beta_abs = 0.0;  // lossless
  for (double th : {2e-3, 4e-3, 6e-3, 9e-3}) {
    CHECK(std::abs(std::abs(stack_reflection(st, 14400.0, th)) - 1.0) <
          1e-10);
  }
  CHECK(stack_transmission(st, 14400.0, 4e-3) == cd(0.0, 0.0));
}

TEST_CASE("frozen reflection amplitudes") {
  const double E = 14400.0, th = 4e-3;
  // Slab-on-mirror (no resonant structure resolved).
  const cd r1 = parratt_reflection({cd(1, 0), mat_fe().index()}, {28.5}, E, th,
                                   true);
  CHECK(r1.real() == doctest::Approx(0.46394400827020904).epsilon(1e-11));
  CHECK(r1.imag() == doctest::Approx(0.1508416213307916).epsilon(1e-11));
  // The same cavity resolved into three interior layers (off resonance).
  const cd r2 = stack_reflection(mirror_cavity(), E, th);
  CHECK(std::abs(r2 - r1) < 1e-13);
  // A transparent Pt/C/Pt stack.
  LayerStack st;
  st.layers.push_back({LayerKind::SemiInfinite, mat_vacuum(), 0.0, {}});
  st.layers.push_back({LayerKind::Finite, mat_pt(), 3.0, {}});
  st.layers.push_back({LayerKind::Finite, mat_c(), 30.0, {}});
  st.layers.push_back({LayerKind::SemiInfinite, mat_pt(), 0.0, {}});
  const cd r3 = stack_reflection(st, E, th);
  CHECK(r3.real() == doctest::Approx(0.23693417494494753).epsilon(1e-9));
  CHECK(r3.imag() == doctest::Approx(-0.73472783368439132).epsilon(1e-9));
}

TEST_CASE("frozen nuclear-resonant amplitudes at the first cavity mode") {
  const LayerStack st = mirror_cavity();
  const double th0 = 4.0954e-3;
  const cd r0 = stack_reflection(st, 14400.0, th0, 0.0);
  CHECK(r0.real() == doctest::Approx(0.75263065222318182).epsilon(1e-11));
  CHECK(r0.imag() == doctest::Approx(-0.058902726152944167).epsilon(1e-11));
  const cd r1 = stack_reflection(st, 14400.0, th0, 7.25);
  CHECK(r1.real() == doctest::Approx(0.265673592126346).epsilon(1e-11));
  CHECK(r1.imag() == doctest::Approx(0.1918572664559498).epsilon(1e-11));
  const cd r2 = stack_reflection(st, 14400.0, th0, -33.5);
  CHECK(r2.real() == doctest::Approx(0.070297351565086999).epsilon(1e-11));
  CHECK(r2.imag() == doctest::Approx(-0.11230221255749809).epsilon(1e-11));
}

TEST_CASE("energy conservation for lossless transparent stacks") {
  const LayerStack st = lossless_stack();
  double worst = 0.0;
  for (int ie = 0; ie < 100; ++ie) {
    const double E = 13400.0 + 2000.0 * ie / 99.0;
    for (int ia = 0; ia < 100; ++ia) {
      const double th = 1e-3 + 9e-3 * ia / 99.0;
      const cd r = stack_reflection(st, E, th);
      const cd t = stack_transmission(st, E, th);
      const cd b0 = beta_z(st.layers.front().material.index(), E, th);
      const cd bn = beta_z(st.layers.back().material.index(), E, th);
      const double flux =
          std::norm(r) + (bn.real() / b0.real()) * std::norm(t);
      worst = std::max(worst, std::abs(flux - 1.0));
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("reciprocity: reversed lossless stack reflects with equal modulus") {
  LayerStack st = lossless_stack();
  LayerStack rev = st;
  std::reverse(rev.layers.begin(), rev.layers.end());
  rev.layers.front().kind = LayerKind::SemiInfinite;
  rev.layers.back().kind = LayerKind::SemiInfinite;
  for (size_t i = 1; i + 1 < rev.layers.size(); ++i)
    rev.layers[i].kind = LayerKind::Finite;
  // Angles above the critical angle of every medium (propagating channels on
  // both sides; below cutoff the reversed illumination channel is evanescent).
  for (double th : {6.5e-3, 8e-3, 9.5e-3}) {
    // For lossless media the S-matrix is unitary and symmetric; the two
    // reflection amplitudes from either side have equal modulus.
    const cd ra = stack_reflection(st, 14400.0, th);
    const cd rb = stack_reflection(rev, 14400.0, th);
    CHECK(std::abs(std::abs(ra) - std::abs(rb)) < 1e-10);
    // Transmission is strictly reciprocal including phase (flux-weighted).
    const cd ta = stack_transmission(st, 14400.0, th);
    const cd tb = stack_transmission(rev, 14400.0, th);
    const cd b0 = beta_z(st.layers.front().material.index(), 14400.0, th);
    const cd bn = beta_z(st.layers.back().material.index(), 14400.0, th);
    CHECK(std::abs(ta * bn - tb * b0) / std::abs(ta * bn) < 1e-10);
  }
}

TEST_CASE("rocking curve of the mirror cavity: four dips below 8 mrad") {
  const LayerStack st = mirror_cavity();
  const Grid angles{1e-3, 10e-3, 901};
  const auto amps = rocking_curve(st, 14400.0, angles);
  int dips_below_8 = 0;
  for (int i = 1; i + 1 < angles.count; ++i) {
    const double R0 = std::norm(amps[i - 1]), R1 = std::norm(amps[i]),
                 R2 = std::norm(amps[i + 1]);
    if (R1 < R0 && R1 < R2 && angles.at(i) < 8e-3) ++dips_below_8;
  }
  CHECK(dips_below_8 == 4);
}

TEST_CASE("nuclear spectrum approaches the off-resonant value far detuned") {
  const LayerStack st = mirror_cavity();
  // Away from the cavity dip the convergence is fast in relative terms.
  for (double th : {3e-3, 7e-3}) {
    const cd off = stack_reflection(st, 14400.0, th);
    for (double det : {-200.0, 200.0}) {
      const cd on = stack_reflection(st, 14400.0, th, det);
      CHECK(std::abs(std::norm(on) - std::norm(off)) / std::norm(off) < 1e-3);
    }
  }
  // At the dip the reflectance is tiny and the cavity amplifies the residual
  // dispersion; the approach is absolute there.
  const double th0 = 4.0954e-3;
  const cd off = stack_reflection(st, 14400.0, th0);
  for (double det : {-200.0, 200.0}) {
    const cd on = stack_reflection(st, 14400.0, th0, det);
    CHECK(std::abs(std::norm(on) - std::norm(off)) < 1e-3);
  }
}

TEST_CASE("serial and parallel sweeps agree exactly") {
  const LayerStack st = mirror_cavity();
  const Grid dets{-100.0, 100.0, 101};
  const auto par = nuclear_spectrum(st, 14400.0, 4.1e-3, dets, true);
  const auto ser = nuclear_spectrum(st, 14400.0, 4.1e-3, dets, false);
  for (int i = 0; i < dets.count; ++i) CHECK(par[i] == ser[i]);
}

TEST_SUITE_END();
