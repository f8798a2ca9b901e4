// Semi-classical multilayer reference: Fresnel interface coefficients,
// Parratt-type recursion for the stack reflection, transfer-propagated
// transmission, and grid sweeps. This module is the ground truth the other
// routes are verified against.
#pragma once

#include <optional>
#include <vector>

#include "nucav/stack.hpp"
#include "nucav/sweep.hpp"

namespace nucav {

enum class Pol { S, P };

// z-component of the wave vector inside a medium of index n:
//   beta = sqrt((n k0)^2 - (k0 cos th)^2)
// branch chosen with Im >= 0 (decay into absorbing/evanescent media).
cd beta_z(cd n, double energy_eV, double angle_rad);

// Principal square root folded onto the Im >= 0 half plane.
cd sqrt_im_pos(cd z);

// Fresnel amplitude coefficients for the interface i -> j.
struct InterfaceCoefficients {
  cd r, t;
};
InterfaceCoefficients fresnel(cd ni, cd nj, double energy_eV, double angle_rad,
                              Pol pol = Pol::S);

// Reflection of a single slab between two semi-infinite media (Airy
// summation closed form) - used as an independent check of the recursion.
cd airy_slab(cd n0, cd n1, cd n2, double d_nm, double energy_eV,
             double angle_rad);

// Complex reflection amplitude of the whole stack at its top surface,
// evaluated by the Parratt recursion bottom-up (substrate -> top).
// If `detuning_gamma` is given, resonant layers use the resonant index.
cd stack_reflection(const LayerStack& stack, double energy_eV, double angle_rad,
                    std::optional<double> detuning_gamma = {});

// Complex transmission amplitude at the substrate surface (field ratio for
// unit incidence). Exactly 0 for mirror substrates. Flux conservation for
// lossless stacks: |r|^2 + (Re beta_sub/Re beta_top)|t|^2 = 1.
cd stack_transmission(const LayerStack& stack, double energy_eV,
                      double angle_rad,
                      std::optional<double> detuning_gamma = {});

// Low-level variants on raw index/thickness arrays (ns.size() interior+2 for
// transparent stacks, interior+1 for mirror substrates).
cd parratt_reflection(const std::vector<cd>& ns, const std::vector<double>& ds,
                      double energy_eV, double angle_rad, bool mirror);

// ---- grid sweeps (parallel by default; serial reference for testing) ----

std::vector<cd> rocking_curve(const LayerStack& stack, double energy_eV,
                              const Grid& angles, bool parallel = true);

// Row-major [energy][angle] empty-cavity amplitudes.
std::vector<cd> energy_angle_map(const LayerStack& stack, const Grid& energies,
                                 const Grid& angles, bool parallel = true);

std::vector<cd> nuclear_spectrum(const LayerStack& stack, double energy_eV,
                                 double angle_rad, const Grid& detunings,
                                 bool parallel = true);

}  // namespace nucav
