// Cavity geometry data model: layer ordering, resonant-layer placement,
// sub-ensemble partitioning and configuration ingestion.
//
// Depth convention: z = 0 at the top surface (interface between the
// semi-infinite illumination layer and the first finite layer), z increasing
// into the stack. Used uniformly by every module.
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nucav/core.hpp"

namespace nucav {

enum class LayerKind { SemiInfinite, Finite, Mirror };

struct Layer {
  LayerKind kind = LayerKind::Finite;
  OpticalConstants material;            // ignored for Mirror
  double thickness_nm = 0.0;            // finite layers only
  std::optional<NuclearSpecies> resonant;
};

// One slice of a resonant layer treated as a single effective two-level
// ensemble (z measured from the top surface; t is the slice thickness).
struct SubEnsemble {
  double z_nm = 0.0;
  double t_nm = 0.0;
  NuclearSpecies species;
  int layer_index = -1;

  // Resonant nuclei per unit transverse area (nm^-2).
  double area_density() const { return species.effective_density() * t_nm; }
};

class StackError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LayerStack {
  std::vector<Layer> layers;                 // layers[0] = illumination side
  std::map<int, int> partition_counts;       // layer index -> sub-ensembles

  bool mirror_substrate() const {
    return !layers.empty() && layers.back().kind == LayerKind::Mirror;
  }
  int interior_count() const { return static_cast<int>(layers.size()) - 2; }

  // Thicknesses of the finite interior layers (indices 1..n-1).
  std::vector<double> interior_thicknesses() const;
  double total_interior_thickness() const;

  // Depth of the top edge of interior layer i (1-based interior index).
  double layer_top(int layer_index) const;

  // Refractive index per layer (same ordering as `layers`). Resonant layers
  // use the resonant index at `detuning` when `with_resonance` is set, else
  // their electronic base index. The Mirror entry (if present) is omitted.
  std::vector<cd> indices(std::optional<double> detuning_gamma) const;

  // All resonant sub-ensembles in depth order, honoring partition_counts
  // (default one ensemble per resonant layer).
  std::vector<SubEnsemble> sub_ensembles() const;

  void validate() const;  // throws StackError listing every violation
};

// Equal-thickness partition of a resonant layer whose top edge sits at depth
// z_top; returns `count` slices with centered z positions.
std::vector<SubEnsemble> partition_layer(const Layer& layer, double z_top,
                                         int count, int layer_index = -1);

LayerStack parse_stack(const nlohmann::json& doc);
LayerStack load_stack(const std::string& path);
nlohmann::ordered_json serialize_stack(const LayerStack& stack);

}  // namespace nucav
