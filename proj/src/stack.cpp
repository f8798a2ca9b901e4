#include "nucav/stack.hpp"

#include <fstream>
#include <sstream>

namespace nucav {

using nlohmann::json;
using nlohmann::ordered_json;

std::vector<double> LayerStack::interior_thicknesses() const {
  std::vector<double> out;
  for (size_t i = 1; i + 1 < layers.size(); ++i)
    out.push_back(layers[i].thickness_nm);
  return out;
}

double LayerStack::total_interior_thickness() const {
  double t = 0.0;
  for (size_t i = 1; i + 1 < layers.size(); ++i) t += layers[i].thickness_nm;
  return t;
}

double LayerStack::layer_top(int layer_index) const {
  double z = 0.0;
  for (int i = 1; i < layer_index; ++i) z += layers[i].thickness_nm;
  return z;
}

std::vector<cd> LayerStack::indices(std::optional<double> detuning_gamma) const {
  std::vector<cd> out;
  for (const auto& l : layers) {
    if (l.kind == LayerKind::Mirror) continue;
    if (l.resonant && detuning_gamma)
      out.push_back(
          resonant_refractive_index(*l.resonant, *detuning_gamma, l.material));
    else
      out.push_back(l.material.index());
  }
  return out;
}

std::vector<SubEnsemble> LayerStack::sub_ensembles() const {
  std::vector<SubEnsemble> out;
  for (size_t i = 1; i + 1 < layers.size(); ++i) {
    if (!layers[i].resonant) continue;
    int count = 1;
    if (auto it = partition_counts.find(static_cast<int>(i));
        it != partition_counts.end())
      count = it->second;
    auto part = partition_layer(layers[i], layer_top(static_cast<int>(i)),
                                count, static_cast<int>(i));
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

void LayerStack::validate() const {
  std::vector<std::string> errs;
  if (layers.size() < 2) errs.push_back("stack needs at least 2 layers");
  if (!layers.empty()) {
    if (layers.front().kind != LayerKind::SemiInfinite)
      errs.push_back("first layer must be semi-infinite");
    if (layers.back().kind == LayerKind::Finite)
      errs.push_back("last layer must be semi-infinite or a mirror");
  }
  for (size_t i = 1; i + 1 < layers.size(); ++i) {
    const auto& l = layers[i];
    if (l.kind != LayerKind::Finite)
      errs.push_back("interior layer " + std::to_string(i) + " must be finite");
    else if (!(l.thickness_nm > 0.0))
      errs.push_back("layer " + std::to_string(i) + ": non-positive thickness");
    if (l.resonant) {
      if (!l.resonant->valid())
        errs.push_back("layer " + std::to_string(i) +
                       ": invalid resonant species parameters");
      if (!(l.resonant->number_density_nm3 > 0.0))
        errs.push_back("layer " + std::to_string(i) +
                       ": resonant species without number density");
    }
  }
  for (const auto& [idx, cnt] : partition_counts) {
    if (cnt < 1)
      errs.push_back("partition count for layer " + std::to_string(idx) +
                     " must be >= 1");
    if (idx < 1 || idx + 1 >= static_cast<int>(layers.size()) ||
        !layers[idx].resonant)
      errs.push_back("partition refers to non-resonant layer " +
                     std::to_string(idx));
  }
  if (!errs.empty()) {
    std::ostringstream os;
    for (size_t i = 0; i < errs.size(); ++i)
      os << (i ? "; " : "") << errs[i];
    throw StackError(os.str());
  }
}

std::vector<SubEnsemble> partition_layer(const Layer& layer, double z_top,
                                         int count, int layer_index) {
  if (count < 1) throw StackError("partition count must be >= 1");
  if (!layer.resonant) throw StackError("partition of non-resonant layer");
  std::vector<SubEnsemble> out;
  const double t = layer.thickness_nm / count;
  for (int i = 0; i < count; ++i) {
    SubEnsemble e;
    e.z_nm = z_top + (i + 0.5) * t;
    e.t_nm = t;
    e.species = *layer.resonant;
    e.layer_index = layer_index;
    out.push_back(e);
  }
  return out;
}

namespace {

NuclearSpecies parse_species_fields(const json& j) {
  NuclearSpecies s;
  s.resonance_energy_eV = j.at("resonance_energy_eV").get<double>();
  s.natural_linewidth_eV = j.at("natural_linewidth_eV").get<double>();
  s.internal_conversion_alpha = j.at("internal_conversion_alpha").get<double>();
  s.lamb_moessbauer_f = j.at("lamb_moessbauer_f").get<double>();
  s.spin_ratio = j.at("spin_ratio").get<double>();
  s.number_density_nm3 = j.at("number_density_nm3").get<double>();
  if (j.contains("abundance")) s.abundance = j.at("abundance").get<double>();
  return s;
}

}  // namespace

LayerStack parse_stack(const json& doc) {
  LayerStack st;
  std::map<std::string, OpticalConstants> mats;
  if (doc.contains("materials")) {
    for (auto it = doc.at("materials").begin(); it != doc.at("materials").end();
         ++it) {
      OpticalConstants m;
      m.name = it.key();
      m.delta = it.value().at("delta").get<double>();
      m.beta_abs = it.value().at("beta").get<double>();
      mats[m.name] = m;
    }
  }
  std::map<std::string, NuclearSpecies> species;
  if (doc.contains("species")) {
    for (auto it = doc.at("species").begin(); it != doc.at("species").end();
         ++it)
      species[it.key()] = parse_species_fields(it.value());
  }
  for (const auto& jl : doc.at("layers")) {
    Layer l;
    std::string thick;
    if (jl.contains("thickness") && jl.at("thickness").is_string())
      thick = jl.at("thickness").get<std::string>();
    if (thick == "mirror") {
      l.kind = LayerKind::Mirror;
      st.layers.push_back(l);
      continue;
    }
    const std::string mname = jl.at("material").get<std::string>();
    auto mit = mats.find(mname);
    if (mit == mats.end())
      throw StackError("missing material: " + mname);
    l.material = mit->second;
    if (thick == "semi-infinite") {
      l.kind = LayerKind::SemiInfinite;
    } else {
      l.kind = LayerKind::Finite;
      l.thickness_nm = jl.at("thickness_nm").get<double>();
    }
    if (jl.contains("resonant")) {
      const json& jr = jl.at("resonant");
      NuclearSpecies s;
      if (jr.contains("species") && jr.at("species").is_string()) {
        const std::string sname = jr.at("species").get<std::string>();
        auto sit = species.find(sname);
        if (sit == species.end())
          throw StackError("missing species: " + sname);
        s = sit->second;
        if (jr.contains("abundance"))
          s.abundance = jr.at("abundance").get<double>();
      } else {
        s = parse_species_fields(jr);
      }
      l.resonant = s;
    }
    st.layers.push_back(l);
  }
  if (doc.contains("partition")) {
    for (auto it = doc.at("partition").begin(); it != doc.at("partition").end();
         ++it)
      st.partition_counts[std::stoi(it.key())] = it.value().get<int>();
  }
  st.validate();
  return st;
}

LayerStack load_stack(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StackError("cannot open config: " + path);
  json doc;
  in >> doc;
  return parse_stack(doc);
}

nlohmann::ordered_json serialize_stack(const LayerStack& stack) {
  ordered_json doc;
  ordered_json mats = ordered_json::object();
  for (const auto& l : stack.layers) {
    if (l.kind == LayerKind::Mirror) continue;
    mats[l.material.name] = {{"delta", l.material.delta},
                             {"beta", l.material.beta_abs}};
  }
  doc["materials"] = mats;
  ordered_json layers = ordered_json::array();
  for (const auto& l : stack.layers) {
    ordered_json jl = ordered_json::object();
    if (l.kind == LayerKind::Mirror) {
      jl["thickness"] = "mirror";
      layers.push_back(jl);
      continue;
    }
    jl["material"] = l.material.name;
    if (l.kind == LayerKind::SemiInfinite)
      jl["thickness"] = "semi-infinite";
    else
      jl["thickness_nm"] = l.thickness_nm;
    if (l.resonant) {
      const auto& s = *l.resonant;
      jl["resonant"] = {
          {"resonance_energy_eV", s.resonance_energy_eV},
          {"natural_linewidth_eV", s.natural_linewidth_eV},
          {"internal_conversion_alpha", s.internal_conversion_alpha},
          {"lamb_moessbauer_f", s.lamb_moessbauer_f},
          {"spin_ratio", s.spin_ratio},
          {"number_density_nm3", s.number_density_nm3},
          {"abundance", s.abundance}};
    }
    layers.push_back(jl);
  }
  doc["layers"] = layers;
  ordered_json part = ordered_json::object();
  for (const auto& [idx, cnt] : stack.partition_counts)
    part[std::to_string(idx)] = cnt;
  doc["partition"] = part;
  return doc;
}

}  // namespace nucav
