#include "nucav/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nucav/fewmode.hpp"
#include "nucav/scheme.hpp"

namespace nucav {

namespace {

using nlohmann::ordered_json;

double default_energy(const LayerStack& st) {
  for (const auto& l : st.layers)
    if (l.resonant) return l.resonant->resonance_energy_eV;
  return 14400.0;
}

NuclearSpecies first_species(const LayerStack& st) {
  for (const auto& l : st.layers)
    if (l.resonant) return *l.resonant;
  throw StackError("config has no resonant layers");
}

LayerStack with_subensembles(LayerStack st, int count) {
  if (count < 1) return st;
  st.partition_counts.clear();
  for (size_t i = 1; i + 1 < st.layers.size(); ++i)
    if (st.layers[i].resonant)
      st.partition_counts[static_cast<int>(i)] = count;
  return st;
}

std::vector<cd> route_rocking(const LayerStack& st, const std::string& route,
                              double energy, const Grid& angles, int modes,
                              bool parallel) {
  if (route == "oracle") return rocking_curve(st, energy, angles, parallel);
  std::vector<cd> out(angles.count);
  auto body_green = [&](int i) {
    out[i] = GreenContext(st, energy, angles.at(i)).r();
  };
  if (route == "green") {
    parallel ? parallel_for(angles.count, body_green)
             : serial_for(angles.count, body_green);
    return out;
  }
  auto [n, L] = fewmode_interior(st);
  auto body_fm = [&, n = n, L = L](int i) {
    out[i] = build_couplings(FewModeBasis::first(modes, L), n, energy,
                             angles.at(i))
                 .empty_cavity_amplitude();
  };
  parallel ? parallel_for(angles.count, body_fm)
           : serial_for(angles.count, body_fm);
  return out;
}

std::vector<cd> route_nuclear(const LayerStack& st, const std::string& route,
                              double energy, double angle, const Grid& dets,
                              int modes, int subensembles, bool parallel) {
  if (route == "oracle")
    return nuclear_spectrum(st, energy, angle, dets, parallel);
  if (route == "green") {
    const LayerStack s2 = with_subensembles(st, subensembles);
    return reconstruct_reflection(build_level_scheme(s2, energy, angle), dets,
                                  parallel);
  }
  const LayerStack s2 = with_subensembles(st, subensembles);
  const auto setup =
      fewmode_setup(s2, FewModeBasis::first(modes, 0.0), energy, angle);
  return scattering_with_nuclei(setup.couplings, setup.g, setup.species, dets,
                                true, parallel);
}

std::vector<std::vector<double>> amplitude_rows(const Grid& axis,
                                                const std::vector<cd>& amps,
                                                double axis_scale) {
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < axis.count; ++i)
    rows.push_back({axis.at(i) * axis_scale, amps[i].real(), amps[i].imag(),
                    std::norm(amps[i])});
  return rows;
}

struct DevStats {
  double max_abs = 0.0, scale_rel = 0.0, scale = 0.0;
};

DevStats deviation(const std::vector<cd>& a, const std::vector<cd>& b) {
  DevStats d;
  for (size_t i = 0; i < a.size(); ++i) {
    d.max_abs = std::max(d.max_abs, std::abs(std::norm(a[i]) - std::norm(b[i])));
    d.scale = std::max(d.scale, std::norm(b[i]));
  }
  d.scale_rel = d.max_abs / std::max(d.scale, 1e-300);
  return d;
}

ordered_json scheme_to_json(const LevelScheme& s,
                            const Eigen::MatrixXcd& coupling,
                            const Eigen::VectorXcd& drive) {
  ordered_json j;
  j["angle_mrad"] = s.angle_rad * 1e3;
  j["energy_keV"] = s.energy_eV * 1e-3;
  ordered_json ens = ordered_json::array();
  for (const auto& e : s.ensembles) ens.push_back({{"z_nm", e.z_nm}});
  j["ensembles"] = ens;
  std::vector<double> cre, cim, dre, dim;
  for (int i = 0; i < coupling.rows(); ++i)
    for (int k = 0; k < coupling.cols(); ++k) {
      cre.push_back(coupling(i, k).real());
      cim.push_back(coupling(i, k).imag());
    }
  for (int i = 0; i < drive.size(); ++i) {
    dre.push_back(drive(i).real());
    dim.push_back(drive(i).imag());
  }
  j["coupling_re"] = cre;
  j["coupling_im"] = cim;
  j["drive_re"] = dre;
  j["drive_im"] = dim;
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write: " + path);
  out << text;
}

}  // namespace

std::vector<std::pair<double, double>> find_minima(
    const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<std::pair<double, double>> out;
  for (size_t i = 1; i + 1 < y.size(); ++i) {
    if (y[i] < y[i - 1] && y[i] < y[i + 1]) {
      // Parabolic refinement through the three samples.
      const double denom = y[i - 1] - 2.0 * y[i] + y[i + 1];
      double xm = x[i], ym = y[i];
      if (std::abs(denom) > 1e-300) {
        const double h = x[i + 1] - x[i];
        const double d = 0.5 * (y[i - 1] - y[i + 1]) / denom;
        xm = x[i] + d * h;
        ym = y[i] - 0.25 * (y[i - 1] - y[i + 1]) * d;
      }
      out.emplace_back(xm, ym);
    }
  }
  return out;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{
      "nucav: grazing-incidence x-ray cavity spectra and nuclear level "
      "schemes via multilayer, few-mode and Green's-function routes"};
  app.require_subcommand(1);

  std::string config, out, route = "oracle";
  int modes = 20, subensembles = -1;
  bool check = false, serial = false;
  double tol = 0.02;
  double energy = -1.0, angle_mrad = -1.0;
  double amin = 1.0, amax = 10.0;
  int apoints = 901;
  double dmin = -200.0, dmax = 200.0;
  int dpoints = 801;
  double emin = 13.4, emax = 15.4;
  int epoints = 201;
  double thick_layer = -1.0;
  std::string route_b = "fewmode", observable = "nuclear";
  std::string modes_list = "5,10,20,30", subs_list = "1,2,4,8";

  auto add_common = [&](CLI::App* c) {
    c->add_option("--config", config, "stack configuration (JSON)")
        ->required();
    c->add_option("--out", out, "output file path");
    c->add_option("--route", route, "oracle|fewmode|green");
    c->add_option("--modes", modes, "few-mode basis size (modes 1..N)");
    c->add_option("--subensembles", subensembles,
                  "override sub-ensembles per resonant layer");
    c->add_option("--energy", energy, "photon energy in eV");
    c->add_flag("--check", check, "exit nonzero if tolerance exceeded");
    c->add_option("--tol", tol, "tolerance for --check");
    c->add_flag("--serial", serial, "force the serial reference kernels");
  };

  auto* rocking = app.add_subcommand("rocking", "reflectance vs angle");
  add_common(rocking);
  rocking->add_option("--amin", amin, "start angle, mrad");
  rocking->add_option("--amax", amax, "stop angle, mrad");
  rocking->add_option("--apoints", apoints, "angle points");

  auto* map2d = app.add_subcommand("map2d", "empty-cavity energy-angle map");
  add_common(map2d);
  map2d->add_option("--amin", amin);
  map2d->add_option("--amax", amax);
  map2d->add_option("--apoints", apoints);
  map2d->add_option("--emin", emin, "start energy, keV");
  map2d->add_option("--emax", emax, "stop energy, keV");
  map2d->add_option("--epoints", epoints);

  auto* spectrum =
      app.add_subcommand("spectrum", "nuclear spectrum at fixed angle");
  add_common(spectrum);
  spectrum->add_option("--angle", angle_mrad, "incidence angle, mrad")
      ->required();
  spectrum->add_option("--dmin", dmin, "start detuning, gamma");
  spectrum->add_option("--dmax", dmax, "stop detuning, gamma");
  spectrum->add_option("--dpoints", dpoints);
  spectrum->add_option("--thick-layer", thick_layer,
                       "few-mode continuum limit for a layer this thick (nm)");

  auto* scheme =
      app.add_subcommand("scheme", "effective level scheme at fixed angle");
  add_common(scheme);
  scheme->add_option("--angle", angle_mrad, "incidence angle, mrad")
      ->required();

  auto* compare = app.add_subcommand("compare", "cross-route deviation report");
  add_common(compare);
  compare->add_option("--route-b", route_b, "second route");
  compare->add_option("--observable", observable, "nuclear|rocking");
  compare->add_option("--amin", amin);
  compare->add_option("--amax", amax);
  compare->add_option("--apoints", apoints);
  compare->add_option("--dmin", dmin);
  compare->add_option("--dmax", dmax);
  compare->add_option("--dpoints", dpoints);

  auto* converge = app.add_subcommand("converge", "convergence study");
  add_common(converge);
  converge->add_option("--angle", angle_mrad, "incidence angle, mrad")
      ->required();
  converge->add_option("--modes-list", modes_list, "few-mode basis sizes");
  converge->add_option("--subensembles-list", subs_list,
                       "green-route partition counts");
  converge->add_option("--dmin", dmin);
  converge->add_option("--dmax", dmax);
  converge->add_option("--dpoints", dpoints);

  auto* fano = app.add_subcommand(
      "fano", "Fano fits vs level-scheme parameters across the rocking curve");
  add_common(fano);
  fano->add_option("--amin", amin);
  fano->add_option("--amax", amax);
  fano->add_option("--apoints", apoints);
  fano->add_option("--dmin", dmin);
  fano->add_option("--dmax", dmax);
  fano->add_option("--dpoints", dpoints);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const LayerStack st = load_stack(config);
    if (energy <= 0) energy = default_energy(st);
    const bool parallel = !serial;

    if (rocking->parsed()) {
      const Grid angles{amin * 1e-3, amax * 1e-3, apoints};
      const auto amps = route_rocking(st, route, energy, angles, modes,
                                      parallel);
      const std::string csv = csv_to_string(
          "angle_mrad,Re_r,Im_r,R", amplitude_rows(angles, amps, 1e3));
      write_text(out.empty() ? "rocking.csv" : out, csv);
      return 0;
    }

    if (map2d->parsed()) {
      const Grid energies{emin * 1e3, emax * 1e3, epoints};
      const Grid angles{amin * 1e-3, amax * 1e-3, apoints};
      std::vector<cd> amps;
      if (route == "oracle") {
        amps = energy_angle_map(st, energies, angles, parallel);
      } else if (route == "fewmode") {
        amps.resize(static_cast<size_t>(epoints) * apoints);
        auto [n, L] = fewmode_interior(st);
        auto body = [&, n = n, L = L](int idx) {
          amps[idx] = build_couplings(FewModeBasis::first(modes, L), n,
                                      energies.at(idx / apoints),
                                      angles.at(idx % apoints))
                          .empty_cavity_amplitude();
        };
        parallel ? parallel_for(epoints * apoints, body)
                 : serial_for(epoints * apoints, body);
      } else {
        throw std::runtime_error("map2d supports routes oracle and fewmode");
      }
      std::vector<std::vector<double>> rows;
      for (int ie = 0; ie < epoints; ++ie)
        for (int ia = 0; ia < apoints; ++ia) {
          const cd r = amps[static_cast<size_t>(ie) * apoints + ia];
          rows.push_back({energies.at(ie) * 1e-3, angles.at(ia) * 1e3,
                          r.real(), r.imag(), std::norm(r)});
        }
      write_text(out.empty() ? "map2d.csv" : out,
                 csv_to_string("energy_keV,angle_mrad,Re_r,Im_r,R", rows));
      return 0;
    }

    if (spectrum->parsed()) {
      const Grid dets{dmin, dmax, dpoints};
      const double th = angle_mrad * 1e-3;
      std::vector<cd> amps;
      if (thick_layer > 0 && route == "fewmode") {
        const auto setup =
            fewmode_setup(st, FewModeBasis::first(modes, 0.0), energy, th);
        amps = scattering_thick_layer(setup.couplings, setup.species,
                                      thick_layer, dets, parallel);
      } else {
        amps = route_nuclear(st, route, energy, th, dets, modes, subensembles,
                             parallel);
      }
      write_text(out.empty() ? "spectrum.csv" : out,
                 csv_to_string("detuning_gamma,Re_r,Im_r,R",
                               amplitude_rows(dets, amps, 1.0)));
      return 0;
    }

    if (scheme->parsed()) {
      const double th = angle_mrad * 1e-3;
      ordered_json j;
      if (route == "fewmode") {
        const LayerStack s2 = with_subensembles(st, subensembles);
        const auto setup =
            fewmode_setup(s2, FewModeBasis::first(modes, 0.0), energy, th);
        const auto eff =
            effective_scheme_fm(setup.couplings, setup.g, setup.species);
        // Export in the Green's-function sign convention: shift = Re,
        // decay = 2 Im of the coupling entries.
        LevelScheme shell;
        shell.energy_eV = energy;
        shell.angle_rad = th;
        shell.ensembles = s2.sub_ensembles();
        Eigen::VectorXcd drive = eff.Omega / eff.Omega.norm();
        int imax = 0;
        for (int i = 1; i < drive.size(); ++i)
          if (std::abs(drive(i)) > std::abs(drive(imax))) imax = i;
        drive /= drive(imax) / std::abs(drive(imax));
        j = scheme_to_json(shell, -eff.Geff, drive);
      } else {
        const LayerStack s2 = with_subensembles(st, subensembles);
        const LevelScheme s = build_level_scheme(s2, energy, th);
        j = scheme_to_json(s, s.coupling, s.normalized_drive());
      }
      write_text(out.empty() ? "scheme.json" : out, j.dump(2) + "\n");
      return 0;
    }

    if (compare->parsed()) {
      const Grid angles{amin * 1e-3, amax * 1e-3, apoints};
      const Grid dets{dmin, dmax, dpoints};
      DevStats total;
      if (observable == "rocking") {
        const auto a = route_rocking(st, route, energy, angles, modes,
                                     parallel);
        const auto b = route_rocking(st, route_b, energy, angles, modes,
                                     parallel);
        total = deviation(a, b);
      } else {
        for (int ia = 0; ia < angles.count; ++ia) {
          const double th = angles.at(ia);
          const auto a = route_nuclear(st, route, energy, th, dets, modes,
                                       subensembles, parallel);
          const auto b = route_nuclear(st, route_b, energy, th, dets, modes,
                                       subensembles, parallel);
          const DevStats d = deviation(a, b);
          total.max_abs = std::max(total.max_abs, d.max_abs);
          total.scale = std::max(total.scale, d.scale);
        }
        total.scale_rel = total.max_abs / std::max(total.scale, 1e-300);
      }
      ordered_json j;
      j["route_a"] = route;
      j["route_b"] = route_b;
      j["observable"] = observable;
      j["grid"] = {{"angle_points", apoints}, {"detuning_points", dpoints}};
      j["max_abs_dev"] = total.max_abs;
      j["scale_relative_dev"] = total.scale_rel;
      j["tolerance"] = tol;
      const bool pass = total.max_abs <= tol;
      j["pass"] = pass;
      write_text(out.empty() ? "compare.json" : out, j.dump(2) + "\n");
      if (check && !pass) return 1;
      return 0;
    }

    if (converge->parsed()) {
      const Grid dets{dmin, dmax, dpoints};
      const double th = angle_mrad * 1e-3;
      const auto oracle = nuclear_spectrum(st, energy, th, dets, parallel);
      auto parse_ints = [](const std::string& s) {
        std::vector<int> v;
        size_t pos = 0;
        while (pos < s.size()) {
          size_t next = s.find(',', pos);
          if (next == std::string::npos) next = s.size();
          v.push_back(std::stoi(s.substr(pos, next - pos)));
          pos = next + 1;
        }
        return v;
      };
      std::vector<std::vector<double>> rows;
      std::string header;
      if (route == "green") {
        header = "subensembles,max_abs_dev,scale_relative_dev";
        for (int k : parse_ints(subs_list)) {
          const auto amps = route_nuclear(st, "green", energy, th, dets, modes,
                                          k, parallel);
          const DevStats d = deviation(amps, oracle);
          rows.push_back({static_cast<double>(k), d.max_abs, d.scale_rel});
        }
      } else {
        header = "modes,max_abs_dev,scale_relative_dev";
        for (int m : parse_ints(modes_list)) {
          const auto amps = route_nuclear(st, "fewmode", energy, th, dets, m,
                                          subensembles, parallel);
          const DevStats d = deviation(amps, oracle);
          rows.push_back({static_cast<double>(m), d.max_abs, d.scale_rel});
        }
      }
      write_text(out.empty() ? "converge.csv" : out,
                 csv_to_string(header, rows));
      return 0;
    }

    if (fano->parsed()) {
      if (apoints == 901) {  // keep the fit sweep light by default
        amin = 2.0;
        amax = 8.5;
        apoints = 27;
      }
      const Grid angles{amin * 1e-3, amax * 1e-3, apoints};
      const Grid dets{dmin, dmax, dpoints};
      const auto detv = dets.values();
      std::vector<std::vector<double>> rows(apoints);
      std::vector<double> devs(apoints, 0.0);
      std::vector<char> applicable(apoints, 0);
      auto body = [&](int ia) {
        const double th = angles.at(ia);
        const auto amps = nuclear_spectrum(st, energy, th, dets, false);
        std::vector<double> R(amps.size());
        for (size_t i = 0; i < amps.size(); ++i) R[i] = std::norm(amps[i]);
        const FanoFit f = fano_fit(detv, R);
        const LevelScheme s = build_level_scheme(st, energy, th);
        const double d11 = s.coupling(0, 0).real();
        const double g11 = 2.0 * s.coupling(0, 0).imag();
        // Fit resonance position corresponds to -Delta_11; fit width to the
        // natural linewidth plus the superradiant broadening.
        const double dx = f.delta1 - (-d11);
        const double dy = f.gamma1 - (1.0 + g11);
        const double ref = std::hypot(d11, 1.0 + g11);
        const double dev = std::hypot(dx, dy) / std::max(ref, 1e-300);
        rows[ia] = {th * 1e3, f.sigma0, f.q.real(), f.q.imag(), f.delta1,
                    f.gamma1, f.residual, -d11, 1.0 + g11, dev};
        if (f.residual < 1e-3) {
          applicable[ia] = 1;
          devs[ia] = dev;
        }
      };
      parallel ? parallel_for(apoints, body) : serial_for(apoints, body);
      write_text(
          out.empty() ? "fano.csv" : out,
          csv_to_string("angle_mrad,sigma0,Re_q,Im_q,delta1_gamma,"
                        "gamma1_gamma,residual,scheme_delta1_gamma,"
                        "scheme_gamma1_gamma,vector_relative_dev",
                        rows));
      if (check) {
        double worst = 0.0;
        for (int i = 0; i < apoints; ++i)
          if (applicable[i]) worst = std::max(worst, devs[i]);
        if (worst > tol) return 1;
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("nucav");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace nucav
