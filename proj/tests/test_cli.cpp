#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "helpers.hpp"
#include "nucav/cli.hpp"

using namespace nucav;
using namespace nucav::testing;

TEST_SUITE_BEGIN("cli");

namespace {

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Parse a numeric CSV with a header line into per-line vectors.
std::vector<std::vector<double>> parse_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("find_minima: parabolic refinement and monotone data") {
  std::vector<double> x, y;
  for (int i = 0; i <= 20; ++i) {
    x.push_back(i * 0.1);
    y.push_back((x.back() - 1.03) * (x.back() - 1.03) + 0.5);
  }
  const auto mins = find_minima(x, y);
  REQUIRE(mins.size() == 1);
  CHECK(mins[0].first == doctest::Approx(1.03).epsilon(1e-9));
  CHECK(mins[0].second == doctest::Approx(0.5).epsilon(1e-6));
  // Strictly monotone data has no interior minima.
  CHECK(find_minima(x, x).empty());
}

TEST_CASE("rocking on vacuum: zero reflectance everywhere") {
  const std::string out = tmp_path("nucav_vac_rock.csv");
  const int rc = run_cli({"rocking", "--config", config_path("vacuum.json"),
                          "--amin", "2", "--amax", "8", "--apoints", "13",
                          "--out", out});
  CHECK(rc == 0);
  const std::string text = slurp(out);
  CHECK(text.rfind("angle_mrad,Re_r,Im_r,R", 0) == 0);
  const auto rows = parse_csv(text);
  REQUIRE(rows.size() == 13);
  for (const auto& r : rows) {
    REQUIRE(r.size() == 4);
    CHECK(std::abs(r[3]) < 1e-20);
  }
  CHECK(rows.front()[0] == doctest::Approx(2.0));
  CHECK(rows.back()[0] == doctest::Approx(8.0));
}

TEST_CASE("rocking curve minima of the mirror cavity") {
  const std::string out = tmp_path("nucav_mc_rock.csv");
  REQUIRE(run_cli({"rocking", "--config", config_path("mirror_cavity.json"),
                   "--out", out}) == 0);
  const auto rows = parse_csv(slurp(out));
  REQUIRE(rows.size() == 901);
  std::vector<double> x, y;
  for (const auto& r : rows) {
    x.push_back(r[0]);
    y.push_back(r[3]);
  }
  const auto mins = find_minima(x, y);
  REQUIRE(!mins.empty());
  CHECK(mins[0].first == doctest::Approx(4.0954).epsilon(0.05));
  int below8 = 0;
  for (const auto& m : mins)
    if (m.first < 8.0) ++below8;
  CHECK(below8 == 4);
}

TEST_CASE("byte-identical reruns, including serial vs parallel") {
  const std::string a = tmp_path("nucav_det_a.csv");
  const std::string b = tmp_path("nucav_det_b.csv");
  const std::string c = tmp_path("nucav_det_c.csv");
  const std::vector<std::string> base{
      "spectrum", "--config", config_path("mirror_cavity.json"), "--angle",
      "4.0954", "--dmin", "-50", "--dmax", "50", "--dpoints", "101"};
  auto with = [&](std::vector<std::string> v,
                  std::initializer_list<std::string> extra) {
    v.insert(v.end(), extra);
    return v;
  };
  REQUIRE(run_cli(with(base, {"--out", a})) == 0);
  REQUIRE(run_cli(with(base, {"--out", b})) == 0);
  REQUIRE(run_cli(with(base, {"--out", c, "--serial"})) == 0);
  const std::string ta = slurp(a);
  CHECK(ta == slurp(b));
  CHECK(ta == slurp(c));
  CHECK(!ta.empty());
}

TEST_CASE("compare: pass and fail exit codes under --check") {
  const std::string out = tmp_path("nucav_cmp.json");
  const std::vector<std::string> base{
      "compare",  "--config", config_path("mirror_cavity.json"),
      "--route",  "oracle",   "--route-b",
      "fewmode",  "--observable", "rocking",
      "--amin",   "2",        "--amax",
      "8",        "--apoints", "25",
      "--modes",  "8",        "--out",
      out,        "--check"};
  auto with_tol = [&](const std::string& tol) {
    auto v = base;
    v.push_back("--tol");
    v.push_back(tol);
    return v;
  };
  CHECK(run_cli(with_tol("1e-4")) == 0);
  nlohmann::json j = nlohmann::json::parse(slurp(out));
  CHECK(j["pass"] == true);
  CHECK(j["max_abs_dev"].get<double>() < 1e-4);
  CHECK(run_cli(with_tol("1e-15")) == 1);
  j = nlohmann::json::parse(slurp(out));
  CHECK(j["pass"] == false);
}

TEST_CASE("scheme export: JSON layout and cross-route consistency") {
  const std::string g = tmp_path("nucav_scheme_g.json");
  const std::string f = tmp_path("nucav_scheme_f.json");
  REQUIRE(run_cli({"scheme", "--config", config_path("mirror_cavity.json"),
                   "--angle", "4.0954", "--route", "green", "--out", g}) ==
          0);
  REQUIRE(run_cli({"scheme", "--config", config_path("mirror_cavity.json"),
                   "--angle", "4.0954", "--route", "fewmode", "--modes", "30",
                   "--out", f}) == 0);
  const nlohmann::json jg = nlohmann::json::parse(slurp(g));
  const nlohmann::json jf = nlohmann::json::parse(slurp(f));
  for (const char* key : {"angle_mrad", "energy_keV", "ensembles",
                          "coupling_re", "coupling_im", "drive_re",
                          "drive_im"}) {
    CHECK(jg.contains(key));
    CHECK(jf.contains(key));
  }
  CHECK(jg["ensembles"].size() == 1);
  CHECK(jg["ensembles"][0]["z_nm"].get<double>() == doctest::Approx(14.25));
  // The few-mode export uses the same sign convention; the self-couplings
  // agree between routes at the few-percent level.
  const double gre = jg["coupling_re"][0].get<double>();
  const double gim = jg["coupling_im"][0].get<double>();
  const double fre = jf["coupling_re"][0].get<double>();
  const double fim = jf["coupling_im"][0].get<double>();
  CHECK(std::hypot(fre - gre, fim - gim) < 0.1 * std::hypot(gre, gim));
  CHECK(gim > 0.0);  // decay positive in this convention
}

TEST_CASE("spectrum routes write consistent reflectances") {
  const std::string o = tmp_path("nucav_sp_o.csv");
  const std::string gr = tmp_path("nucav_sp_g.csv");
  const std::vector<std::string> base{
      "spectrum", "--config", config_path("mirror_cavity.json"), "--angle",
      "4.0954",   "--dmin",   "-40", "--dmax", "40", "--dpoints", "41"};
  auto with = [&](std::vector<std::string> v,
                  std::initializer_list<std::string> extra) {
    v.insert(v.end(), extra);
    return v;
  };
  REQUIRE(run_cli(with(base, {"--route", "oracle", "--out", o})) == 0);
  REQUIRE(run_cli(with(base, {"--route", "green", "--out", gr})) == 0);
  const auto ro = parse_csv(slurp(o));
  const auto rg = parse_csv(slurp(gr));
  REQUIRE(ro.size() == 41);
  REQUIRE(rg.size() == 41);
  for (size_t i = 0; i < ro.size(); ++i) {
    CHECK(ro[i][0] == rg[i][0]);
    CHECK(std::abs(ro[i][3] - rg[i][3]) < 0.01);
  }
}

TEST_CASE("errors are reported with exit code 2") {
  CHECK(run_cli({"rocking", "--config", "/nonexistent/stack.json"}) == 2);
  // Few-mode route rejects a stack without a mirror substrate.
  CHECK(run_cli({"rocking", "--config", config_path("eit_cavity1.json"),
                 "--route", "fewmode", "--apoints", "3"}) == 2);
}

TEST_SUITE_END();
