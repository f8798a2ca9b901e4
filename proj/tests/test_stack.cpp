#include <doctest.h>

#include "helpers.hpp"

using namespace nucav;
using namespace nucav::testing;
using nlohmann::json;

TEST_SUITE_BEGIN("stack");

TEST_CASE("parse bundled mirror-cavity config") {
  const LayerStack st = load_stack(config_path("mirror_cavity.json"));
  REQUIRE(st.layers.size() == 5);
  CHECK(st.layers.front().kind == LayerKind::SemiInfinite);
  CHECK(st.layers.back().kind == LayerKind::Mirror);
  CHECK(st.mirror_substrate());
  CHECK(st.total_interior_thickness() == doctest::Approx(28.5));
  REQUIRE(st.layers[2].resonant.has_value());
  CHECK(st.layers[2].resonant->abundance == doctest::Approx(0.95));
  CHECK(st.layers[2].thickness_nm == doctest::Approx(0.5));
  const auto ens = st.sub_ensembles();
  REQUIRE(ens.size() == 1);
  CHECK(ens[0].z_nm == doctest::Approx(14.25));
  CHECK(ens[0].t_nm == doctest::Approx(0.5));
}

TEST_CASE("parse EIT config: two doped layers inside the guiding region") {
  const LayerStack st = load_stack(config_path("eit_cavity1.json"));
  REQUIRE(st.layers.size() == 8);
  CHECK(!st.mirror_substrate());
  const auto ens = st.sub_ensembles();
  REQUIRE(ens.size() == 6);  // three sub-ensembles per resonant layer
  CHECK(ens[0].z_nm == doctest::Approx(1.5 + 6.0 + 0.5));
  CHECK(ens[5].z_nm == doctest::Approx(1.5 + 6.0 + 3.0 + 3.0 + 2.5));
}

TEST_CASE("trivial two-layer vacuum stack is valid") {
  const LayerStack st = load_stack(config_path("vacuum.json"));
  CHECK(st.layers.size() == 2);
  CHECK(st.interior_count() == 0);
}

TEST_CASE("serialize -> parse round trip reproduces the stack exactly") {
  const LayerStack st = load_stack(config_path("eit_cavity1.json"));
  const auto doc = serialize_stack(st);
  const LayerStack st2 = parse_stack(doc);
  const auto doc2 = serialize_stack(st2);
  CHECK(doc.dump() == doc2.dump());
  REQUIRE(st2.layers.size() == st.layers.size());
  for (size_t i = 0; i < st.layers.size(); ++i) {
    CHECK(st2.layers[i].kind == st.layers[i].kind);
    CHECK(st2.layers[i].thickness_nm == st.layers[i].thickness_nm);
    CHECK(st2.layers[i].material.delta == st.layers[i].material.delta);
    CHECK(st2.layers[i].material.beta_abs == st.layers[i].material.beta_abs);
    CHECK(st2.layers[i].resonant.has_value() ==
          st.layers[i].resonant.has_value());
    if (st.layers[i].resonant) {
      CHECK(st2.layers[i].resonant->abundance ==
            st.layers[i].resonant->abundance);
      CHECK(st2.layers[i].resonant->number_density_nm3 ==
            st.layers[i].resonant->number_density_nm3);
    }
  }
  CHECK(st2.partition_counts == st.partition_counts);
}

TEST_CASE("partition arithmetic") {
  Layer l{LayerKind::Finite, mat_fe(), 3.0, fe57()};
  SUBCASE("three equal slices") {
    const auto part = partition_layer(l, 10.0, 3);
    REQUIRE(part.size() == 3);
    CHECK(part[0].t_nm == doctest::Approx(1.0));
    CHECK(part[0].z_nm == doctest::Approx(10.5));
    CHECK(part[1].z_nm == doctest::Approx(11.5));
    CHECK(part[2].z_nm == doctest::Approx(12.5));
  }
  SUBCASE("single slice sits at the layer center") {
    const auto part = partition_layer(l, 10.0, 1);
    REQUIRE(part.size() == 1);
    CHECK(part[0].z_nm == doctest::Approx(11.5));
    CHECK(part[0].t_nm == doctest::Approx(3.0));
  }
  SUBCASE("invalid count") {
    CHECK_THROWS_AS(partition_layer(l, 10.0, 0), StackError);
  }
}

TEST_CASE("config errors are reported") {
  json doc = {
      {"materials", {{"vacuum", {{"delta", 0.0}, {"beta", 0.0}}}}},
      {"layers",
       {{{"material", "vacuum"}, {"thickness", "semi-infinite"}},
        {{"material", "unknowium"}, {"thickness_nm", 5.0}},
        {{"material", "vacuum"}, {"thickness", "semi-infinite"}}}}};
  CHECK_THROWS_WITH_AS(parse_stack(doc), "missing material: unknowium",
                       StackError);
  doc["layers"][1]["material"] = "vacuum";
  doc["layers"][1]["thickness_nm"] = -1.0;
  CHECK_THROWS_AS(parse_stack(doc), StackError);
}

TEST_CASE("area density of a sub-ensemble") {
  const auto ens = mirror_cavity().sub_ensembles();
  REQUIRE(ens.size() == 1);
  CHECK(ens[0].area_density() ==
        doctest::Approx(84.9 * 0.95 * 0.796 * 0.5).epsilon(1e-14));
}

TEST_SUITE_END();
