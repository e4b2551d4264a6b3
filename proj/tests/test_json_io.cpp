#include "k3lat/fixtures.hpp"
#include "k3lat/json_io.hpp"

#include <doctest.h>

using namespace k3lat;
using nlohmann::json;

TEST_SUITE("json_io") {

TEST_CASE("lattice round trip") {
  const Lattice k7 = make_named("K7");
  const json j = lattice_to_json(k7);
  CHECK(j.at("gram") == json::parse("[[-4, 1], [1, -2]]"));
  CHECK(lattice_from_json(j) == k7);
  CHECK(lattice_from_json(j).label() == "K7");

  const Lattice big = lattice_from_json(
      json::parse(R"({"gram": [["123456789012345678901234567890"]]})"));
  CHECK(big.gram()(0, 0) == Integer("123456789012345678901234567890"));
  CHECK(lattice_to_json(big)["gram"][0][0] == "123456789012345678901234567890");
}

TEST_CASE("malformed lattices") {
  CHECK_THROWS_AS(lattice_from_json(json::parse("{}")), InputError);
  CHECK_THROWS_AS(lattice_from_json(json::parse(R"({"gram": 3})")), InputError);
  CHECK_THROWS_AS(lattice_from_json(json::parse(R"({"gram": [[1, 2]]})")),
                  InputError);
  CHECK_THROWS_AS(lattice_from_json(json::parse(R"({"gram": [[0, 1], [2, 0]]})")),
                  InputError);
  CHECK_THROWS_AS(lattice_from_json(json::parse(R"({"gram": [[1.5]]})")),
                  InputError);
  CHECK_THROWS_AS(lattice_from_json(json::parse(R"({"gram": [["x"]]})")),
                  InputError);
  CHECK_THROWS_AS(lattice_from_json(json::parse("[1, 2]")), InputError);
}

TEST_CASE("sublattice round trip") {
  const Sublattice s(make_named("U"), int_matrix({{1}, {-1}}), "root");
  const json j = sublattice_to_json(s);
  CHECK(j["coords"] == json::parse("[[1, -1]]"));
  const Sublattice back = sublattice_from_json(j);
  CHECK(back.coords() == s.coords());
  CHECK(back.ambient() == s.ambient());
  CHECK_THROWS_AS(
      sublattice_from_json(json::parse(
          R"({"ambient": {"gram": [[0, 1], [1, 0]]}, "coords": [[1, 0, 0]]})")),
      InputError);
}

TEST_CASE("Weierstrass models") {
  const WeierstrassModel ast = weierstrass_from_json(json::parse(
      R"({"a4_cubed": "-27/4", "a6": [-1, 0, 0, 0, 0, 0, 0, 1]})"));
  CHECK(discriminant_poly(ast) ==
        discriminant_poly(fixtures::weierstrass("AST")));
  CHECK_FALSE(ast.a4.has_value());

  const WeierstrassModel ko = weierstrass_from_json(
      json::parse(R"({"a4": [0, 0, 0, 1], "a6": [0, 0, 0, 0, 0, 0, 0, 0, 1]})"));
  REQUIRE(ko.a4);
  CHECK(discriminant_poly(ko) == discriminant_poly(fixtures::weierstrass("Ko")));

  CHECK_THROWS_AS(weierstrass_from_json(json::parse(R"({"a6": [1]})")),
                  InputError);
  CHECK_THROWS_AS(weierstrass_from_json(json::parse(R"({"a4": [1]})")),
                  InputError);
  CHECK_THROWS_AS(
      weierstrass_from_json(json::parse(R"({"a4": ["1/0"], "a6": [1]})")),
      InputError);
  CHECK_THROWS_AS(weierstrass_from_json(json::parse(
                      R"({"a4": [2], "a4_cubed": 7, "a6": [1]})")),
                  InputError);
}

TEST_CASE("fibration models") {
  const json j = json::parse(R"({
    "fibers": [
      {"place": "t=0", "type": "I7", "identity": "G7", "prefix": "G"},
      {"place": "t=inf", "type": "II*", "identity": "T1", "prefix": "T"},
      {"place": "t^7 - 2 = 0", "type": "I_1", "count": 7}
    ],
    "mw_rank": 0})");
  const FibrationModel f = fibration_from_json(j);
  CHECK(f.euler_sum() == 24);
  CHECK(f.shioda_tate_rank() == 16);
  CHECK(build_neron_severi(f).lattice.determinant() == -7);
  CHECK(fibration_from_json(fibration_to_json(f)).euler_sum() == 24);

  CHECK_THROWS_AS(fibration_from_json(json::parse(R"({"fibers": []})")),
                  InputError);
  CHECK_THROWS_AS(
      fibration_from_json(json::parse(
          R"({"fibers": [{"place": "t=0", "type": "I9*x"}], "mw_rank": 0})")),
      InputError);
  CHECK_THROWS_AS(
      fibration_from_json(json::parse(
          R"({"fibers": [{"type": "I7"}], "mw_rank": 0})")),
      InputError);
}

TEST_CASE("glue solutions serialize exact integers as strings") {
  const NeronSeveriModel ns = build_neron_severi(fixtures::ast_fibration());
  GlueOptions opts;
  opts.positive_against = ns.fiber_class;
  const GlueSolution g =
      solve_glue(ns.lattice, extract_chain(ns, fixtures::chain("A15-chain-1")),
                 opts);
  const json j = glue_to_json(g);
  CHECK(j["n"] == "16");
  CHECK(j["H_square"] == "112");
  CHECK(j["a"][0] == "3");
  CHECK(j["a"].size() == 15);
  CHECK(j["h_plus"].size() == 16);
  CHECK(j["h_plus"][0].is_string());
}

}
