#include "k3lat/exact.hpp"
#include "k3lat/fibration.hpp"
#include "k3lat/fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace k3lat;

namespace {

RationalPoly t_pow(int k) { return RationalPoly::t().pow(k); }
RationalPoly c(long p, long q = 1) { return RationalPoly(Rational(p, q)); }

const FiberReport* find(const K3Analysis& a, Place::Kind kind) {
  for (const auto& f : a.fibers) {
    if (f.place.kind == kind) return &f;
  }
  return nullptr;
}

}  // namespace

TEST_SUITE("fibration") {

TEST_CASE("Kodaira catalog") {
  struct Row {
    const char* name;
    int euler;
    int components;
    const char* root;
  };
  const Row rows[] = {{"I1", 1, 1, ""},     {"I7", 7, 7, "A6"},
                      {"II", 2, 1, ""},     {"III", 3, 2, "A1"},
                      {"IV", 4, 3, "A2"},   {"I0*", 6, 5, "D4"},
                      {"I3*", 9, 8, "D7"},  {"IV*", 8, 7, "E6"},
                      {"III*", 9, 8, "E7"}, {"II*", 10, 9, "E8"}};
  for (const auto& r : rows) {
    CAPTURE(r.name);
    const KodairaType k = KodairaType::parse(r.name);
    CHECK(k.name() == r.name);
    CHECK(k.euler() == r.euler);
    CHECK(k.components() == r.components);
    CHECK(k.root_lattice() == r.root);
  }
  CHECK(KodairaType::parse("I_7") == KodairaType::parse("I7"));
  CHECK_THROWS_AS(KodairaType::parse("V"), std::invalid_argument);
}

TEST_CASE("valuation table in characteristic zero") {
  CHECK(kodaira_from_valuations(0, 0, 7).name() == "I7");
  CHECK(kodaira_from_valuations(8, 5, 10).name() == "II*");
  CHECK(kodaira_from_valuations(3, 8, 9).name() == "III*");
  CHECK(kodaira_from_valuations(5, 4, 8).name() == "IV*");
  CHECK(kodaira_from_valuations(1, 1, 2).name() == "II");
  CHECK(kodaira_from_valuations(1, 3, 3).name() == "III");
  CHECK(kodaira_from_valuations(3, 2, 4).name() == "IV");
  CHECK(kodaira_from_valuations(2, 3, 6).name() == "I0*");
  CHECK(kodaira_from_valuations(2, 3, 8).name() == "I2*");
  CHECK(kodaira_from_valuations(0, 0, 1).name() == "I1");
  CHECK_THROWS_AS(kodaira_from_valuations(4, 6, 12), NonMinimalPlace);
  CHECK_THROWS_AS(kodaira_from_valuations(0, 0, 0), std::invalid_argument);
}

TEST_CASE("discriminants of the two models") {
  const WeierstrassModel ast = fixtures::weierstrass("AST");
  const WeierstrassModel ko = fixtures::weierstrass("Ko");
  CHECK(discriminant_poly(ast) == c(-432) * t_pow(7) * (t_pow(7) - c(2)));
  CHECK(discriminant_poly(ko) == c(-16) * t_pow(9) * (c(4) + c(27) * t_pow(7)));

  // Pointwise: -16 (4 a4^3 + 27 a6^2) evaluated directly.
  for (long p = -3; p <= 3; ++p) {
    for (long q : {1L, 2L, 3L}) {
      const Rational x = oracle::frac(p, q);
      const Rational a6 = x * x * x * x * x * x * x - 1;
      const Rational direct = -16 * (4 * Rational(-27, 4) + 27 * a6 * a6);
      CHECK(discriminant_poly(ast)(x) == direct);
      const Rational a4 = x * x * x;
      const Rational b6 = a4 * a4 * x * x;
      CHECK(discriminant_poly(ko)(x) ==
            -16 * (4 * a4 * a4 * a4 + 27 * b6 * b6));
    }
  }
  const WeierstrassModel flat = WeierstrassModel::from_a4(c(0), c(1));
  CHECK(discriminant_poly(flat) == c(-432));
}

TEST_CASE("AST: I7 at 0, II* at infinity, seven I1") {
  const K3Analysis a = analyze_k3(fixtures::weierstrass("AST"), 16);
  REQUIRE(a.fibers.size() == 3);
  const FiberReport* zero = find(a, Place::Kind::Zero);
  const FiberReport* inf = find(a, Place::Kind::Infinity);
  const FiberReport* rest = find(a, Place::Kind::Factor);
  REQUIRE(zero);
  REQUIRE(inf);
  REQUIRE(rest);
  CHECK(zero->kodaira.name() == "I7");
  CHECK(std::tuple(zero->v_a4, zero->v_a6, zero->v_disc) == std::tuple(0, 0, 7));
  CHECK(inf->kodaira.name() == "II*");
  CHECK(std::tuple(inf->v_a4, inf->v_a6, inf->v_disc) == std::tuple(8, 5, 10));
  CHECK(rest->kodaira.name() == "I1");
  CHECK(rest->place.count == 7);
  CHECK(rest->place.factor == t_pow(7) - c(2));
  CHECK(rest->place.label() == "t^7 - 2 = 0");
  CHECK(a.euler_sum == 24);
  CHECK(a.euler_ok);
  CHECK(a.implied_mw_rank == 0);
  CHECK(a.model.shioda_tate_rank() == 16);
}

TEST_CASE("Ko: III* at 0, IV* at infinity, seven I1") {
  const K3Analysis a = analyze_k3(fixtures::weierstrass("Ko"), 16);
  REQUIRE(a.fibers.size() == 3);
  const FiberReport* zero = find(a, Place::Kind::Zero);
  const FiberReport* inf = find(a, Place::Kind::Infinity);
  const FiberReport* rest = find(a, Place::Kind::Factor);
  REQUIRE(zero);
  REQUIRE(inf);
  REQUIRE(rest);
  CHECK(zero->kodaira.name() == "III*");
  CHECK(std::tuple(zero->v_a4, zero->v_a6, zero->v_disc) == std::tuple(3, 8, 9));
  CHECK(inf->kodaira.name() == "IV*");
  CHECK(std::tuple(inf->v_a4, inf->v_a6, inf->v_disc) == std::tuple(5, 4, 8));
  CHECK(rest->place.count == 7);
  CHECK(rest->place.primitive_factor() ==
        std::vector<Integer>{4, 0, 0, 0, 0, 0, 0, 27});
  CHECK(a.euler_sum == 24);
  CHECK(a.implied_mw_rank == 1);
}

TEST_CASE("places with repeated roots are split by multiplicity") {
  // a4 = 0, a6 = (t - 1)^2 (t + 1): IV at t = 1 and II at t = -1.
  const RationalPoly a6 = (RationalPoly::t() - c(1)).pow(2) *
                          (RationalPoly::t() + c(1));
  const K3Analysis a = analyze_k3(WeierstrassModel::from_a4(c(0), a6));
  bool saw_iv = false, saw_ii = false;
  for (const auto& f : a.fibers) {
    if (f.place.label() == "t=1") saw_iv = f.kodaira.name() == "IV";
    if (f.place.label() == "t=-1") saw_ii = f.kodaira.name() == "II";
  }
  CHECK(saw_iv);
  CHECK(saw_ii);
  CHECK_FALSE(a.euler_ok);
}

TEST_CASE("K3 bounds and degenerate models") {
  CHECK_THROWS_AS(WeierstrassModel::from_a4(c(0), t_pow(13) + c(1)).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(WeierstrassModel::from_a4(t_pow(9), c(1)).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(WeierstrassModel::from_a4(c(0), c(0)).validate(),
                  std::invalid_argument);
  const K3Analysis smooth = analyze_k3(WeierstrassModel::from_a4(c(1), c(1)));
  CHECK(smooth.euler_sum == 0);
  CHECK_FALSE(smooth.euler_ok);
  // t^4 | a4 and t^6 | a6 at t = 0.
  const K3Analysis nonmin =
      analyze_k3(WeierstrassModel::from_a4(t_pow(4), t_pow(6) + t_pow(7)));
  CHECK_FALSE(nonmin.issues.empty());
}

TEST_CASE("fiber diagrams satisfy the multiplicity balance") {
  for (const char* name : {"I7", "I0*", "I2*", "IV*", "III*", "II*", "IV",
                           "III"}) {
    CAPTURE(name);
    const FiberDiagram d = fiber_diagram(KodairaType::parse(name));
    const auto m = static_cast<Index>(d.multiplicity.size());
    REQUIRE(d.intersection.rows() == m);
    for (Index v = 0; v < m; ++v) {
      Integer sum = 0;
      for (Index w = 0; w < m; ++w) {
        sum += d.intersection(v, w) * d.multiplicity[static_cast<std::size_t>(w)];
      }
      CHECK(sum == 0);
    }
  }
  const FiberDiagram e8 = fiber_diagram(KodairaType::parse("II*"));
  CHECK(e8.multiplicity == std::vector<int>{1, 2, 3, 4, 5, 6, 4, 2, 3});
  // The component of multiplicity 6 meets those of multiplicity 5, 4, 3.
  CHECK(e8.intersection(5, 4) == 1);
  CHECK(e8.intersection(5, 6) == 1);
  CHECK(e8.intersection(5, 8) == 1);
  CHECK(2 * 6 == 5 + 4 + 3);
}

TEST_CASE("NS of the AST fibration") {
  const NeronSeveriModel ns = build_neron_severi(fixtures::ast_fibration());
  CHECK(ns.lattice.rank() == 16);
  CHECK(ns.lattice.is_even());
  CHECK(ns.lattice.determinant() == -7);
  CHECK(oracle::elimination_det(ns.lattice.gram()) == -7);
  const auto s = oracle::float_signature(ns.lattice.gram());
  CHECK(s.positive == 1);
  CHECK(s.negative == 15);
  // Isometric discriminant forms: anti-isometric to the negated lattice.
  CHECK(glue_compatible(ns.lattice, rescale(make_named("U+E8+A6"), -1)));
  CHECK(discriminant_group(ns.lattice).invariant_factors ==
        std::vector<Integer>{7});
  CHECK(fixtures::ast_fibration().shioda_tate_rank() == ns.lattice.rank());

  const auto& l = ns.lattice;
  CHECK(l.pairing(ns.curve("S"), ns.curve("S")) == -2);
  CHECK(l.pairing(ns.curve("S"), ns.curve("F")) == 1);
  CHECK(l.pairing(ns.curve("F"), ns.curve("F")) == 0);
  CHECK(l.pairing(ns.curve("S"), ns.curve("G7")) == 1);
  CHECK(l.pairing(ns.curve("S"), ns.curve("T1")) == 1);
  CHECK(l.pairing(ns.curve("S"), ns.curve("G1")) == 0);
  CHECK(l.pairing(ns.curve("G7"), ns.curve("G7")) == -2);
  CHECK(l.pairing(ns.curve("G7"), ns.curve("G1")) == 1);
  CHECK(l.pairing(ns.curve("G7"), ns.curve("G6")) == 1);
  CHECK(l.pairing(ns.curve("T6"), ns.curve("T9")) == 1);
  CHECK(l.pairing(ns.curve("T1"), ns.curve("F")) == 0);
  CHECK_THROWS_AS(ns.curve("X1"), std::invalid_argument);
}

TEST_CASE("NS builder rejects bad fibrations") {
  FibrationModel toy;
  toy.fibers.push_back({"t=0", KodairaType::parse("I7"), "G7", "G", 1});
  CHECK_THROWS_AS(build_neron_severi(toy), std::invalid_argument);

  FibrationModel ranked = fixtures::ast_fibration();
  ranked.mw_rank = 1;
  CHECK_THROWS_AS(build_neron_severi(ranked), std::invalid_argument);

  FibrationModel bad_identity = fixtures::ast_fibration();
  bad_identity.fibers[1].identity = "T6";
  CHECK_THROWS_AS(build_neron_severi(bad_identity), std::invalid_argument);
}

TEST_CASE("chain extraction") {
  const NeronSeveriModel ns = build_neron_severi(fixtures::ast_fibration());
  for (const auto& name : fixtures::chain_names()) {
    CAPTURE(name);
    const Sublattice s = extract_chain(ns, fixtures::chain(name));
    CHECK(s.induced().gram() == make_named("A15").gram());
    CHECK(abs_value(oracle::cofactor_det(s.induced().gram())) == 16);
  }
  auto with_branch = fixtures::chain("A15-chain-1");
  with_branch.back() = "T9";
  CHECK_THROWS_AS(extract_chain(ns, with_branch), std::invalid_argument);
  CHECK_THROWS_AS(fixtures::chain("A15-chain-3"), std::invalid_argument);
  CHECK_THROWS_AS(fixtures::weierstrass("X"), std::invalid_argument);
}

}
