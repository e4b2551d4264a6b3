#include "k3lat/exact.hpp"
#include "k3lat/lattice.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace k3lat;

namespace {

void check_signature(const Lattice& l) {
  const Signature s = signature(l);
  const auto f = oracle::float_signature(l.gram());
  CHECK(s.positive == f.positive);
  CHECK(s.negative == f.negative);
  CHECK(s.zero == f.zero);
}

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("A_n determinants follow the tridiagonal recurrence") {
  for (int n = 1; n <= 15; ++n) {
    CAPTURE(n);
    const Lattice a = root_lattice_a(n);
    CHECK(a.rank() == n);
    CHECK(a.is_even());
    CHECK(a.determinant() == oracle::a_n_det(n));
  }
  CHECK(abs_value(make_named("A15").determinant()) == 16);
}

TEST_CASE("D and E determinants") {
  for (int n = 4; n <= 9; ++n) {
    CHECK(abs_value(root_lattice_d(n).determinant()) == 4);
  }
  CHECK(abs_value(root_lattice_e(6).determinant()) == 3);
  CHECK(abs_value(root_lattice_e(7).determinant()) == 2);
  CHECK(root_lattice_e(8).determinant() == 1);
  CHECK(oracle::elimination_det(root_lattice_e(8).gram()) == 1);
  CHECK(signature(root_lattice_e(8)) == Signature{0, 8, 0});
}

TEST_CASE("K7 is even, negative definite, det 7") {
  const Lattice k7 = make_named("K7");
  CHECK(k7.gram() == int_matrix({{-4, 1}, {1, -2}}));
  CHECK(k7.is_even());
  CHECK(k7.determinant() == 7);
  CHECK(signature(k7) == Signature{0, 2, 0});
  const DiscriminantGroup g = discriminant_group(k7);
  CHECK(g.invariant_factors == std::vector<Integer>{7});
}

TEST_CASE("U + E8 + A6 invariants") {
  const Lattice s = make_named("U+E8+A6");
  CHECK(s.rank() == 16);
  CHECK(s.is_even());
  CHECK(s.determinant() == oracle::elimination_det(s.gram()));
  CHECK(abs_value(s.determinant()) == 7);
  CHECK(signature(s) == Signature{1, 15, 0});
  check_signature(s);
  CHECK(make_named("U\xE2\x8A\x95" "E8\xE2\x8A\x95" "A6") == s);
}

TEST_CASE("hyperbolic planes and rank-one lattices") {
  CHECK(make_named("U").gram() == int_matrix({{0, 1}, {1, 0}}));
  CHECK(make_named("U(7)").gram() == int_matrix({{0, 7}, {7, 0}}));
  CHECK(signature(make_named("U")) == Signature{1, 1, 0});
  CHECK(make_named("Z(112)").gram() == int_matrix({{112}}));
  CHECK_FALSE(make_named("Z(3)").is_even());
  CHECK(rescale(make_named("U"), 7) == make_named("U(7)"));
}

TEST_CASE("named lattice errors") {
  CHECK_THROWS_AS(make_named("Q7"), std::invalid_argument);
  CHECK_THROWS_AS(make_named("D3"), std::invalid_argument);
  CHECK_THROWS_AS(make_named("E9"), std::invalid_argument);
  CHECK_THROWS_AS(make_named("A0"), std::invalid_argument);
  CHECK_THROWS_AS(make_named(""), std::invalid_argument);
  CHECK_THROWS_AS(Lattice(int_matrix({{0, 1}, {2, 0}})), std::invalid_argument);
}

TEST_CASE("signatures agree with floating point eigenvalues") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 80; ++trial) {
    const Index n = 1 + static_cast<Index>(rng() % 6);
    CAPTURE(trial);
    check_signature(Lattice(oracle::random_symmetric_even(rng, n, 4)));
  }
  check_signature(Lattice(int_matrix({{0, 0}, {0, -2}})));
}

TEST_CASE("discriminant group of A15 is Z/16 with q = -15/16") {
  const DiscriminantGroup g = discriminant_group(make_named("A15"));
  REQUIRE(g.invariant_factors == std::vector<Integer>{16});
  CHECK(g.size() == 16);
  CHECK(g.qvalues[0] == Rational(17, 16));
  // q(k w) = -15 k^2 / 16 mod 2 for every element.
  std::multiset<Rational> got, want;
  for (std::size_t x = 0; x < g.size(); ++x) got.insert(g.q(x));
  for (long k = 0; k < 16; ++k) {
    want.insert(reduce_mod(oracle::frac(-15 * k * k, 16), 2));
  }
  CHECK(got == want);
}

TEST_CASE("discriminant group orders match the minors oracle") {
  std::mt19937 rng(99);
  int tested = 0;
  while (tested < 40) {
    const Index n = 1 + static_cast<Index>(rng() % 4);
    const IntMatrix gram = oracle::random_symmetric_even(rng, n, 4);
    if (oracle::elimination_det(gram) == 0) continue;
    ++tested;
    const DiscriminantGroup g = discriminant_group(Lattice(gram));
    std::vector<Integer> expected;
    for (const auto& d : oracle::invariant_factors_from_minors(gram)) {
      if (abs_value(d) != 1) expected.push_back(abs_value(d));
    }
    CAPTURE(tested);
    CHECK(g.invariant_factors == expected);
    CHECK(g.order() == abs_value(oracle::elimination_det(gram)));
    for (const auto& gen : g.generators) {
      // Each generator pairs integrally with the lattice.
      CHECK(is_integral(RatMatrix(to_rational(gram) * gen)));
    }
  }
  CHECK_THROWS_AS(discriminant_group(Lattice(int_matrix({{0}}))),
                  std::invalid_argument);
}

TEST_CASE("group arithmetic") {
  const DiscriminantGroup g = discriminant_group(make_named("A1+A3"));
  CHECK(g.size() == 8);
  for (std::size_t x = 0; x < g.size(); ++x) {
    CHECK(g.element_index(g.coefficients(x)) == x);
    CHECK(g.add(x, g.scale(x, -1)) == 0);
    CHECK(g.scale(x, g.element_order(x)) == 0);
    CHECK(discriminant_q(make_named("A1+A3"), g.lift(x)) == g.q(x));
  }
}

TEST_CASE("glue compatibility") {
  CHECK(glue_compatible(make_named("A1"), make_named("Z(2)")));
  CHECK_FALSE(glue_compatible(make_named("A1"), make_named("A1")));
  CHECK(glue_compatible(make_named("A2"), make_named("E6")));
  CHECK_FALSE(glue_compatible(make_named("A2"), make_named("A1")));
  CHECK(glue_compatible(make_named("E8"), make_named("U")));
}

}
