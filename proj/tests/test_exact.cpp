#include "k3lat/exact.hpp"
#include "k3lat/lattice.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace k3lat;

namespace {

void check_hermite(const IntMatrix& m) {
  const HermiteForm h = hermite_normal_form(m);
  REQUIRE(h.transform.rows() == m.rows());
  CHECK(h.transform * m == h.hnf);
  CHECK(abs_value(oracle::elimination_det(h.transform)) == 1);

  Index pivot_col = -1;
  for (Index r = 0; r < h.hnf.rows(); ++r) {
    Index c = 0;
    while (c < h.hnf.cols() && h.hnf(r, c) == 0) ++c;
    if (c == h.hnf.cols()) {
      CHECK(r >= h.rank);
      continue;
    }
    CHECK(r < h.rank);
    CHECK(c > pivot_col);
    pivot_col = c;
    CHECK(h.hnf(r, c) > 0);
    for (Index above = 0; above < r; ++above) {
      CHECK(h.hnf(above, c) >= 0);
      CHECK(h.hnf(above, c) < h.hnf(r, c));
    }
  }
}

void check_smith(const IntMatrix& m) {
  const SmithForm s = smith_normal_form(m);
  IntMatrix d = IntMatrix::Zero(m.rows(), m.cols());
  for (std::size_t i = 0; i < s.invariant_factors.size(); ++i) {
    d(static_cast<Index>(i), static_cast<Index>(i)) = s.invariant_factors[i];
  }
  CHECK(s.left * m * s.right == d);
  CHECK(abs_value(oracle::elimination_det(s.left)) == 1);
  CHECK(abs_value(oracle::elimination_det(s.right)) == 1);
  for (std::size_t i = 0; i + 1 < s.invariant_factors.size(); ++i) {
    const Integer& a = s.invariant_factors[i];
    const Integer& b = s.invariant_factors[i + 1];
    CHECK(a >= 0);
    if (a == 0) {
      CHECK(b == 0);
    } else {
      CHECK(b % a == 0);
    }
  }
}

}  // namespace

TEST_SUITE("exact") {

TEST_CASE("hermite form of a 2x2 example") {
  const IntMatrix m = int_matrix({{2, 4}, {6, 8}});
  const HermiteForm h = hermite_normal_form(m);
  CHECK(h.hnf == int_matrix({{2, 0}, {0, 4}}));
  CHECK(h.rank == 2);
  check_hermite(m);
}

TEST_CASE("hermite form of the A15 Gram matrix has pivot product 16") {
  const IntMatrix g = make_named("A15").gram();
  const HermiteForm h = hermite_normal_form(g);
  Integer product = 1;
  for (Index i = 0; i < h.rank; ++i) product *= h.hnf(i, i);
  CHECK(h.rank == 15);
  CHECK(product == 16);
  CHECK(abs_value(oracle::cofactor_det(g)) == 16);
}

TEST_CASE("hermite form handles zero and rank-deficient input") {
  check_hermite(IntMatrix::Zero(3, 2));
  const IntMatrix m = int_matrix({{1, 2, 3}, {2, 4, 6}, {0, 0, 5}});
  check_hermite(m);
  CHECK(hermite_normal_form(m).rank == 2);
}

TEST_CASE("random hermite and smith forms satisfy their defining identities") {
  std::mt19937 rng(20261018);
  for (int trial = 0; trial < 150; ++trial) {
    const Index rows = 1 + static_cast<Index>(rng() % 6);
    const Index cols = 1 + static_cast<Index>(rng() % 6);
    const IntMatrix m = oracle::random_matrix(rng, rows, cols, 9);
    CAPTURE(trial);
    check_hermite(m);
    check_smith(m);
  }
}

TEST_CASE("smith invariant factors agree with gcds of minors") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const Index rows = 1 + static_cast<Index>(rng() % 4);
    const Index cols = 1 + static_cast<Index>(rng() % 4);
    const IntMatrix m = oracle::random_matrix(rng, rows, cols, 6);
    CAPTURE(trial);
    CHECK(smith_normal_form(m).invariant_factors ==
          oracle::invariant_factors_from_minors(m));
  }
  CHECK(smith_normal_form(int_matrix({{2, 0}, {0, 3}})).invariant_factors ==
        std::vector<Integer>{1, 6});
}

TEST_CASE("bareiss determinant matches cofactor expansion and elimination") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 120; ++trial) {
    const Index n = 1 + static_cast<Index>(rng() % 6);
    const IntMatrix m = oracle::random_matrix(rng, n, n, 12);
    CAPTURE(trial);
    CHECK(det_exact(m) == oracle::elimination_det(m));
    if (n <= 5) CHECK(det_exact(m) == oracle::cofactor_det(m));
  }
  CHECK(det_exact(IntMatrix(0, 0)) == 1);
  CHECK_THROWS_AS(det_exact(IntMatrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("determinant of a singular matrix is zero") {
  const IntMatrix m = int_matrix({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
  CHECK(det_exact(m) == 0);
  CHECK(rank_exact(m) == 2);
}

TEST_CASE("rational solves and inverses") {
  const IntMatrix m = int_matrix({{2, 1}, {1, 3}});
  const RatMatrix inv = inverse_rational(m);
  CHECK(to_rational(m) * inv == identity<Rational>(2));
  const auto x = solve_rational(m, RationalVector(to_rational(int_vector({1, 0}))));
  REQUIRE(x);
  CHECK((*x)(0) == Rational(3, 5));
  CHECK((*x)(1) == Rational(-1, 5));
  CHECK_FALSE(solve_rational(int_matrix({{1, 1}, {1, 1}}),
                             RationalVector(to_rational(int_vector({1, 0})))));
  CHECK_THROWS_AS(inverse_rational(int_matrix({{1, 1}, {1, 1}})),
                  std::domain_error);
}

TEST_CASE("integer kernels are saturated and annihilated") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const Index rows = 1 + static_cast<Index>(rng() % 4);
    const Index cols = 1 + static_cast<Index>(rng() % 6);
    const IntMatrix m = oracle::random_matrix(rng, rows, cols, 5);
    const IntMatrix k = integer_kernel(m);
    CAPTURE(trial);
    CHECK(k.cols() == cols - rank_exact(m));
    if (k.cols() == 0) continue;
    CHECK((m * k).isZero());
    CHECK(same_span(saturate(k, cols), k));
  }
  const IntMatrix k = integer_kernel(int_matrix({{2, 4}}));
  REQUIRE(k.cols() == 1);
  CHECK(abs_value(k(0, 0)) == 2);
  CHECK(abs_value(k(1, 0)) == 1);
}

TEST_CASE("saturation") {
  const IntMatrix twice = int_matrix({{2}, {0}});
  CHECK(saturate(twice, 2) == int_matrix({{1}, {0}}));
  const IntMatrix m = int_matrix({{2, 0}, {2, 6}, {0, 3}});
  const IntMatrix s = saturate(m, 3);
  CHECK(saturate(s, 3) == s);
  CHECK_THROWS_AS(saturate(int_matrix({{1, 2}, {1, 2}}), 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(saturate(int_matrix({{1}, {1}}), 3), std::invalid_argument);
}

TEST_CASE("saturation is idempotent on random input") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 2 + static_cast<Index>(rng() % 4);
    const Index k = 1 + static_cast<Index>(rng() % static_cast<unsigned>(n));
    const IntMatrix m = oracle::random_matrix(rng, n, k, 7);
    if (rank_exact(m) != k) continue;
    const IntMatrix s = saturate(m, n);
    CHECK(saturate(s, n) == s);
    // The original span sits inside the saturation with finite index.
    CHECK(solve_rational(s, to_rational(m)).has_value());
  }
}

TEST_CASE("scalar helpers") {
  CHECK(floor_div(Integer(-7), Integer(2)) == -4);
  CHECK(floor_mod(Integer(-7), Integer(2)) == 1);
  CHECK(reduce_mod(Rational(-1, 2), Integer(2)) == Rational(3, 2));
  CHECK(parse_rational("-27/4") == Rational(-27, 4));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK(common_denominator(RatMatrix(to_rational(int_matrix({{1}})) / Rational(6))) ==
        6);
  CHECK_THROWS_AS(to_integer(RatMatrix::Constant(1, 1, Rational(1, 2))),
                  std::domain_error);
}

}
