#pragma once

// Exact scalar types and the dense matrix aliases used throughout k3lat.
//
// Integers and rationals are GMP-backed and never overflow. Eigen only needs
// NumTraits for them; no decomposition in Eigen is used on these types, all
// elimination is done by the exact routines in exact.hpp.

#include <gmpxx.h>

#include <Eigen/Core>

#include <initializer_list>
#include <string>
#include <vector>

namespace Eigen {

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  using Real = mpz_class;
  using NonInteger = mpq_class;
  using Nested = mpz_class;
  using Literal = mpz_class;

  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };

  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  using Literal = mpq_class;

  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };

  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace k3lat {

using Integer = mpz_class;
using Rational = mpq_class;
using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using IntVector = Vector<Integer>;
using RatMatrix = Matrix<Rational>;
using RationalVector = Vector<Rational>;

/// Builds an integer matrix from nested literal rows.
IntMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows);
IntVector int_vector(std::initializer_list<long> entries);

template <typename Scalar>
Matrix<Scalar> identity(Index n) {
  Matrix<Scalar> m = Matrix<Scalar>::Zero(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

inline RatMatrix to_rational(const IntMatrix& m) { return m.cast<Rational>(); }
inline RationalVector to_rational(const IntVector& v) {
  return v.cast<Rational>();
}

bool is_integral(const Rational& x);
bool is_integral(const RatMatrix& m);

/// Integer part of an integral rational matrix; throws if any entry is not
/// integral.
IntMatrix to_integer(const RatMatrix& m);

/// Least common multiple of all denominators (1 for an empty matrix).
Integer common_denominator(const RatMatrix& m);

/// Floor division and the matching non-negative-when-b>0 remainder.
Integer floor_div(const Integer& a, const Integer& b);
Integer floor_mod(const Integer& a, const Integer& b);

/// Representative of x modulo m in [0, m), for m > 0.
Rational reduce_mod(const Rational& x, const Integer& m);

std::string to_string(const Integer& x);
std::string to_string(const Rational& x);
std::string to_string(const IntVector& v);
std::string to_string(const RationalVector& v);

/// Parses "p", "-p" or "p/q"; throws std::invalid_argument on bad input.
Rational parse_rational(const std::string& text);

}  // namespace k3lat
