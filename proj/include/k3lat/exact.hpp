#pragma once

// Exact integer and rational linear algebra: Hermite and Smith normal forms,
// fraction-free determinants, rational solves, integer kernels and
// saturation. Everything here is a pure function of its arguments.

#include "k3lat/scalar.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace k3lat {

struct HermiteForm {
  IntMatrix hnf;        ///< row echelon, positive pivots, reduced above pivots
  IntMatrix transform;  ///< unimodular, transform * m == hnf
  Index rank = 0;       ///< number of nonzero rows of hnf
};

/// Row-style Hermite normal form.
///
/// Pivots are positive and every entry above a pivot lies in [0, pivot).
/// Zero rows are collected at the bottom.
HermiteForm hermite_normal_form(const IntMatrix& m);

struct SmithForm {
  /// min(rows, cols) diagonal entries, non-negative, each dividing the next.
  std::vector<Integer> invariant_factors;
  IntMatrix left;   ///< unimodular, rows x rows
  IntMatrix right;  ///< unimodular, cols x cols
};

/// Smith normal form: left * m * right == diag(invariant_factors).
SmithForm smith_normal_form(const IntMatrix& m);

/// Fraction-free (Bareiss) determinant over any exact integral-domain scalar.
/// Throws std::invalid_argument for non-square input.
template <typename Derived>
typename Derived::Scalar det_exact(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("det_exact: matrix is not square");
  }
  const Index n = m.rows();
  if (n == 0) return Scalar(1);

  Matrix<Scalar> a = m;
  Scalar previous(1);
  bool negate = false;
  for (Index k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      Index swap_row = -1;
      for (Index i = k + 1; i < n; ++i) {
        if (a(i, k) != 0) {
          swap_row = i;
          break;
        }
      }
      if (swap_row < 0) return Scalar(0);
      a.row(k).swap(a.row(swap_row));
      negate = !negate;
    }
    for (Index i = k + 1; i < n; ++i) {
      for (Index j = k + 1; j < n; ++j) {
        Scalar t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        a(i, j) = t / previous;  // exact by Sylvester's identity
      }
      a(i, k) = 0;
    }
    previous = a(k, k);
  }
  Scalar d = a(n - 1, n - 1);
  if (negate) d = -d;
  return d;
}

/// Rank over Q.
Index rank_exact(const IntMatrix& m);

/// Solves m * x == rhs exactly. Returns std::nullopt (no solution) when the
/// system is inconsistent; free variables are set to zero otherwise.
std::optional<RationalVector> solve_rational(const IntMatrix& m,
                                             const RationalVector& rhs);
std::optional<RatMatrix> solve_rational(const IntMatrix& m,
                                        const RatMatrix& rhs);

/// Inverse over Q; throws std::domain_error for singular input.
RatMatrix inverse_rational(const IntMatrix& m);

/// Columns form a Z-basis of {x : m * x == 0}. The basis is saturated.
IntMatrix integer_kernel(const IntMatrix& m);

/// Basis (columns) of span_Q(basis) intersected with Z^ambient_rank.
///
/// The result is in column Hermite form, so two saturated spans are equal
/// iff the returned matrices are equal. Throws std::invalid_argument when
/// the input columns are dependent or have the wrong length.
IntMatrix saturate(const IntMatrix& basis, Index ambient_rank);

/// Canonical basis (columns) of the Z-span of the columns of m: the
/// transpose of the nonzero rows of the Hermite form of m^T.
IntMatrix column_hermite_basis(const IntMatrix& m);

/// True iff the columns of a and b span the same Z-module.
bool same_span(const IntMatrix& a, const IntMatrix& b);

Integer abs_value(const Integer& x);

}  // namespace k3lat
