#include "k3lat/exact.hpp"

#include <utility>

namespace k3lat {

namespace {

// Index of the row in [from, rows) with the smallest nonzero |m(i, col)|,
// or -1 if the column is zero there.
Index smallest_nonzero_in_column(const IntMatrix& m, Index col, Index from) {
  Index best = -1;
  for (Index i = from; i < m.rows(); ++i) {
    if (m(i, col) == 0) continue;
    if (best < 0 || abs(m(i, col)) < abs(m(best, col))) best = i;
  }
  return best;
}

}  // namespace

Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

HermiteForm hermite_normal_form(const IntMatrix& m) {
  IntMatrix h = m;
  IntMatrix u = identity<Integer>(m.rows());
  Index r = 0;
  for (Index c = 0; c < h.cols() && r < h.rows(); ++c) {
    bool has_pivot = false;
    for (;;) {
      const Index p = smallest_nonzero_in_column(h, c, r);
      if (p < 0) break;
      has_pivot = true;
      if (p != r) {
        h.row(p).swap(h.row(r));
        u.row(p).swap(u.row(r));
      }
      bool cleared = true;
      for (Index i = r + 1; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        const Integer q = floor_div(h(i, c), h(r, c));
        h.row(i) -= q * h.row(r);
        u.row(i) -= q * u.row(r);
        if (h(i, c) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (!has_pivot) continue;
    if (h(r, c) < 0) {
      h.row(r) = -h.row(r);
      u.row(r) = -u.row(r);
    }
    for (Index i = 0; i < r; ++i) {
      const Integer q = floor_div(h(i, c), h(r, c));
      if (q == 0) continue;
      h.row(i) -= q * h.row(r);
      u.row(i) -= q * u.row(r);
    }
    ++r;
  }
  return {std::move(h), std::move(u), r};
}

SmithForm smith_normal_form(const IntMatrix& m) {
  IntMatrix d = m;
  IntMatrix left = identity<Integer>(m.rows());
  IntMatrix right = identity<Integer>(m.cols());
  const Index steps = std::min(m.rows(), m.cols());

  for (Index k = 0; k < steps; ++k) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      Index pr = -1;
      Index pc = -1;
      for (Index i = k; i < d.rows(); ++i) {
        for (Index j = k; j < d.cols(); ++j) {
          if (d(i, j) == 0) continue;
          if (pr < 0 || abs(d(i, j)) < abs(d(pr, pc))) {
            pr = i;
            pc = j;
          }
        }
      }
      if (pr < 0) break;  // trailing block is zero
      if (pr != k) {
        d.row(pr).swap(d.row(k));
        left.row(pr).swap(left.row(k));
      }
      if (pc != k) {
        d.col(pc).swap(d.col(k));
        right.col(pc).swap(right.col(k));
      }

      bool clean = true;
      for (Index i = k + 1; i < d.rows(); ++i) {
        if (d(i, k) == 0) continue;
        const Integer q = floor_div(d(i, k), d(k, k));
        d.row(i) -= q * d.row(k);
        left.row(i) -= q * left.row(k);
        if (d(i, k) != 0) clean = false;
      }
      for (Index j = k + 1; j < d.cols(); ++j) {
        if (d(k, j) == 0) continue;
        const Integer q = floor_div(d(k, j), d(k, k));
        d.col(j) -= q * d.col(k);
        right.col(j) -= q * right.col(k);
        if (d(k, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold an offending row into the pivot row and repeat.
      Index bad_row = -1;
      for (Index i = k + 1; i < d.rows() && bad_row < 0; ++i) {
        for (Index j = k + 1; j < d.cols(); ++j) {
          if (floor_mod(d(i, j), d(k, k)) != 0) {
            bad_row = i;
            break;
          }
        }
      }
      if (bad_row < 0) break;
      d.row(k) += d.row(bad_row);
      left.row(k) += left.row(bad_row);
    }
    if (d(k, k) < 0) {
      d.row(k) = -d.row(k);
      left.row(k) = -left.row(k);
    }
  }

  std::vector<Integer> factors;
  factors.reserve(static_cast<std::size_t>(steps));
  for (Index k = 0; k < steps; ++k) factors.push_back(d(k, k));
  return {std::move(factors), std::move(left), std::move(right)};
}

Index rank_exact(const IntMatrix& m) { return hermite_normal_form(m).rank; }

std::optional<RatMatrix> solve_rational(const IntMatrix& m,
                                        const RatMatrix& rhs) {
  if (rhs.rows() != m.rows()) {
    throw std::invalid_argument("solve_rational: dimension mismatch");
  }
  const Index rows = m.rows();
  const Index cols = m.cols();
  RatMatrix a(rows, cols + rhs.cols());
  a.leftCols(cols) = to_rational(m);
  a.rightCols(rhs.cols()) = rhs;

  std::vector<Index> pivot_cols;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index p = -1;
    for (Index i = r; i < rows; ++i) {
      if (a(i, c) != 0) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    a.row(p).swap(a.row(r));
    const Rational inv = 1 / a(r, c);
    a.row(r) *= inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      a.row(i) -= f * a.row(r);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  for (Index i = r; i < rows; ++i) {
    for (Index j = 0; j < rhs.cols(); ++j) {
      if (a(i, cols + j) != 0) return std::nullopt;
    }
  }
  RatMatrix x = RatMatrix::Zero(cols, rhs.cols());
  for (Index i = 0; i < r; ++i) {
    x.row(pivot_cols[static_cast<std::size_t>(i)]) =
        a.row(i).rightCols(rhs.cols());
  }
  return x;
}

std::optional<RationalVector> solve_rational(const IntMatrix& m,
                                             const RationalVector& rhs) {
  auto x = solve_rational(m, RatMatrix(rhs));
  if (!x) return std::nullopt;
  return RationalVector(x->col(0));
}

RatMatrix inverse_rational(const IntMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("inverse_rational: matrix is not square");
  }
  if (rank_exact(m) != m.rows()) {
    throw std::domain_error("inverse_rational: matrix is singular");
  }
  return *solve_rational(m, identity<Rational>(m.rows()));
}

IntMatrix integer_kernel(const IntMatrix& m) {
  const HermiteForm form = hermite_normal_form(m.transpose());
  const Index n = m.cols();
  IntMatrix basis(n, n - form.rank);
  for (Index i = form.rank; i < n; ++i) {
    basis.col(i - form.rank) = form.transform.row(i).transpose();
  }
  return column_hermite_basis(basis);
}

IntMatrix column_hermite_basis(const IntMatrix& m) {
  const HermiteForm form = hermite_normal_form(m.transpose());
  return form.hnf.topRows(form.rank).transpose();
}

bool same_span(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) return false;
  return column_hermite_basis(a) == column_hermite_basis(b);
}

IntMatrix saturate(const IntMatrix& basis, Index ambient_rank) {
  if (basis.rows() != ambient_rank) {
    throw std::invalid_argument("saturate: basis vectors have wrong length");
  }
  if (rank_exact(basis) != basis.cols()) {
    throw std::invalid_argument("saturate: basis columns are dependent");
  }
  // Vectors annihilated by everything orthogonal (in the dot product) to the
  // span; this is exactly span_Q(basis) meet Z^n.
  const IntMatrix orthogonal = integer_kernel(basis.transpose());
  return integer_kernel(orthogonal.transpose());
}

}  // namespace k3lat
