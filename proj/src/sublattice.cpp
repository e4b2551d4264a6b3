#include "k3lat/sublattice.hpp"

#include "k3lat/exact.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>

namespace k3lat {

Sublattice::Sublattice(Lattice ambient, IntMatrix coords, std::string label)
    : ambient_(std::move(ambient)),
      coords_(std::move(coords)),
      label_(std::move(label)) {
  if (coords_.rows() != ambient_.rank()) {
    throw std::invalid_argument("Sublattice: generators have wrong length");
  }
  if (rank_exact(coords_) != coords_.cols()) {
    throw std::invalid_argument("Sublattice: generators are dependent");
  }
}

Sublattice Sublattice::whole(const Lattice& ambient) {
  return Sublattice(ambient, identity<Integer>(ambient.rank()),
                    ambient.label());
}

Lattice Sublattice::induced() const {
  return Lattice(IntMatrix(coords_.transpose() * ambient_.gram() * coords_),
                 label_);
}

Sublattice orthogonal_complement(const Sublattice& s) {
  if (s.ambient().determinant() == 0) {
    throw std::invalid_argument("orthogonal_complement: degenerate ambient");
  }
  IntMatrix relations = s.coords().transpose() * s.ambient().gram();
  std::string label = s.label().empty() ? "" : s.label() + "^perp";
  return Sublattice(s.ambient(), integer_kernel(relations), label);
}

Primitivity is_primitive(const Sublattice& s) {
  Primitivity result;
  result.closure = saturate(s.coords(), s.ambient().rank());
  // Coordinates of the generators in the closure basis; the index is the
  // absolute determinant of that square matrix.
  auto x = solve_rational(result.closure, to_rational(s.coords()));
  const IntMatrix relative = to_integer(*x);
  result.index = abs_value(det_exact(relative));
  result.primitive = result.index == 1;
  return result;
}

std::optional<Integer> sublattice_index(const Sublattice& big,
                                        const Sublattice& small) {
  if (big.ambient().gram() != small.ambient().gram()) {
    throw std::invalid_argument("sublattice_index: different ambients");
  }
  auto x = solve_rational(big.coords(), to_rational(small.coords()));
  if (!x || !is_integral(*x)) {
    throw std::invalid_argument("sublattice_index: not a sublattice");
  }
  if (big.rank() != small.rank()) return std::nullopt;
  Integer product = 1;
  for (const auto& d : smith_normal_form(to_integer(*x)).invariant_factors) {
    product *= d;
  }
  return product;
}

std::vector<std::vector<Index>> half_sum_search(const Sublattice& s) {
  const Index k = s.rank();
  if (k > 24) {
    throw std::invalid_argument("half_sum_search: more than 24 generators");
  }
  const Index n = s.ambient().rank();
  const std::size_t words = static_cast<std::size_t>((n + 63) / 64);
  // Generators reduced mod 2 as bit rows; a half-sum is integral iff the
  // XOR of the selected rows vanishes.
  std::vector<std::vector<std::uint64_t>> parity(
      static_cast<std::size_t>(k), std::vector<std::uint64_t>(words, 0));
  for (Index j = 0; j < k; ++j) {
    for (Index i = 0; i < n; ++i) {
      if (mpz_odd_p(s.coords()(i, j).get_mpz_t())) {
        parity[static_cast<std::size_t>(j)][static_cast<std::size_t>(i / 64)] |=
            std::uint64_t{1} << (i % 64);
      }
    }
  }
  std::vector<std::vector<Index>> found;
  std::vector<std::uint64_t> acc(words, 0);
  const std::uint64_t total = std::uint64_t{1} << k;
  // Gray-code walk: consecutive masks differ in one generator.
  for (std::uint64_t step = 1; step < total; ++step) {
    const int flip = __builtin_ctzll(step);
    for (std::size_t w = 0; w < words; ++w) {
      acc[w] ^= parity[static_cast<std::size_t>(flip)][w];
    }
    if (std::all_of(acc.begin(), acc.end(),
                    [](std::uint64_t x) { return x == 0; })) {
      const std::uint64_t mask = step ^ (step >> 1);
      std::vector<Index> subset;
      for (Index j = 0; j < k; ++j) {
        if (mask >> j & 1U) subset.push_back(j);
      }
      found.push_back(std::move(subset));
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

bool is_chain_gram(const IntMatrix& gram) {
  if (gram.rows() != gram.cols()) return false;
  for (Index i = 0; i < gram.rows(); ++i) {
    for (Index j = 0; j < gram.cols(); ++j) {
      const long expected = i == j ? -2 : (i - j == 1 || j - i == 1 ? 1 : 0);
      if (gram(i, j) != expected) return false;
    }
  }
  return true;
}

GlueSolution solve_glue(const Lattice& ambient, const Sublattice& delta,
                        const GlueOptions& options) {
  const Index r = ambient.rank();
  if (delta.ambient().gram() != ambient.gram()) {
    throw std::invalid_argument("solve_glue: sublattice of another lattice");
  }
  if (delta.rank() + 1 != r) {
    throw std::invalid_argument("solve_glue: sublattice must have corank 1");
  }
  const Integer det_ambient = ambient.determinant();
  if (det_ambient == 0) {
    throw std::invalid_argument("solve_glue: degenerate ambient");
  }
  if (!is_primitive(delta).primitive) {
    throw std::invalid_argument("solve_glue: sublattice is not primitive");
  }

  IntVector H = orthogonal_complement(delta).coords().col(0);
  const Integer H_square = ambient.pairing(H, H);
  if (H_square == 0) {
    throw std::invalid_argument("solve_glue: complement is degenerate");
  }
  Integer orientation = 0;
  if (options.positive_against) {
    orientation = ambient.pairing(H, *options.positive_against);
  }
  if (orientation == 0) {
    for (Index i = 0; i < r && orientation == 0; ++i) orientation = H(i);
  }
  if (orientation < 0) H = -H;

  IntMatrix glued(r, r);
  glued.leftCols(r - 1) = delta.coords();
  glued.col(r - 1) = H;
  const Integer n = abs_value(det_exact(glued));

  GlueSolution sol;
  sol.delta = delta;
  sol.n = n;
  sol.H = H;
  sol.H_square = H_square;

  // S / (delta + Z H) is cyclic: delta and Z H are both primitive, so the
  // quotient embeds in the discriminant group of Z H.
  const SmithForm snf = smith_normal_form(glued);
  Index nontrivial = 0;
  for (const auto& d : snf.invariant_factors) {
    if (d != 1) ++nontrivial;
  }
  if (nontrivial > 1) {
    throw std::logic_error("solve_glue: quotient is not cyclic");
  }
  const IntMatrix left_inverse = to_integer(inverse_rational(snf.left));
  const IntVector generator = left_inverse.col(r - 1);
  // n * generator in the glued basis.
  const RationalVector coeffs =
      *solve_rational(glued, RationalVector(to_rational(generator) * Rational(n)));
  const IntMatrix c = to_integer(RatMatrix(coeffs));

  Integer unit = floor_mod(c(r - 1, 0), n);
  Integer unit_inverse = 0;
  if (n == 1) {
    unit_inverse = 1;
  } else if (mpz_invert(unit_inverse.get_mpz_t(), unit.get_mpz_t(),
                        n.get_mpz_t()) == 0) {
    throw std::logic_error("solve_glue: complement coefficient is not a unit");
  }

  IntVector nh = H;
  sol.a.reserve(static_cast<std::size_t>(r - 1));
  for (Index i = 0; i + 1 < r; ++i) {
    Integer ai = floor_mod(unit_inverse * c(i, 0), n);
    nh += ai * delta.coords().col(i);
    sol.a.push_back(std::move(ai));
  }
  sol.h = to_integer(RatMatrix(to_rational(nh) / Rational(n))).col(0);

  // |det delta| |H^2| == n^2 |det S|
  const Integer det_delta = delta.induced().determinant();
  if (abs_value(det_delta) * abs_value(H_square) !=
      n * n * abs_value(det_ambient)) {
    throw std::logic_error("solve_glue: determinant-index identity violated");
  }

  if (options.orient_chain && r > 1 && is_chain_gram(delta.induced().gram()) &&
      2 * sol.a.front() > n) {
    IntMatrix reversed = delta.coords().rowwise().reverse();
    GlueOptions again = options;
    again.orient_chain = false;
    GlueSolution flipped = solve_glue(
        ambient, Sublattice(ambient, reversed, delta.label()), again);
    flipped.reversed = true;
    return flipped;
  }

  IntVector weighted = H;
  for (Index i = 0; i + 1 < r; ++i) {
    weighted += Integer(sol.a.front() * (i + 1)) * delta.coords().col(i);
  }
  const RatMatrix candidate = to_rational(weighted) / Rational(n);
  if (is_integral(candidate)) sol.h_plus = to_integer(candidate).col(0);
  return sol;
}

Overlattice make_overlattice(const Lattice& m,
                             const std::vector<RationalVector>& glue) {
  const Index n = m.rank();
  RatMatrix generators(n, n + static_cast<Index>(glue.size()));
  generators.leftCols(n) = identity<Rational>(n);
  for (std::size_t i = 0; i < glue.size(); ++i) {
    generators.col(n + static_cast<Index>(i)) = glue[i];
  }
  const Integer denom = common_denominator(generators);
  const IntMatrix scaled = to_integer(RatMatrix(generators * Rational(denom)));
  const IntMatrix span = column_hermite_basis(scaled);

  Overlattice result;
  result.glue = glue;
  result.basis = to_rational(span) / Rational(denom);
  const RatMatrix gram =
      result.basis.transpose() * to_rational(m.gram()) * result.basis;
  if (!is_integral(gram)) {
    throw std::domain_error("make_overlattice: glue is not integral");
  }
  result.lattice = Lattice(to_integer(gram), m.label() + "+glue");
  const Rational det_basis = det_exact(result.basis);
  const Rational index = 1 / det_basis;
  result.index = abs_value(index.get_num());
  return result;
}

bool same_rational_span(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  RatMatrix both(a.rows(), a.cols() + b.cols());
  both << a, b;
  const Integer denom = common_denominator(both);
  return same_span(to_integer(RatMatrix(a * Rational(denom))),
                   to_integer(RatMatrix(b * Rational(denom))));
}

std::vector<Overlattice> enumerate_even_overlattices(const Lattice& m,
                                                     const Integer& index) {
  if (!m.is_even()) {
    throw std::invalid_argument("enumerate_even_overlattices: odd lattice");
  }
  if (index < 1) {
    throw std::invalid_argument("enumerate_even_overlattices: bad index");
  }
  const DiscriminantGroup group = discriminant_group(m);
  if (group.order() > 2048) {
    throw std::invalid_argument(
        "enumerate_even_overlattices: discriminant group too large");
  }
  if (!index.fits_slong_p() || group.order() % (index * index) != 0) {
    return {};
  }
  const auto k = static_cast<std::size_t>(index.get_ui());
  const std::size_t size = group.size();

  std::vector<std::size_t> isotropic;
  for (std::size_t x = 1; x < size; ++x) {
    if (group.q(x) == 0 && k % static_cast<std::size_t>(group.element_order(x)) == 0) {
      isotropic.push_back(x);
    }
  }

  using Subgroup = std::vector<std::size_t>;  // sorted element indices
  std::set<Subgroup> seen;
  std::vector<Subgroup> frontier{Subgroup{0}};
  std::vector<Subgroup> complete;
  while (!frontier.empty()) {
    std::vector<Subgroup> next;
    for (const auto& sub : frontier) {
      if (sub.size() == k) {
        complete.push_back(sub);
        continue;
      }
      for (std::size_t x : isotropic) {
        if (std::binary_search(sub.begin(), sub.end(), x)) continue;
        bool orthogonal = true;
        for (std::size_t s : sub) {
          if (group.b(s, x) != 0) {
            orthogonal = false;
            break;
          }
        }
        if (!orthogonal) continue;
        Subgroup bigger;
        const long ord = group.element_order(x);
        for (std::size_t s : sub) {
          for (long j = 0; j < ord; ++j) {
            bigger.push_back(group.add(s, group.scale(x, j)));
          }
        }
        std::sort(bigger.begin(), bigger.end());
        bigger.erase(std::unique(bigger.begin(), bigger.end()), bigger.end());
        if (k % bigger.size() != 0) continue;
        if (seen.insert(bigger).second) next.push_back(std::move(bigger));
      }
    }
    frontier = std::move(next);
  }
  std::sort(complete.begin(), complete.end());

  std::vector<Overlattice> result;
  for (const auto& sub : complete) {
    // Greedy generating set in increasing element order.
    std::vector<RationalVector> glue;
    Subgroup generated{0};
    for (std::size_t x : sub) {
      if (std::binary_search(generated.begin(), generated.end(), x)) continue;
      glue.push_back(group.lift(x));
      Subgroup bigger;
      const long ord = group.element_order(x);
      for (std::size_t s : generated) {
        for (long j = 0; j < ord; ++j) {
          bigger.push_back(group.add(s, group.scale(x, j)));
        }
      }
      std::sort(bigger.begin(), bigger.end());
      bigger.erase(std::unique(bigger.begin(), bigger.end()), bigger.end());
      generated = std::move(bigger);
    }
    result.push_back(make_overlattice(m, glue));
  }
  return result;
}

bool block_primitive(const Overlattice& n, Index first, Index count) {
  const RatMatrix& basis = n.basis;
  if (first < 0 || count < 0 || first + count > basis.rows()) {
    throw std::invalid_argument("block_primitive: block outside the lattice");
  }
  const Index outside = basis.rows() - count;
  if (outside == 0) return true;
  RatMatrix rest(outside, basis.cols());
  rest.topRows(first) = basis.topRows(first);
  rest.bottomRows(outside - first) =
      basis.bottomRows(basis.rows() - first - count);
  const Integer den = common_denominator(rest);
  const IntMatrix kernel =
      integer_kernel(to_integer(RatMatrix(rest * Rational(den))));
  if (kernel.cols() == 0) return true;
  return is_integral(RatMatrix(basis * to_rational(kernel)));
}

std::vector<Overlattice> enumerate_even_overlattices(
    const Lattice& m, const Integer& index,
    const std::vector<Index>& block_sizes) {
  Index total = 0;
  for (Index b : block_sizes) total += b;
  if (total != m.rank()) {
    throw std::invalid_argument(
        "enumerate_even_overlattices: block sizes must sum to the rank");
  }
  std::vector<Overlattice> kept;
  for (auto& o : enumerate_even_overlattices(m, index)) {
    bool ok = true;
    Index first = 0;
    for (Index b : block_sizes) {
      ok = ok && block_primitive(o, first, b);
      first += b;
    }
    if (ok) kept.push_back(std::move(o));
  }
  return kept;
}

}  // namespace k3lat
