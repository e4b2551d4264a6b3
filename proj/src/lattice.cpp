#include "k3lat/lattice.hpp"

#include "k3lat/exact.hpp"

#include <cctype>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace k3lat {

namespace {

// Negative definite Gram matrix of a Dynkin diagram given by its edges.
IntMatrix dynkin_gram(int nodes, const std::vector<std::pair<int, int>>& edges) {
  IntMatrix g = IntMatrix::Zero(nodes, nodes);
  for (int i = 0; i < nodes; ++i) g(i, i) = -2;
  for (auto [a, b] : edges) {
    g(a, b) = 1;
    g(b, a) = 1;
  }
  return g;
}

std::vector<std::pair<int, int>> path_edges(int length) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < length; ++i) edges.emplace_back(i, i + 1);
  return edges;
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Parses "7", "(7)" or "(-7)" following a one-letter prefix.
Integer parse_parameter(const std::string& text, const std::string& whole) {
  std::string t = text;
  if (!t.empty() && t.front() == '(') {
    if (t.back() != ')') {
      throw std::invalid_argument("unbalanced parentheses in " + whole);
    }
    t = t.substr(1, t.size() - 2);
  }
  Rational r;
  try {
    r = parse_rational(t);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("bad lattice parameter in " + whole);
  }
  if (!is_integral(r)) {
    throw std::invalid_argument("non-integral lattice parameter in " + whole);
  }
  return r.get_num();
}

int small_parameter(const Integer& x, const std::string& whole) {
  if (!x.fits_sint_p() || x > 1000) {
    throw std::invalid_argument("lattice parameter out of range in " + whole);
  }
  return static_cast<int>(x.get_si());
}

Lattice make_single(const std::string& name) {
  if (name.empty()) throw std::invalid_argument("empty lattice name");
  if (name == "U") return hyperbolic_plane();
  if (name == "K7") {
    return Lattice(int_matrix({{-4, 1}, {1, -2}}), "K7");
  }
  const char head = name.front();
  const std::string rest = name.substr(1);
  if (head == 'U') {
    if (rest.empty() || rest.front() != '(') {
      throw std::invalid_argument("unknown lattice name: " + name);
    }
    return hyperbolic_plane(parse_parameter(rest, name));
  }
  if (head == 'A' || head == 'D' || head == 'E' || head == 'Z') {
    if (rest.empty()) throw std::invalid_argument("missing parameter: " + name);
    const Integer p = parse_parameter(rest, name);
    if (head == 'Z') return rank_one(p);
    const int n = small_parameter(p, name);
    if (head == 'A') return root_lattice_a(n);
    if (head == 'D') return root_lattice_d(n);
    return root_lattice_e(n);
  }
  throw std::invalid_argument("unknown lattice name: " + name);
}

}  // namespace

Lattice::Lattice(IntMatrix gram, std::string label)
    : gram_(std::move(gram)), label_(std::move(label)) {
  if (gram_.rows() != gram_.cols()) {
    throw std::invalid_argument("Gram matrix is not square");
  }
  if (gram_ != gram_.transpose()) {
    throw std::invalid_argument("Gram matrix is not symmetric");
  }
  for (Index i = 0; i < gram_.rows(); ++i) {
    if (floor_mod(gram_(i, i), 2) != 0) {
      even_ = false;
      break;
    }
  }
}

Integer Lattice::determinant() const { return det_exact(gram_); }

Integer Lattice::pairing(const IntVector& x, const IntVector& y) const {
  return x.dot(gram_ * y);
}

Rational Lattice::pairing(const RationalVector& x,
                          const RationalVector& y) const {
  return x.dot(to_rational(gram_) * y);
}

Lattice Lattice::relabeled(std::string label) const {
  return Lattice(gram_, std::move(label));
}

Lattice root_lattice_a(int n) {
  if (n < 1) throw std::invalid_argument("A(n) needs n >= 1");
  return Lattice(dynkin_gram(n, path_edges(n)), "A" + std::to_string(n));
}

Lattice root_lattice_d(int n) {
  if (n < 4) throw std::invalid_argument("D(n) needs n >= 4");
  auto edges = path_edges(n - 1);
  edges.emplace_back(n - 3, n - 1);
  return Lattice(dynkin_gram(n, edges), "D" + std::to_string(n));
}

Lattice root_lattice_e(int n) {
  if (n < 6 || n > 8) throw std::invalid_argument("E(n) needs n in {6,7,8}");
  // Path of n-1 nodes with the last node attached three steps from the end
  // of the long arm: arms of lengths 1, 2 and n-4.
  auto edges = path_edges(n - 1);
  edges.emplace_back(n - 4, n - 1);
  return Lattice(dynkin_gram(n, edges), "E" + std::to_string(n));
}

Lattice hyperbolic_plane(const Integer& scale) {
  if (scale == 0) throw std::invalid_argument("U(m) needs m != 0");
  IntMatrix g = IntMatrix::Zero(2, 2);
  g(0, 1) = scale;
  g(1, 0) = scale;
  return Lattice(g, scale == 1 ? "U" : "U(" + scale.get_str() + ")");
}

Lattice rank_one(const Integer& value) {
  if (value == 0) throw std::invalid_argument("Z(k) needs k != 0");
  IntMatrix g(1, 1);
  g(0, 0) = value;
  return Lattice(g, "Z(" + value.get_str() + ")");
}

Lattice make_named(std::string_view name) {
  std::string text(name);
  // Accept the direct-sum sign as well as '+'.
  const std::string oplus = "\xE2\x8A\x95";
  for (std::size_t pos; (pos = text.find(oplus)) != std::string::npos;) {
    text.replace(pos, oplus.size(), "+");
  }
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t plus = text.find('+', start);
    parts.push_back(trim(std::string_view(text).substr(
        start, plus == std::string::npos ? std::string::npos : plus - start)));
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  Lattice result = make_single(parts.front());
  for (std::size_t i = 1; i < parts.size(); ++i) {
    result = direct_sum(result, make_single(parts[i]));
  }
  return result;
}

Lattice direct_sum(const Lattice& a, const Lattice& b) {
  const Index n = a.rank() + b.rank();
  IntMatrix g = IntMatrix::Zero(n, n);
  g.topLeftCorner(a.rank(), a.rank()) = a.gram();
  g.bottomRightCorner(b.rank(), b.rank()) = b.gram();
  std::string label;
  if (a.label().empty() || b.label().empty()) {
    label = a.label().empty() ? b.label() : a.label();
  } else {
    label = a.label() + "+" + b.label();
  }
  return Lattice(g, label);
}

Lattice rescale(const Lattice& l, const Integer& factor) {
  IntMatrix g = l.gram() * factor;
  return Lattice(g, l.label() + "(" + factor.get_str() + ")");
}

Signature signature(const Lattice& l) {
  RatMatrix a = to_rational(l.gram());
  const Index n = a.rows();
  Signature s;
  for (Index k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      Index j = k + 1;
      while (j < n && a(j, j) == 0) ++j;
      if (j < n) {
        a.row(k).swap(a.row(j));
        a.col(k).swap(a.col(j));
      } else {
        j = k + 1;
        while (j < n && a(k, j) == 0) ++j;
        if (j < n) {
          // a(k,k) becomes 2 a(k,j) + a(j,j) = 2 a(k,j) != 0.
          a.row(k) += a.row(j);
          a.col(k) += a.col(j);
        }
      }
    }
    if (a(k, k) == 0) {
      ++s.zero;
      continue;
    }
    for (Index i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      const Rational f = a(i, k) / a(k, k);
      a.row(i) -= f * a.row(k);
      a.col(i) -= f * a.col(k);
    }
    if (a(k, k) > 0) {
      ++s.positive;
    } else {
      ++s.negative;
    }
  }
  return s;
}

Integer DiscriminantGroup::order() const {
  Integer o = 1;
  for (const auto& d : invariant_factors) o *= d;
  return o;
}

std::size_t DiscriminantGroup::size() const {
  const Integer o = order();
  if (!o.fits_ulong_p()) {
    throw std::length_error("discriminant group too large to enumerate");
  }
  return static_cast<std::size_t>(o.get_ui());
}

std::vector<long> DiscriminantGroup::coefficients(std::size_t element) const {
  std::vector<long> c(invariant_factors.size());
  for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
    const auto d = static_cast<std::size_t>(invariant_factors[i].get_ui());
    c[i] = static_cast<long>(element % d);
    element /= d;
  }
  return c;
}

std::size_t DiscriminantGroup::element_index(
    const std::vector<long>& coefficients) const {
  std::size_t index = 0;
  for (std::size_t i = invariant_factors.size(); i-- > 0;) {
    const long d = invariant_factors[i].get_si();
    const long c = ((coefficients[i] % d) + d) % d;
    index = index * static_cast<std::size_t>(d) + static_cast<std::size_t>(c);
  }
  return index;
}

std::size_t DiscriminantGroup::add(std::size_t x, std::size_t y) const {
  auto cx = coefficients(x);
  const auto cy = coefficients(y);
  for (std::size_t i = 0; i < cx.size(); ++i) cx[i] += cy[i];
  return element_index(cx);
}

std::size_t DiscriminantGroup::scale(std::size_t x, long k) const {
  auto c = coefficients(x);
  for (auto& ci : c) ci *= k;
  return element_index(c);
}

long DiscriminantGroup::element_order(std::size_t x) const {
  const auto c = coefficients(x);
  long order = 1;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const long d = invariant_factors[i].get_si();
    order = std::lcm(order, d / std::gcd(c[i], d));
  }
  return order;
}

Rational DiscriminantGroup::q(std::size_t x) const {
  const auto c = coefficients(x);
  Rational v = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = 0; j < c.size(); ++j) {
      v += Rational(c[i] * c[j]) *
           generator_gram(static_cast<Index>(i), static_cast<Index>(j));
    }
  }
  return reduce_mod(v, 2);
}

Rational DiscriminantGroup::b(std::size_t x, std::size_t y) const {
  const auto cx = coefficients(x);
  const auto cy = coefficients(y);
  Rational v = 0;
  for (std::size_t i = 0; i < cx.size(); ++i) {
    for (std::size_t j = 0; j < cy.size(); ++j) {
      v += Rational(cx[i] * cy[j]) *
           generator_gram(static_cast<Index>(i), static_cast<Index>(j));
    }
  }
  return reduce_mod(v, 1);
}

RationalVector DiscriminantGroup::lift(std::size_t x) const {
  const auto c = coefficients(x);
  const Index n = generators.empty() ? 0 : generators.front().size();
  RationalVector v = RationalVector::Zero(n);
  for (std::size_t i = 0; i < c.size(); ++i) {
    v += Rational(c[i]) * generators[i];
  }
  return v;
}

DiscriminantGroup discriminant_group(const Lattice& l) {
  const SmithForm snf = smith_normal_form(l.gram());
  DiscriminantGroup group;
  group.even = l.is_even();
  for (std::size_t i = 0; i < snf.invariant_factors.size(); ++i) {
    const Integer& d = snf.invariant_factors[i];
    if (d == 0) {
      throw std::invalid_argument("discriminant_group: lattice is degenerate");
    }
    if (d == 1) continue;
    // left * G * right = D  =>  G^{-1} = right * D^{-1} * left, so the dual
    // vectors right.col(i) / d_i generate L^*/L with orders d_i.
    RationalVector g = to_rational(IntVector(snf.right.col(
                           static_cast<Index>(i)))) /
                       Rational(d);
    group.invariant_factors.push_back(d);
    group.generators.push_back(std::move(g));
  }
  const auto k = static_cast<Index>(group.generators.size());
  group.generator_gram = RatMatrix::Zero(k, k);
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < k; ++j) {
      group.generator_gram(i, j) =
          l.pairing(group.generators[static_cast<std::size_t>(i)],
                    group.generators[static_cast<std::size_t>(j)]);
    }
  }
  for (const auto& g : group.generators) {
    group.qvalues.push_back(reduce_mod(l.pairing(g, g), 2));
  }
  return group;
}

Rational discriminant_q(const Lattice& l, const RationalVector& x) {
  return reduce_mod(l.pairing(x, x), 2);
}

bool glue_compatible(const Lattice& s, const Lattice& t) {
  if (!s.is_even() || !t.is_even()) {
    throw std::invalid_argument("glue_compatible: lattices must be even");
  }
  const DiscriminantGroup as = discriminant_group(s);
  const DiscriminantGroup at = discriminant_group(t);
  if (as.order() != at.order()) return false;
  if (as.generators.empty()) return true;

  const std::size_t n = at.size();
  const std::size_t k = as.generators.size();
  std::vector<std::size_t> source_gens(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<long> c(k, 0);
    c[i] = 1;
    source_gens[i] = as.element_index(c);
  }

  std::vector<std::size_t> image(k);
  // Images of generators must match orders, negated q and negated pairings.
  std::function<bool(std::size_t)> extend = [&](std::size_t i) -> bool {
    if (i == k) {
      // The homomorphism is determined; check it is injective.
      std::vector<bool> hit(n, false);
      for (std::size_t x = 0; x < as.size(); ++x) {
        const auto c = as.coefficients(x);
        std::size_t y = 0;
        for (std::size_t j = 0; j < k; ++j) y = at.add(y, at.scale(image[j], c[j]));
        if (hit[y]) return false;
        hit[y] = true;
      }
      return true;
    }
    const long d = as.invariant_factors[i].get_si();
    const Rational target_q = reduce_mod(-as.q(source_gens[i]), 2);
    for (std::size_t y = 0; y < n; ++y) {
      if (at.element_order(y) != d) continue;
      if (at.q(y) != target_q) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        ok = at.b(y, image[j]) ==
             reduce_mod(-as.b(source_gens[i], source_gens[j]), 1);
      }
      if (!ok) continue;
      image[i] = y;
      if (extend(i + 1)) return true;
    }
    return false;
  };
  return extend(0);
}

}  // namespace k3lat
