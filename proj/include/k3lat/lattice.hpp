#pragma once

// Integral lattices given by a symmetric Gram matrix, named constructions
// (root lattices, hyperbolic planes, K7), signatures and discriminant forms.
//
// Sign convention: root lattices are negative definite with -2 on the
// diagonal, as for configurations of smooth rational curves on a surface.

#include "k3lat/scalar.hpp"

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace k3lat {

class Lattice {
 public:
  Lattice() = default;

  /// Throws std::invalid_argument if gram is not square and symmetric.
  explicit Lattice(IntMatrix gram, std::string label = {});

  const IntMatrix& gram() const { return gram_; }
  const std::string& label() const { return label_; }
  Index rank() const { return gram_.rows(); }
  bool is_even() const { return even_; }
  Integer determinant() const;

  Integer pairing(const IntVector& x, const IntVector& y) const;
  Rational pairing(const RationalVector& x, const RationalVector& y) const;

  Lattice relabeled(std::string label) const;

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.gram_ == b.gram_;
  }

 private:
  IntMatrix gram_;
  std::string label_;
  bool even_ = true;
};

struct Signature {
  Index positive = 0;
  Index negative = 0;
  Index zero = 0;

  friend auto operator<=>(const Signature&, const Signature&) = default;
};

/// Named lattices: "A<n>", "D<n>" (n >= 4), "E6", "E7", "E8", "U", "U(<m>)",
/// "K7", "Z(<k>)". Parentheses around the parameter are optional for A, D
/// and Z. Several names joined by '+' build the orthogonal direct sum.
/// Throws std::invalid_argument for unknown names or bad parameters.
Lattice make_named(std::string_view name);

Lattice root_lattice_a(int n);
Lattice root_lattice_d(int n);
Lattice root_lattice_e(int n);
Lattice hyperbolic_plane(const Integer& scale = 1);
Lattice rank_one(const Integer& value);

Lattice direct_sum(const Lattice& a, const Lattice& b);

/// Multiplies the form by factor.
Lattice rescale(const Lattice& l, const Integer& factor);

/// Sylvester signature via exact congruence diagonalization over Q.
Signature signature(const Lattice& l);

/// The finite quadratic module L^* / L.
///
/// Generators are given by rational coordinates with respect to the basis
/// of L (so they are vectors of L tensor Q). Element i of the group is the
/// mixed-radix combination of generators given by coefficients(i).
struct DiscriminantGroup {
  std::vector<Integer> invariant_factors;  ///< all > 1, each divides the next
  std::vector<RationalVector> generators;
  std::vector<Rational> qvalues;  ///< q(generator) in [0, 2); even lattices
  RatMatrix generator_gram;       ///< exact pairings of the generators
  bool even = true;

  Integer order() const;
  std::size_t size() const;  ///< order as a machine integer

  std::vector<long> coefficients(std::size_t element) const;
  std::size_t element_index(const std::vector<long>& coefficients) const;
  std::size_t add(std::size_t x, std::size_t y) const;
  std::size_t scale(std::size_t x, long k) const;
  long element_order(std::size_t x) const;

  /// Discriminant quadratic form, reduced to [0, 2).
  Rational q(std::size_t x) const;
  /// Discriminant bilinear form, reduced to [0, 1).
  Rational b(std::size_t x, std::size_t y) const;
  /// Lift of the element to L tensor Q (basis coordinates of L).
  RationalVector lift(std::size_t x) const;
};

/// Throws std::invalid_argument for degenerate lattices.
DiscriminantGroup discriminant_group(const Lattice& l);

/// x.x reduced modulo 2, for x in L tensor Q given in basis coordinates.
Rational discriminant_q(const Lattice& l, const RationalVector& x);

/// True iff some group isomorphism A_s -> A_t carries q_s to -q_t.
/// Exhaustive search; both lattices must be even and nondegenerate.
bool glue_compatible(const Lattice& s, const Lattice& t);

}  // namespace k3lat
