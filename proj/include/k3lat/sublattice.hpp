#pragma once

// Sublattices of a fixed ambient lattice: orthogonal complements,
// primitivity, indices, half-sum searches, the glue of a corank-one
// sublattice with its complement, and even overlattices.

#include "k3lat/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace k3lat {

class Sublattice {
 public:
  Sublattice() = default;

  /// Columns of coords are generators in ambient basis coordinates. Throws
  /// std::invalid_argument if they are dependent or of the wrong length.
  Sublattice(Lattice ambient, IntMatrix coords, std::string label = {});

  /// The whole ambient lattice, with the identity as coordinate matrix.
  static Sublattice whole(const Lattice& ambient);

  const Lattice& ambient() const { return ambient_; }
  const IntMatrix& coords() const { return coords_; }
  const std::string& label() const { return label_; }
  Index rank() const { return coords_.cols(); }

  /// coords^T * G * coords.
  Lattice induced() const;

  IntVector generator(Index i) const { return coords_.col(i); }

 private:
  Lattice ambient_;
  IntMatrix coords_;
  std::string label_;
};

/// Saturated sublattice of ambient vectors orthogonal to every generator.
Sublattice orthogonal_complement(const Sublattice& s);

struct Primitivity {
  bool primitive = false;
  IntMatrix closure;  ///< basis of the primitive closure (column Hermite form)
  Integer index;      ///< [closure : s]
};

Primitivity is_primitive(const Sublattice& s);

/// [big : small], or std::nullopt when the ranks differ (infinite index).
/// Throws std::invalid_argument when small is not contained in big or the
/// ambients differ.
std::optional<Integer> sublattice_index(const Sublattice& big,
                                        const Sublattice& small);

/// All nonempty subsets J (as sorted generator indices, listed in
/// lexicographic order) such that half the sum of the generators in J lies
/// in the ambient lattice. At most 24 generators.
std::vector<std::vector<Index>> half_sum_search(const Sublattice& s);

/// Glue data of a primitive corank-one sublattice with its complement.
///
/// With delta = <C_1, ..., C_k>, complement Z H and n = [S : delta + Z H]:
/// n h = H + sum a_i C_i, 0 <= a_i < n, and S = delta + Z h.
struct GlueSolution {
  Sublattice delta;  ///< possibly with reversed generator order, see reversed
  bool reversed = false;
  Integer n;
  IntVector H;
  Integer H_square;
  IntVector h;
  std::vector<Integer> a;
  /// (H + a_1 * sum i C_i) / n when that vector is integral.
  std::optional<IntVector> h_plus;
};

struct GlueOptions {
  /// When set, H is oriented so that H . positive_against > 0.
  std::optional<IntVector> positive_against;
  /// For chain-shaped (A_k) sublattices, reverse the generator order when
  /// needed so that a_1 mod n lies in [0, n/2].
  bool orient_chain = true;
};

/// Throws std::invalid_argument if delta is not of corank one, not
/// primitive, or its complement is degenerate.
GlueSolution solve_glue(const Lattice& ambient, const Sublattice& delta,
                        const GlueOptions& options = {});

/// An overlattice N of M, given by glue vectors in M tensor Q.
struct Overlattice {
  std::vector<RationalVector> glue;  ///< in M's basis coordinates
  RatMatrix basis;                   ///< columns: Z-basis of N in M's basis
  Lattice lattice;                   ///< Gram matrix of N in that basis
  Integer index;                     ///< [N : M]
};

/// Overlattice generated by M and the given glue vectors.
/// Throws std::domain_error if the result is not integral.
Overlattice make_overlattice(const Lattice& m,
                             const std::vector<RationalVector>& glue);

/// True iff the columns of a and b generate the same Z-module in Q^n.
bool same_rational_span(const RatMatrix& a, const RatMatrix& b);

/// All even overlattices N of M with [N : M] == index, one per isotropic
/// subgroup of the discriminant group, in a deterministic order.
/// Throws std::invalid_argument when |A_M| > 2048 or M is not even.
std::vector<Overlattice> enumerate_even_overlattices(const Lattice& m,
                                                     const Integer& index);

/// True iff the coordinate block [first, first + count) of M is still
/// primitive in N, i.e. N meets that block's rational span only in M.
bool block_primitive(const Overlattice& n, Index first, Index count);

/// The even overlattices of the given index in which every orthogonal
/// block of M stays primitive. block_sizes must sum to the rank of M; for
/// M = A + B this keeps the overlattices glued along an anti-isometry of
/// subgroups of A_A and A_B.
std::vector<Overlattice> enumerate_even_overlattices(
    const Lattice& m, const Integer& index, const std::vector<Index>& block_sizes);

/// True iff gram is the negated Cartan matrix of A_k: a chain of
/// (-2)-vectors meeting consecutively.
bool is_chain_gram(const IntMatrix& gram);

}  // namespace k3lat
