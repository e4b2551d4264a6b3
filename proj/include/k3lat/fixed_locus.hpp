#pragma once

// Fixed loci of an order-7 non-symplectic automorphism: the table indexed by
// the invariant lattice, a Lefschetz consistency check, and the walk that
// propagates local action exponents along a configuration of invariant
// smooth rational curves.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace k3lat {

enum class CurveKind { Rational, Elliptic };

struct FixedLocusProfile {
  std::string invariant_lattice;  ///< e.g. "U+E8+A6", parseable by make_named
  int rank = 0;
  int n26 = 0;  ///< isolated points with local action diag(z^2, z^6)
  int n35 = 0;  ///< diag(z^3, z^5)
  int n44 = 0;  ///< diag(z^4, z^4)
  std::vector<CurveKind> curves;

  int isolated_points() const { return n26 + n35 + n44; }
  int rational_curves() const;
  /// Topological Euler characteristic: points 1, rational curves 2,
  /// elliptic curves 0.
  int euler_characteristic() const;
};

/// The five invariant lattices, in table order.
std::vector<std::string> fixed_locus_rows();

/// Throws std::invalid_argument for names outside the table. Accepts '+'
/// or the direct-sum sign between summands.
FixedLocusProfile fixed_locus_table(std::string_view invariant_lattice);

/// Point counts from the rank alone: ((r+2)/3, (r-1)/3, (r-4)/6);
/// std::nullopt unless all three are non-negative integers.
std::optional<std::vector<int>> point_count_formulas(int rank);

/// Euler characteristic of the fixed locus against the Lefschetz number
/// 2 + r - transcendental_rank / 6. The transcendental rank must be a
/// multiple of 6.
bool lefschetz_check(const FixedLocusProfile& profile, int transcendental_rank);

/// Invariant smooth rational curves and their intersection points.
struct CurveConfiguration {
  std::vector<std::string> curves;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::set<std::size_t> fixed;  ///< pointwise fixed curves

  std::size_t index_of(const std::string& label) const;
};

/// A linear chain of length curves labelled "C1".."C<length>", with the
/// given 1-based positions pointwise fixed.
CurveConfiguration linear_chain(std::size_t length,
                                const std::set<std::size_t>& fixed_positions);

/// An isolated point is of type P^{i,j} with i <= j and i + j = 1 mod 7.
struct FixedPoint {
  std::size_t curve = 0;
  std::optional<std::size_t> other;  ///< empty: the point lies on one curve
  int along = 0;  ///< tangent exponent along `curve`
  int across = 0; ///< tangent exponent along `other` (or the normal)
  bool isolated() const { return along != 0 && across != 0; }
  /// (min, max) of the two exponents.
  std::pair<int, int> type() const;
};

struct ChainModel {
  CurveConfiguration configuration;
  std::vector<FixedPoint> points;
  bool consistent = false;
  std::vector<std::string> conflicts;

  int count_isolated(int i, int j) const;
  std::size_t fixed_curves() const { return configuration.fixed.size(); }
  std::string describe(const FixedPoint& p) const;
};

/// Propagates tangent exponents from the pointwise fixed curves: 0 along a
/// fixed curve, exponents at a crossing sum to 1 mod order, and an
/// invariant non-fixed curve carries opposite exponents at its two fixed
/// points. Curves with fewer than two crossings get free isolated points.
ChainModel walk_chain(const CurveConfiguration& config, int order = 7);

/// True iff the walk is consistent and its isolated point counts and fixed
/// curve count match the table row.
bool count_check(const ChainModel& walk, const FixedLocusProfile& row);

}  // namespace k3lat
