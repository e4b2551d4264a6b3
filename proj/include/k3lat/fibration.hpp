#pragma once

// Elliptic K3 surfaces y^2 = x^3 + a4(t) x + a6(t): Kodaira types of the
// singular fibers from valuations, the Euler-number budget, Shioda-Tate,
// and the Neron-Severi lattice generated by a section, the fiber class and
// the fiber components.

#include "k3lat/lattice.hpp"
#include "k3lat/polynomial.hpp"
#include "k3lat/sublattice.hpp"

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace k3lat {

inline constexpr int kInfiniteValuation = std::numeric_limits<int>::max();

struct KodairaType {
  enum class Family { I, II, III, IV, IStar, IVStar, IIIStar, IIStar };

  Family family = Family::I;
  int n = 0;  ///< subscript of I_n and I_n^*

  int euler() const;
  int components() const;
  /// "A6", "E8", "D4", ... or empty when the fiber has one component.
  std::string root_lattice() const;
  /// "I7", "II*", "I0*", "IV", ...
  std::string name() const;

  /// Inverse of name(); accepts "I_7" and "I7" style. Throws
  /// std::invalid_argument on unknown names.
  static KodairaType parse(const std::string& text);

  friend bool operator==(const KodairaType&, const KodairaType&) = default;
};

/// Short Weierstrass model over Q(t).
///
/// Only a4^3 enters the discriminant, so the model may carry a4 only through
/// a4^3 (for an irrational constant such as the cube root of -27/4).
struct WeierstrassModel {
  RationalPoly a4_cubed;
  std::optional<RationalPoly> a4;
  RationalPoly a6;
  std::string label;

  static WeierstrassModel from_a4(RationalPoly a4, RationalPoly a6,
                                  std::string label = {});
  static WeierstrassModel from_a4_cubed(RationalPoly a4_cubed, RationalPoly a6,
                                        std::string label = {});

  /// deg a4 (from a4^3 when a4 is symbolic); -1 when a4 == 0.
  int a4_degree() const;

  /// Throws std::invalid_argument when deg a4 > 8, deg a6 > 12, a4^3 is not
  /// a cube degree-wise, or the discriminant vanishes identically.
  void validate() const;
};

/// -16 (4 a4^3 + 27 a6^2).
RationalPoly discriminant_poly(const WeierstrassModel& w);

/// A set of conjugate places of P^1 sharing the same valuation data: t = 0,
/// t = infinity, or all roots of a squarefree factor of the discriminant.
struct Place {
  enum class Kind { Zero, Infinity, Factor };

  Kind kind = Kind::Zero;
  RationalPoly factor;  ///< monic; t for Zero, empty for Infinity
  int count = 1;        ///< number of geometric points

  static Place zero();
  static Place infinity();
  static Place roots_of(const RationalPoly& factor);

  /// "t=0", "t=inf", "t=-1/2", or "27*t^7 + 4 = 0" for higher degree.
  std::string label() const;
  /// The factor scaled to primitive integer coefficients, positive leading.
  std::vector<Integer> primitive_factor() const;
};

/// Non-minimal Weierstrass data at a place (v(a4) >= 4 and v(a6) >= 6).
class NonMinimalPlace : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct FiberReport {
  Place place;
  KodairaType kodaira;
  int euler = 0;       ///< per geometric point
  int components = 0;  ///< per geometric point
  std::string root_contribution;
  int v_a4 = 0;
  int v_a6 = 0;
  int v_disc = 0;
};

/// Kodaira type from (v(a4), v(a6), v(disc)) in residue characteristic 0.
/// Throws NonMinimalPlace or std::invalid_argument for a smooth place.
KodairaType kodaira_from_valuations(int v_a4, int v_a6, int v_disc);

/// Valuations of a4, a6 and the discriminant at the place (infinity uses
/// the K3 weights 8, 12, 24), then the Kodaira type.
FiberReport classify_place(const WeierstrassModel& w, const Place& place);

/// All places where the discriminant vanishes, ordered t=0, finite factors
/// (by degree, then coefficients), t=inf.
std::vector<Place> singular_places(const WeierstrassModel& w);

struct FiberSpec {
  std::string place;
  KodairaType type;
  std::string identity;  ///< label of the component met by the zero section
  std::string prefix;    ///< component labels are prefix + 1-based index
  int count = 1;         ///< identical fibers at conjugate places
};

struct FibrationModel {
  std::vector<FiberSpec> fibers;
  int mw_rank = 0;

  int euler_sum() const;
  /// 2 + sum (components - 1) + mw_rank.
  int shioda_tate_rank() const;
};

struct K3Analysis {
  std::vector<FiberReport> fibers;
  int euler_sum = 0;
  bool euler_ok = false;
  std::vector<std::string> issues;  ///< non-minimal places, Euler mismatch
  std::optional<int> implied_mw_rank;
  FibrationModel model;             ///< fibers with default prefixes
};

/// Classifies every singular place. With ns_rank given, the Mordell-Weil
/// rank implied by Shioda-Tate is reported.
K3Analysis analyze_k3(const WeierstrassModel& w,
                      std::optional<int> ns_rank = std::nullopt);

/// Dual graph of a Kodaira fiber: multiplicities and the intersection
/// matrix of its components (labels 1..m). Single-component fibers have
/// a 1x1 zero matrix.
struct FiberDiagram {
  std::vector<int> multiplicity;
  IntMatrix intersection;
};

FiberDiagram fiber_diagram(const KodairaType& type);

/// Lattice spanned by the zero section S, the fiber class F and the
/// non-identity fiber components, with every curve's class.
struct NeronSeveriModel {
  Lattice lattice;
  std::vector<std::string> basis_labels;
  std::map<std::string, IntVector> curve_classes;  ///< includes S, F, identities
  IntVector fiber_class;

  const IntVector& curve(const std::string& label) const;
};

/// Throws std::invalid_argument when mw_rank != 0, the Euler sum is not 24,
/// an identity label is not a multiplicity-one component, or a diagram fails
/// the multiplicity balance 2 m(v) = sum of neighbour multiplicities.
NeronSeveriModel build_neron_severi(const FibrationModel& f);

/// Sublattice spanned by the named curves, which must form a chain (induced
/// Gram equal to that of A_k). Throws std::invalid_argument otherwise.
Sublattice extract_chain(const NeronSeveriModel& ns,
                         const std::vector<std::string>& labels);

}  // namespace k3lat
