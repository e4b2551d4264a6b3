#include "k3lat/fibration.hpp"

#include "k3lat/exact.hpp"

#include <algorithm>
#include <stdexcept>

namespace k3lat {

namespace {

using Family = KodairaType::Family;

// Multiplicity of the roots of the squarefree polynomial p (assumed uniform)
// as roots of f.
int uniform_valuation(const RationalPoly& p, const RationalPoly& f) {
  if (f.is_zero()) return kInfiniteValuation;
  int k = 0;
  RationalPoly g = f;
  while (!g.is_zero() && p.divides(g)) {
    ++k;
    g = g.derivative();
  }
  return k;
}

// Splits squarefree p into pieces on whose roots f has constant multiplicity.
std::vector<RationalPoly> split_by_multiplicity(const RationalPoly& p,
                                                const RationalPoly& f) {
  if (f.is_zero()) return {p};
  std::vector<RationalPoly> pieces;
  RationalPoly remaining = p;
  RationalPoly g = f;
  while (remaining.degree() > 0) {
    RationalPoly higher = gcd(remaining, g);
    RationalPoly exact = divmod(remaining, higher).first.monic();
    if (exact.degree() > 0) pieces.push_back(exact);
    remaining = higher;
    g = g.derivative();
  }
  return pieces;
}

int third(int v) {
  if (v == kInfiniteValuation) return v;
  if (v % 3 != 0) {
    throw std::invalid_argument("a4^3 has a valuation not divisible by 3");
  }
  return v / 3;
}

int degree_complement(int weight, const RationalPoly& f) {
  return f.is_zero() ? kInfiniteValuation : weight - f.degree();
}

bool less_poly(const RationalPoly& a, const RationalPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    if (a.coefficient(i) != b.coefficient(i)) {
      return a.coefficient(i) < b.coefficient(i);
    }
  }
  return false;
}

std::string component_label(const std::string& prefix, int copy, int count,
                            int index) {
  std::string label = prefix;
  if (count > 1) label += std::to_string(copy + 1) + "_";
  return label + std::to_string(index + 1);
}

}  // namespace

int KodairaType::euler() const {
  switch (family) {
    case Family::I: return n;
    case Family::II: return 2;
    case Family::III: return 3;
    case Family::IV: return 4;
    case Family::IStar: return n + 6;
    case Family::IVStar: return 8;
    case Family::IIIStar: return 9;
    case Family::IIStar: return 10;
  }
  return 0;
}

int KodairaType::components() const {
  switch (family) {
    case Family::I: return std::max(n, 1);
    case Family::II: return 1;
    case Family::III: return 2;
    case Family::IV: return 3;
    case Family::IStar: return n + 5;
    case Family::IVStar: return 7;
    case Family::IIIStar: return 8;
    case Family::IIStar: return 9;
  }
  return 0;
}

std::string KodairaType::root_lattice() const {
  switch (family) {
    case Family::I: return n >= 2 ? "A" + std::to_string(n - 1) : "";
    case Family::II: return "";
    case Family::III: return "A1";
    case Family::IV: return "A2";
    case Family::IStar: return "D" + std::to_string(n + 4);
    case Family::IVStar: return "E6";
    case Family::IIIStar: return "E7";
    case Family::IIStar: return "E8";
  }
  return "";
}

std::string KodairaType::name() const {
  switch (family) {
    case Family::I: return "I" + std::to_string(n);
    case Family::II: return "II";
    case Family::III: return "III";
    case Family::IV: return "IV";
    case Family::IStar: return "I" + std::to_string(n) + "*";
    case Family::IVStar: return "IV*";
    case Family::IIIStar: return "III*";
    case Family::IIStar: return "II*";
  }
  return "";
}

KodairaType KodairaType::parse(const std::string& text) {
  std::string t;
  for (char c : text) {
    if (c != '_' && c != '^' && c != '{' && c != '}' && c != ' ') t += c;
  }
  bool star = false;
  if (!t.empty() && t.back() == '*') {
    star = true;
    t.pop_back();
  }
  if (t == "II") return {star ? Family::IIStar : Family::II, 0};
  if (t == "III") return {star ? Family::IIIStar : Family::III, 0};
  if (t == "IV") return {star ? Family::IVStar : Family::IV, 0};
  if (t.size() >= 2 && t[0] == 'I' &&
      std::all_of(t.begin() + 1, t.end(),
                  [](char c) { return c >= '0' && c <= '9'; }) &&
      t.size() < 6) {
    const int n = std::stoi(t.substr(1));
    return {star ? Family::IStar : Family::I, n};
  }
  throw std::invalid_argument("unknown Kodaira type: " + text);
}

WeierstrassModel WeierstrassModel::from_a4(RationalPoly a4, RationalPoly a6,
                                           std::string label) {
  WeierstrassModel w;
  w.a4_cubed = a4.pow(3);
  w.a4 = std::move(a4);
  w.a6 = std::move(a6);
  w.label = std::move(label);
  return w;
}

WeierstrassModel WeierstrassModel::from_a4_cubed(RationalPoly a4_cubed,
                                                 RationalPoly a6,
                                                 std::string label) {
  WeierstrassModel w;
  w.a4_cubed = std::move(a4_cubed);
  w.a6 = std::move(a6);
  w.label = std::move(label);
  return w;
}

int WeierstrassModel::a4_degree() const {
  if (a4_cubed.is_zero()) return -1;
  if (a4_cubed.degree() % 3 != 0) {
    throw std::invalid_argument("a4^3 has degree not divisible by 3");
  }
  return a4_cubed.degree() / 3;
}

void WeierstrassModel::validate() const {
  if (a4 && !(a4->pow(3) == a4_cubed)) {
    throw std::invalid_argument("a4 and a4^3 disagree");
  }
  if (a4_degree() > 8) {
    throw std::invalid_argument("deg a4 exceeds the K3 bound 8");
  }
  if (a6.degree() > 12) {
    throw std::invalid_argument("deg a6 exceeds the K3 bound 12");
  }
  if (discriminant_poly(*this).is_zero()) {
    throw std::invalid_argument("discriminant vanishes identically");
  }
}

RationalPoly discriminant_poly(const WeierstrassModel& w) {
  return RationalPoly(Rational(-16)) *
         (RationalPoly(Rational(4)) * w.a4_cubed +
          RationalPoly(Rational(27)) * w.a6 * w.a6);
}

Place Place::zero() {
  Place p;
  p.kind = Kind::Zero;
  p.factor = RationalPoly::t();
  return p;
}

Place Place::infinity() {
  Place p;
  p.kind = Kind::Infinity;
  return p;
}

Place Place::roots_of(const RationalPoly& factor) {
  if (factor.degree() < 1) {
    throw std::invalid_argument("place factor must be non-constant");
  }
  Place p;
  p.kind = Kind::Factor;
  p.factor = factor.monic();
  p.count = factor.degree();
  return p;
}

std::vector<Integer> Place::primitive_factor() const {
  std::vector<Integer> out;
  if (factor.is_zero()) return out;
  Integer denom = 1;
  for (const auto& c : factor.coefficients()) {
    mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), c.get_den_mpz_t());
  }
  Integer content = 0;
  for (const auto& c : factor.coefficients()) {
    Rational scaled = c * Rational(denom);
    out.push_back(scaled.get_num());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), out.back().get_mpz_t());
  }
  if (out.back() < 0) content = -content;
  for (auto& c : out) c /= content;
  return out;
}

std::string Place::label() const {
  switch (kind) {
    case Kind::Zero: return "t=0";
    case Kind::Infinity: return "t=inf";
    case Kind::Factor: break;
  }
  if (factor.degree() == 1) {
    return "t=" + to_string(Rational(-factor.coefficient(0)));
  }
  return Polynomial<Integer>(primitive_factor()).to_string() + " = 0";
}

KodairaType kodaira_from_valuations(int v_a4, int v_a6, int v_disc) {
  if (v_disc == 0) {
    throw std::invalid_argument("smooth fiber: discriminant does not vanish");
  }
  if (v_a4 >= 4 && v_a6 >= 6) {
    throw NonMinimalPlace("non-minimal model: v(a4) >= 4 and v(a6) >= 6; "
                          "rescale x, y by t^2, t^3 to reduce");
  }
  if (v_a4 == 0 || v_a6 == 0) return {Family::I, v_disc};
  if (v_a4 == 2 && v_a6 == 3 && v_disc >= 6) {
    return {Family::IStar, v_disc - 6};
  }
  switch (v_disc) {
    case 2: return {Family::II, 0};
    case 3: return {Family::III, 0};
    case 4: return {Family::IV, 0};
    case 6: return {Family::IStar, 0};
    case 8: return {Family::IVStar, 0};
    case 9: return {Family::IIIStar, 0};
    case 10: return {Family::IIStar, 0};
    default: break;
  }
  throw std::invalid_argument("valuations (" + std::to_string(v_a4) + ", " +
                              std::to_string(v_a6) + ", " +
                              std::to_string(v_disc) +
                              ") match no Kodaira type");
}

FiberReport classify_place(const WeierstrassModel& w, const Place& place) {
  const RationalPoly disc = discriminant_poly(w);
  FiberReport r;
  r.place = place;
  switch (place.kind) {
    case Place::Kind::Zero:
      r.v_a4 = w.a4_cubed.is_zero() ? kInfiniteValuation
                                    : third(w.a4_cubed.valuation_at_zero());
      r.v_a6 = w.a6.is_zero() ? kInfiniteValuation : w.a6.valuation_at_zero();
      r.v_disc = disc.valuation_at_zero();
      break;
    case Place::Kind::Infinity:
      r.v_a4 = w.a4_cubed.is_zero() ? kInfiniteValuation : 8 - w.a4_degree();
      r.v_a6 = degree_complement(12, w.a6);
      r.v_disc = degree_complement(24, disc);
      break;
    case Place::Kind::Factor:
      r.v_a4 = third(uniform_valuation(place.factor, w.a4_cubed));
      r.v_a6 = uniform_valuation(place.factor, w.a6);
      r.v_disc = uniform_valuation(place.factor, disc);
      break;
  }
  r.kodaira = kodaira_from_valuations(r.v_a4, r.v_a6, r.v_disc);
  r.euler = r.kodaira.euler();
  r.components = r.kodaira.components();
  r.root_contribution = r.kodaira.root_lattice();
  return r;
}

std::vector<Place> singular_places(const WeierstrassModel& w) {
  const RationalPoly disc = discriminant_poly(w);
  if (disc.is_zero()) {
    throw std::invalid_argument("discriminant vanishes identically");
  }
  std::vector<Place> places;
  const int v0 = disc.valuation_at_zero();
  if (v0 > 0) places.push_back(Place::zero());

  std::vector<Rational> shifted(disc.coefficients().begin() + v0,
                                disc.coefficients().end());
  const RationalPoly rest(std::move(shifted));
  if (rest.degree() > 0) {
    const RationalPoly squarefree =
        divmod(rest, gcd(rest, rest.derivative())).first.monic();
    std::vector<RationalPoly> pieces{squarefree};
    for (const RationalPoly* f : {&rest, &w.a4_cubed, &w.a6}) {
      std::vector<RationalPoly> refined;
      for (const auto& p : pieces) {
        for (auto& q : split_by_multiplicity(p, *f)) refined.push_back(q);
      }
      pieces = std::move(refined);
    }
    std::sort(pieces.begin(), pieces.end(), less_poly);
    for (const auto& p : pieces) places.push_back(Place::roots_of(p));
  }
  if (disc.degree() < 24) places.push_back(Place::infinity());
  return places;
}

int FibrationModel::euler_sum() const {
  int sum = 0;
  for (const auto& f : fibers) sum += f.count * f.type.euler();
  return sum;
}

int FibrationModel::shioda_tate_rank() const {
  int rank = 2 + mw_rank;
  for (const auto& f : fibers) rank += f.count * (f.type.components() - 1);
  return rank;
}

K3Analysis analyze_k3(const WeierstrassModel& w, std::optional<int> ns_rank) {
  w.validate();
  K3Analysis out;
  int index = 0;
  for (const Place& place : singular_places(w)) {
    try {
      FiberReport r = classify_place(w, place);
      out.euler_sum += place.count * r.euler;
      FiberSpec spec;
      spec.place = place.label();
      spec.type = r.kodaira;
      spec.prefix = "P" + std::to_string(++index) + "_";
      spec.identity = spec.prefix + "1";
      spec.count = place.count;
      out.model.fibers.push_back(spec);
      out.fibers.push_back(std::move(r));
    } catch (const NonMinimalPlace& e) {
      out.issues.push_back(place.label() + ": " + e.what());
    }
  }
  out.euler_ok = out.euler_sum == 24;
  if (!out.euler_ok) {
    out.issues.push_back("Euler numbers sum to " +
                         std::to_string(out.euler_sum) + ", expected 24");
  }
  if (ns_rank) {
    int trivial = 2;
    for (const auto& f : out.model.fibers) {
      trivial += f.count * (f.type.components() - 1);
    }
    out.implied_mw_rank = *ns_rank - trivial;
    out.model.mw_rank = *out.implied_mw_rank;
  }
  return out;
}

FiberDiagram fiber_diagram(const KodairaType& type) {
  FiberDiagram d;
  const int m = type.components();
  d.intersection = IntMatrix::Zero(m, m);
  auto link = [&](int a, int b) {
    d.intersection(a, b) += 1;
    d.intersection(b, a) += 1;
  };
  if (m == 1) {
    d.multiplicity = {1};
    return d;  // smooth, nodal or cuspidal: the class of the whole fiber
  }
  for (int i = 0; i < m; ++i) d.intersection(i, i) = -2;
  switch (type.family) {
    case Family::I:
      d.multiplicity.assign(static_cast<std::size_t>(m), 1);
      for (int i = 0; i < m; ++i) link(i, (i + 1) % m);  // I2: two points
      break;
    case Family::III:
      d.multiplicity = {1, 1};
      link(0, 1);
      link(0, 1);  // tangent: intersection 2
      break;
    case Family::IV:
      d.multiplicity = {1, 1, 1};
      link(0, 1);
      link(1, 2);
      link(0, 2);
      break;
    case Family::IStar: {
      const int n = type.n;
      d.multiplicity.assign(static_cast<std::size_t>(m), 2);
      d.multiplicity[0] = d.multiplicity[1] = 1;
      d.multiplicity[static_cast<std::size_t>(n + 3)] = 1;
      d.multiplicity[static_cast<std::size_t>(n + 4)] = 1;
      link(0, 2);
      link(1, 2);
      for (int i = 2; i < 2 + n; ++i) link(i, i + 1);
      link(2 + n, n + 3);
      link(2 + n, n + 4);
      break;
    }
    case Family::IVStar:
      d.multiplicity = {1, 2, 3, 2, 1, 2, 1};
      for (int i = 0; i < 4; ++i) link(i, i + 1);
      link(2, 5);
      link(5, 6);
      break;
    case Family::IIIStar:
      d.multiplicity = {1, 2, 3, 4, 3, 2, 1, 2};
      for (int i = 0; i < 6; ++i) link(i, i + 1);
      link(3, 7);
      break;
    case Family::IIStar:
      d.multiplicity = {1, 2, 3, 4, 5, 6, 4, 2, 3};
      for (int i = 0; i < 7; ++i) link(i, i + 1);
      link(5, 8);
      break;
    case Family::II:
      break;
  }
  return d;
}

const IntVector& NeronSeveriModel::curve(const std::string& label) const {
  auto it = curve_classes.find(label);
  if (it == curve_classes.end()) {
    throw std::invalid_argument("unknown curve label: " + label);
  }
  return it->second;
}

NeronSeveriModel build_neron_severi(const FibrationModel& f) {
  if (f.mw_rank != 0) {
    throw std::invalid_argument(
        "build_neron_severi: Mordell-Weil rank must be 0");
  }
  if (f.euler_sum() != 24) {
    throw std::invalid_argument("build_neron_severi: Euler numbers sum to " +
                                std::to_string(f.euler_sum()) +
                                ", expected 24");
  }

  struct Block {
    std::string prefix;
    int copy = 0;
    int count = 1;
    int identity = 0;
    FiberDiagram diagram;
    Index offset = 0;  // first basis index of the non-identity components
  };
  std::vector<Block> blocks;
  Index rank = 2;
  for (const auto& spec : f.fibers) {
    FiberDiagram diagram = fiber_diagram(spec.type);
    const int m = static_cast<int>(diagram.multiplicity.size());
    if (m > 1) {
      const IntVector mult = Eigen::Map<const Eigen::VectorXi>(
                                 diagram.multiplicity.data(), m)
                                 .cast<Integer>();
      if (!(diagram.intersection * mult).isZero()) {
        throw std::invalid_argument("fiber " + spec.place +
                                    ": multiplicities are not balanced");
      }
    }
    for (int copy = 0; copy < spec.count; ++copy) {
      Block b;
      b.prefix = spec.prefix;
      b.copy = copy;
      b.count = spec.count;
      b.diagram = diagram;
      if (m > 1) {
        const std::string identity =
            spec.identity.empty() ? spec.prefix + "1" : spec.identity;
        b.identity = -1;
        for (int i = 0; i < m; ++i) {
          if (component_label(spec.prefix, copy, spec.count, i) == identity ||
              component_label(spec.prefix, 0, 1, i) == identity) {
            b.identity = i;
          }
        }
        if (b.identity < 0 ||
            diagram.multiplicity[static_cast<std::size_t>(b.identity)] != 1) {
          throw std::invalid_argument(
              "fiber " + spec.place + ": identity component " + identity +
              " is not a multiplicity-one component");
        }
      }
      b.offset = rank;
      rank += m - 1;
      blocks.push_back(std::move(b));
    }
  }

  NeronSeveriModel ns;
  IntMatrix gram = IntMatrix::Zero(rank, rank);
  gram(0, 0) = -2;
  gram(0, 1) = gram(1, 0) = 1;
  ns.basis_labels = {"S", "F"};
  for (const auto& b : blocks) {
    const int m = static_cast<int>(b.diagram.multiplicity.size());
    // Basis index of each non-identity component.
    std::vector<Index> position(static_cast<std::size_t>(m), -1);
    Index next = b.offset;
    for (int i = 0; i < m; ++i) {
      if (m == 1 || i == b.identity) continue;
      position[static_cast<std::size_t>(i)] = next++;
      ns.basis_labels.push_back(component_label(b.prefix, b.copy, b.count, i));
    }
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const Index pi = position[static_cast<std::size_t>(i)];
        const Index pj = position[static_cast<std::size_t>(j)];
        if (pi >= 0 && pj >= 0) gram(pi, pj) = b.diagram.intersection(i, j);
      }
    }
  }
  ns.lattice = Lattice(gram, "NS");
  ns.fiber_class = IntVector::Zero(rank);
  ns.fiber_class(1) = 1;

  IntVector section = IntVector::Zero(rank);
  section(0) = 1;
  ns.curve_classes["S"] = section;
  ns.curve_classes["F"] = ns.fiber_class;
  for (const auto& b : blocks) {
    const int m = static_cast<int>(b.diagram.multiplicity.size());
    if (m == 1) continue;
    IntVector identity_class = ns.fiber_class;
    Index next = b.offset;
    for (int i = 0; i < m; ++i) {
      if (i == b.identity) continue;
      IntVector v = IntVector::Zero(rank);
      v(next++) = 1;
      identity_class -=
          Integer(b.diagram.multiplicity[static_cast<std::size_t>(i)]) * v;
      ns.curve_classes[component_label(b.prefix, b.copy, b.count, i)] = v;
    }
    ns.curve_classes[component_label(b.prefix, b.copy, b.count, b.identity)] =
        identity_class;
  }
  return ns;
}

Sublattice extract_chain(const NeronSeveriModel& ns,
                         const std::vector<std::string>& labels) {
  IntMatrix coords(ns.lattice.rank(), static_cast<Index>(labels.size()));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    coords.col(static_cast<Index>(i)) = ns.curve(labels[i]);
  }
  if (rank_exact(coords) != coords.cols()) {
    throw std::invalid_argument("extract_chain: curve classes are dependent");
  }
  Sublattice chain(ns.lattice, coords, "chain");
  if (!is_chain_gram(chain.induced().gram())) {
    throw std::invalid_argument(
        "extract_chain: curves do not form a linear A_k chain");
  }
  return chain;
}

}  // namespace k3lat
