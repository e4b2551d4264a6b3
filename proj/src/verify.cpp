#include "k3lat/verify.hpp"

#include "k3lat/exact.hpp"
#include "k3lat/fibration.hpp"
#include "k3lat/fixed_locus.hpp"
#include "k3lat/fixtures.hpp"
#include "k3lat/json_io.hpp"
#include "k3lat/lattice.hpp"
#include "k3lat/sublattice.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <functional>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace k3lat {

using nlohmann::json;

namespace {

json signature_json(const Signature& s) {
  return json::array({s.positive, s.negative, s.zero});
}

json factors_json(const std::vector<Integer>& factors) {
  json out = json::array();
  for (const auto& d : factors) out.push_back(d.get_str());
  return out;
}

std::string utc_now() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

bool lattice_invariants(const Lattice& l, json& v, const Integer& abs_det,
                        const Signature& sig) {
  const Integer det = l.determinant();
  const Signature s = signature(l);
  v["rank"] = l.rank();
  v["det"] = det.get_str();
  v["signature"] = signature_json(s);
  v["even"] = l.is_even();
  return abs_value(det) == abs_det && s == sig && l.is_even();
}

// ---------------------------------------------------------------------------

bool check_a15(json& v) {
  const Lattice a15 = make_named("A15");
  const DiscriminantGroup g = discriminant_group(a15);
  v["det"] = a15.determinant().get_str();
  v["discriminant_group"] = factors_json(g.invariant_factors);
  return abs_value(a15.determinant()) == 16 && g.invariant_factors.size() == 1 &&
         g.invariant_factors[0] == 16;
}

bool check_target(json& v) {
  return lattice_invariants(make_named("U+E8+A6"), v, 7, {1, 15, 0});
}

bool check_k7(json& v) {
  return lattice_invariants(make_named("K7"), v, 7, {0, 2, 0});
}

struct ExpectedFiber {
  Place::Kind kind;
  std::string type;
  int count;
  RationalPoly factor;
};

bool check_weierstrass(const std::string& name, const RationalPoly& disc,
                       const std::vector<ExpectedFiber>& expected,
                       int mw_rank, json& v) {
  const WeierstrassModel w = fixtures::weierstrass(name);
  const RationalPoly d = discriminant_poly(w);
  const K3Analysis a = analyze_k3(w, 16);
  json fibers = json::array();
  for (const auto& f : a.fibers) {
    fibers.push_back({{"place", f.place.label()},
                      {"type", f.kodaira.name()},
                      {"count", f.place.count},
                      {"valuations", json::array({f.v_a4, f.v_a6, f.v_disc})}});
  }
  v["discriminant"] = d.to_string();
  v["fibers"] = fibers;
  v["euler_sum"] = a.euler_sum;
  v["implied_mw_rank"] = a.implied_mw_rank ? json(*a.implied_mw_rank) : json();

  bool ok = d == disc && a.euler_ok && a.issues.empty() &&
            a.implied_mw_rank == mw_rank && a.fibers.size() == expected.size();
  for (const auto& e : expected) {
    const bool found = std::any_of(
        a.fibers.begin(), a.fibers.end(), [&](const FiberReport& f) {
          return f.place.kind == e.kind && f.kodaira.name() == e.type &&
                 f.place.count == e.count &&
                 (e.kind != Place::Kind::Factor || f.place.factor == e.factor);
        });
    ok = ok && found;
  }
  return ok;
}

bool check_ast(json& v) {
  const RationalPoly t = RationalPoly::t();
  const RationalPoly t7 = t.pow(7);
  const RationalPoly two(Rational(2));
  return check_weierstrass(
      "AST", RationalPoly(Rational(-432)) * t7 * (t7 - two),
      {{Place::Kind::Zero, "I7", 1, {}},
       {Place::Kind::Infinity, "II*", 1, {}},
       {Place::Kind::Factor, "I1", 7, t7 - two}},
      0, v);
}

bool check_ko(json& v) {
  const RationalPoly t = RationalPoly::t();
  const RationalPoly t7 = t.pow(7);
  return check_weierstrass(
      "Ko",
      RationalPoly(Rational(-16)) * t.pow(9) *
          (RationalPoly(Rational(4)) + RationalPoly(Rational(27)) * t7),
      {{Place::Kind::Zero, "III*", 1, {}},
       {Place::Kind::Infinity, "IV*", 1, {}},
       {Place::Kind::Factor, "I1", 7, t7 + RationalPoly(Rational(4, 27))}},
      1, v);
}

bool check_ns(const VerifyOptions& options, json& v) {
  const NeronSeveriModel ns = build_neron_severi(fixtures::ast_fibration());
  Lattice l = ns.lattice;
  if (options.perturb_gram) {
    IntMatrix g = l.gram();
    g(1, 1) += 2;
    l = Lattice(std::move(g), l.label());
    v["perturbed"] = "F.F";
  }
  const bool invariants = lattice_invariants(l, v, 7, {1, 15, 0});
  const bool st = fixtures::ast_fibration().shioda_tate_rank() == l.rank();
  v["shioda_tate_rank"] = fixtures::ast_fibration().shioda_tate_rank();
  const bool forms = l.is_even() && l.determinant() != 0 &&
                     glue_compatible(l, rescale(make_named("U+E8+A6"), -1));
  v["discriminant_form_as_U+E8+A6"] = forms;
  return invariants && st && forms && l.rank() == 16;
}

bool check_chains(json& v) {
  const NeronSeveriModel ns = build_neron_severi(fixtures::ast_fibration());
  const IntMatrix a15 = make_named("A15").gram();
  bool ok = true;
  for (const auto& name : fixtures::chain_names()) {
    const Sublattice s = extract_chain(ns, fixtures::chain(name));
    const Primitivity p = is_primitive(s);
    const auto half = half_sum_search(s);
    v[name] = {{"gram_is_A15", s.induced().gram() == a15},
               {"primitive", p.primitive},
               {"index_in_closure", p.index.get_str()},
               {"half_sums_in_lattice", half.size()}};
    ok = ok && s.induced().gram() == a15 && p.primitive && half.empty();
  }
  return ok;
}

bool check_glue(json& v) {
  const NeronSeveriModel ns = build_neron_severi(fixtures::ast_fibration());
  const Integer det_ns = ns.lattice.determinant();
  bool ok = true;
  for (const auto& name : fixtures::chain_names()) {
    const Sublattice delta = extract_chain(ns, fixtures::chain(name));
    GlueOptions opts;
    opts.positive_against = ns.fiber_class;
    const GlueSolution g = solve_glue(ns.lattice, delta, opts);
    json entry = glue_to_json(g);

    const Integer& n = g.n;
    bool identity = 16 * g.H_square == 7 * n * n;
    bool progression = true;
    for (std::size_t i = 0; i < g.a.size(); ++i) {
      if (floor_mod(g.a[i] - Integer(static_cast<long>(i + 1)) * g.a[0], n) !=
          0) {
        progression = false;
      }
    }
    const Integer a1 = floor_mod(g.a[0], n);
    const bool plus_minus_3 = a1 == 3 || a1 == n - 3;
    bool det_match = false;
    if (g.h_plus) {
      IntMatrix basis(ns.lattice.rank(), delta.rank() + 1);
      basis.leftCols(delta.rank()) = g.delta.coords();
      basis.col(delta.rank()) = *g.h_plus;
      const IntMatrix gram =
          basis.transpose() * ns.lattice.gram() * basis;
      const Integer d = det_exact(gram);
      entry["det_gram_C_h_plus"] = d.get_str();
      det_match = d == det_ns;
    }
    entry["a1_mod_n"] = a1.get_str();
    entry["a_i_equals_i_a1"] = progression;
    ok = ok && n == 16 && g.H_square == 112 && identity && progression &&
         plus_minus_3 && g.h_plus.has_value() && det_match;
    v[name] = std::move(entry);
  }
  v["det_ns"] = det_ns.get_str();
  return ok;
}

bool check_overlattices(json& v) {
  const Lattice m = make_named("A15+Z(112)");
  // Both summands must stay primitive: the chain is primitive in NS and the
  // complement is saturated.
  const auto found = enumerate_even_overlattices(m, 16, {15, 1});
  v["count_without_primitivity"] = enumerate_even_overlattices(m, 16).size();
  v["count"] = found.size();
  json list = json::array();
  for (const auto& o : found) {
    json glue = json::array();
    for (const auto& g : o.glue) glue.push_back(to_string(g));
    list.push_back({{"glue", glue},
                    {"det", o.lattice.determinant().get_str()},
                    {"even", o.lattice.is_even()}});
  }
  v["overlattices"] = list;
  if (found.size() != 2) return false;

  // Dynkin involution of A15, identity on Z(112).
  RatMatrix p = RatMatrix::Zero(16, 16);
  for (Index i = 0; i < 15; ++i) p(i, 14 - i) = 1;
  p(15, 15) = 1;
  const bool swapped = same_rational_span(p * found[0].basis, found[1].basis) &&
                       !same_rational_span(found[0].basis, found[1].basis);
  v["swapped_by_involution"] = swapped;
  bool ok = swapped;
  for (const auto& o : found) {
    ok = ok && o.lattice.is_even() && abs_value(o.lattice.determinant()) == 7;
  }
  return ok;
}

bool check_table(json& v) {
  const std::map<std::string, std::array<int, 4>> expected{
      {"U+K7", {2, 1, 0, 3}},
      {"U(7)+K7", {2, 1, 0, 3}},
      {"U+E8", {4, 3, 1, 8}},
      {"U(7)+E8", {4, 3, 1, 8}},
      {"U+E8+A6", {6, 5, 2, 13}}};
  bool ok = true;
  for (const auto& name : fixed_locus_rows()) {
    const FixedLocusProfile p = fixed_locus_table(name);
    const auto& e = expected.at(name);
    v[name] = {{"rank", p.rank},
               {"points", json::array({p.n26, p.n35, p.n44})},
               {"total", p.isolated_points()},
               {"rational_curves", p.rational_curves()},
               {"elliptic_curves",
                static_cast<int>(p.curves.size()) - p.rational_curves()}};
    ok = ok && p.n26 == e[0] && p.n35 == e[1] && p.n44 == e[2] &&
         p.isolated_points() == e[3] && make_named(name).rank() == p.rank;
  }
  return ok;
}

bool check_lefschetz(json& v) {
  bool ok = true;
  for (const auto& name : fixed_locus_rows()) {
    const FixedLocusProfile p = fixed_locus_table(name);
    const int t = 22 - p.rank;
    const bool pass = lefschetz_check(p, t);
    v[name] = {{"euler", p.euler_characteristic()},
               {"lefschetz", 2 + p.rank - t / 6},
               {"passed", pass}};
    ok = ok && pass;
  }
  return ok;
}

bool check_walk(json& v) {
  const NeronSeveriModel ns = build_neron_severi(fixtures::ast_fibration());
  const ChainModel walk = walk_chain(fixtures::ast_configuration(ns));

  std::map<std::string, std::set<std::string>> placed;
  for (const auto& p : walk.points) {
    if (!p.isolated()) continue;
    const auto [i, j] = p.type();
    placed["P" + std::to_string(i) + std::to_string(j)].insert(walk.describe(p));
  }
  const std::map<std::string, std::set<std::string>> expected{
      {"P26",
       {"G1 & G2", "G5 & G6", "S & T1", "T4 & T5", "T7 & T8", "on T9"}},
      {"P35", {"G2 & G3", "G4 & G5", "T1 & T2", "T3 & T4", "on T8"}},
      {"P44", {"G3 & G4", "T2 & T3"}}};
  std::vector<std::string> fixed;
  for (std::size_t c : walk.configuration.fixed) {
    fixed.push_back(walk.configuration.curves[c]);
  }
  std::sort(fixed.begin(), fixed.end());

  json places = json::object();
  for (const auto& [type, where] : placed) {
    places[type] = std::vector<std::string>(where.begin(), where.end());
  }
  v["consistent"] = walk.consistent;
  v["conflicts"] = walk.conflicts;
  v["isolated_points"] = places;
  v["fixed_curves"] = fixed;
  const bool counts = count_check(walk, fixed_locus_table("U+E8+A6"));
  v["count_check"] = counts;

  // Every placement of two fixed curves on a chain of fifteen.
  json valid = json::array();
  bool separations = true;
  for (std::size_t p = 1; p <= 15; ++p) {
    for (std::size_t q = p + 1; q <= 15; ++q) {
      if (walk_chain(linear_chain(15, {p, q})).consistent) {
        valid.push_back(json::array({p, q}));
        separations = separations && q - p == 7;
      }
    }
  }
  v["chain15_consistent_positions"] = valid;
  v["chain15_separation_always_7"] = separations;

  return walk.consistent && placed == expected && counts &&
         fixed == std::vector<std::string>{"G7", "T6"} && !valid.empty() &&
         separations;
}

struct CheckDef {
  const char* id;
  const char* anchor;
  std::function<bool(json&)> run;
};

}  // namespace

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

std::vector<const CheckResult*> VerificationReport::failures() const {
  std::vector<const CheckResult*> out;
  for (const auto& c : checks) {
    if (!c.passed) out.push_back(&c);
  }
  return out;
}

json VerificationReport::to_json(bool with_timestamp) const {
  json list = json::array();
  for (const auto& c : checks) {
    list.push_back({{"id", c.id},
                    {"anchor", c.anchor},
                    {"status", c.passed ? "pass" : "fail"},
                    {"values", c.values}});
  }
  json out = {{"version", version},
              {"passed", all_passed()},
              {"checks", std::move(list)}};
  if (with_timestamp) out["timestamp"] = timestamp;
  return out;
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  os << "k3lat " << version << " verify-all\n";
  for (const auto& c : checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.id << "  " << c.anchor << '\n';
  }
  const auto failed = failures();
  os << (checks.size() - failed.size()) << '/' << checks.size()
     << " checks passed\n";
  return os.str();
}

VerificationReport run_verify_all(const VerifyOptions& options) {
  const std::vector<CheckDef> defs{
      {"01-a15", "A15 has |det| 16 and discriminant group Z/16", check_a15},
      {"02-target", "U+E8+A6 is even of signature (1,15) with |det| 7",
       check_target},
      {"03-k7", "K7 is even, negative definite, |det| 7", check_k7},
      {"04-ast-fibers", "AST: I7 at 0, II* at infinity, 7 I1 at t^7 = 2",
       check_ast},
      {"05-ko-fibers", "Ko: III* at 0, IV* at infinity, 7 I1, MW rank 1",
       check_ko},
      {"06-ns-det", "NS of the AST fibration: rank 16, even, |det| 7",
       [&](json& v) { return check_ns(options, v); }},
      {"07-chains", "both A15 chains are primitive with no half sums",
       check_chains},
      {"08-glue", "glue: n = 16, H^2 = 112, a1 = +-3 mod 16", check_glue},
      {"09-overlattices", "A15+Z(112) has two even index-16 overlattices with primitive summands",
       check_overlattices},
      {"10-fixed-table", "fixed locus point counts per invariant lattice",
       check_table},
      {"11-lefschetz", "Lefschetz number matches the fixed locus",
       check_lefschetz},
      {"12-walk", "local action walk places 13 points and fixes G7, T6",
       check_walk},
  };

  VerificationReport report;
  report.timestamp = utc_now();
  for (const auto& d : defs) {
    CheckResult r;
    r.id = d.id;
    r.anchor = d.anchor;
    try {
      r.passed = d.run(r.values);
    } catch (const std::exception& e) {
      r.passed = false;
      r.values["error"] = e.what();
    }
    report.checks.push_back(std::move(r));
  }
  std::sort(report.checks.begin(), report.checks.end(),
            [](const CheckResult& a, const CheckResult& b) {
              return a.id < b.id;
            });
  return report;
}

}  // namespace k3lat
