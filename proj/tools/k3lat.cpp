// k3lat: lattice, fibration and fixed-locus checks for order-7 K3 surfaces.
//
// Exit codes: 0 success, 1 verification failure, 2 input error.

#include "k3lat/exact.hpp"
#include "k3lat/fibration.hpp"
#include "k3lat/fixtures.hpp"
#include "k3lat/json_io.hpp"
#include "k3lat/lattice.hpp"
#include "k3lat/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using nlohmann::json;
using namespace k3lat;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kInputError = 2;

std::optional<json> read_json_file(const std::string& arg) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(arg, ec)) return std::nullopt;
  std::ifstream in(arg);
  if (!in) throw InputError("cannot open " + arg);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw InputError(arg + " is empty");
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(arg + ": " + e.what());
  }
}

std::string signature_text(const Signature& s) {
  std::ostringstream os;
  os << '(' << s.positive << ", " << s.negative;
  if (s.zero != 0) os << ", " << s.zero;
  os << ')';
  return os.str();
}

std::string group_text(const std::vector<Integer>& factors) {
  if (factors.empty()) return "0";
  std::string out;
  for (const auto& d : factors) {
    if (!out.empty()) out += " + ";
    out += "Z/" + d.get_str();
  }
  return out;
}

int cmd_lattice_info(const std::string& arg, bool as_json) {
  Lattice l;
  if (auto doc = read_json_file(arg)) {
    l = lattice_from_json(*doc);
  } else {
    try {
      l = make_named(arg);
    } catch (const std::invalid_argument& e) {
      throw InputError("not a file or known lattice name: " + arg);
    }
  }
  const Integer det = l.determinant();
  const Signature sig = signature(l);

  json out = {{"label", l.label()},
              {"rank", l.rank()},
              {"det", det.get_str()},
              {"signature", json::array({sig.positive, sig.negative, sig.zero})},
              {"even", l.is_even()}};
  std::optional<DiscriminantGroup> group;
  if (det != 0) {
    group = discriminant_group(l);
    json gens = json::array();
    for (std::size_t i = 0; i < group->generators.size(); ++i) {
      json g = {{"order", group->invariant_factors[i].get_str()},
                {"vector", to_string(group->generators[i])}};
      if (group->even) g["q"] = to_string(group->qvalues[i]);
      gens.push_back(std::move(g));
    }
    out["discriminant_group"] = {
        {"invariant_factors", json::array()}, {"generators", gens}};
    for (const auto& d : group->invariant_factors) {
      out["discriminant_group"]["invariant_factors"].push_back(d.get_str());
    }
  }

  if (as_json) {
    std::cout << out.dump(2) << '\n';
    return kOk;
  }
  std::cout << "lattice    " << (l.label().empty() ? arg : l.label()) << '\n'
            << "rank       " << l.rank() << '\n'
            << "det        " << det << '\n'
            << "signature  " << signature_text(sig) << '\n'
            << "even       " << (l.is_even() ? "yes" : "no") << '\n';
  if (!group) {
    std::cout << "discriminant group undefined (degenerate)\n";
    return kOk;
  }
  std::cout << "A_L        " << group_text(group->invariant_factors) << '\n';
  for (std::size_t i = 0; i < group->generators.size(); ++i) {
    std::cout << "  g" << i + 1 << " order " << group->invariant_factors[i];
    if (group->even) std::cout << "  q = " << to_string(group->qvalues[i]);
    std::cout << "  " << to_string(group->generators[i]) << '\n';
  }
  return kOk;
}

int report_fibration_model(const FibrationModel& f, bool as_json) {
  const int euler = f.euler_sum();
  const bool euler_ok = euler == 24;
  json out = fibration_to_json(f);
  out["euler_sum"] = euler;
  out["shioda_tate_rank"] = f.shioda_tate_rank();
  out["euler_ok"] = euler_ok;

  std::optional<NeronSeveriModel> ns;
  std::string ns_error;
  if (euler_ok && f.mw_rank == 0) {
    try {
      ns = build_neron_severi(f);
      out["neron_severi"] = {{"rank", ns->lattice.rank()},
                             {"det", ns->lattice.determinant().get_str()},
                             {"even", ns->lattice.is_even()}};
    } catch (const std::invalid_argument& e) {
      ns_error = e.what();
      out["neron_severi_error"] = ns_error;
    }
  }
  const bool ok = euler_ok && ns_error.empty();

  if (as_json) {
    std::cout << out.dump(2) << '\n';
  } else {
    for (const auto& spec : f.fibers) {
      std::cout << spec.type.name() << "  at " << spec.place;
      if (spec.count > 1) std::cout << "  x" << spec.count;
      if (!spec.identity.empty()) std::cout << "  identity " << spec.identity;
      std::cout << '\n';
    }
    std::cout << "Euler sum         " << euler << (euler_ok ? "" : "  (expected 24)")
              << '\n'
              << "Shioda-Tate rank  " << f.shioda_tate_rank() << '\n';
    if (ns) {
      std::cout << "NS lattice        rank " << ns->lattice.rank() << ", det "
                << ns->lattice.determinant() << ", "
                << (ns->lattice.is_even() ? "even" : "odd") << '\n';
    }
    if (!ns_error.empty()) std::cout << "NS lattice        " << ns_error << '\n';
  }
  return ok ? kOk : kFailed;
}

int report_weierstrass(const WeierstrassModel& w, std::optional<int> ns_rank,
                       bool as_json) {
  try {
    w.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  const K3Analysis a = analyze_k3(w, ns_rank);
  const RationalPoly disc = discriminant_poly(w);

  json fibers = json::array();
  for (const auto& f : a.fibers) {
    fibers.push_back({{"place", f.place.label()},
                      {"count", f.place.count},
                      {"type", f.kodaira.name()},
                      {"euler", f.euler},
                      {"components", f.components},
                      {"root_lattice", f.root_contribution},
                      {"valuations", json::array({f.v_a4, f.v_a6, f.v_disc})}});
  }
  const bool ok = a.euler_ok && a.issues.empty();

  if (as_json) {
    json out = {{"label", w.label},
                {"discriminant", disc.to_string()},
                {"fibers", fibers},
                {"euler_sum", a.euler_sum},
                {"euler_ok", a.euler_ok},
                {"trivial_lattice_rank", a.model.shioda_tate_rank()},
                {"issues", a.issues}};
    out["ns_rank"] = ns_rank ? json(*ns_rank) : json();
    out["implied_mw_rank"] =
        a.implied_mw_rank ? json(*a.implied_mw_rank) : json();
    std::cout << out.dump(2) << '\n';
    return ok ? kOk : kFailed;
  }

  if (!w.label.empty()) std::cout << "model  " << w.label << '\n';
  std::cout << "discriminant  " << disc.to_string() << '\n';
  for (const auto& f : a.fibers) {
    std::cout << "  " << f.kodaira.name() << "  at " << f.place.label();
    if (f.place.count > 1) std::cout << "  (" << f.place.count << " points)";
    std::cout << "  v = (" << f.v_a4 << ", " << f.v_a6 << ", " << f.v_disc
              << ")  e = " << f.euler;
    if (!f.root_contribution.empty()) std::cout << "  " << f.root_contribution;
    std::cout << '\n';
  }
  for (const auto& issue : a.issues) std::cout << "  ! " << issue << '\n';
  std::cout << "Euler sum      " << a.euler_sum
            << (a.euler_ok ? "" : "  (expected 24)") << '\n'
            << "trivial rank   " << a.model.shioda_tate_rank() << '\n';
  if (a.implied_mw_rank) {
    std::cout << "MW rank        " << *a.implied_mw_rank << "  (NS rank "
              << *ns_rank << ")\n";
  }
  return ok ? kOk : kFailed;
}

int cmd_fibration(const std::string& arg, std::optional<int> ns_rank,
                  bool as_json) {
  if (auto doc = read_json_file(arg)) {
    if (doc->is_object() && doc->contains("fibers")) {
      return report_fibration_model(fibration_from_json(*doc), as_json);
    }
    if (!ns_rank && doc->is_object() && doc->contains("ns_rank")) {
      ns_rank = doc->at("ns_rank").get<int>();
    }
    WeierstrassModel w = weierstrass_from_json(*doc);
    if (w.label.empty()) w.label = arg;
    return report_weierstrass(w, ns_rank, as_json);
  }
  const auto names = fixtures::weierstrass_names();
  if (std::find(names.begin(), names.end(), arg) == names.end()) {
    throw InputError("not a file or built-in model: " + arg);
  }
  return report_weierstrass(fixtures::weierstrass(arg), ns_rank.value_or(16),
                            as_json);
}

int cmd_verify_all(bool perturb, bool as_json) {
  VerifyOptions options;
  options.perturb_gram = perturb;
  const VerificationReport report = run_verify_all(options);
  if (as_json) {
    std::cout << report.to_json().dump(2) << '\n';
  } else {
    std::cout << report.to_text();
  }
  for (const CheckResult* c : report.failures()) {
    std::cerr << "failed: " << c->id << "  " << c->anchor << '\n';
  }
  return report.all_passed() ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact lattice and elliptic fibration checks for order-7 K3 "
               "surfaces",
               "k3lat"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(k3lat::kVersion));
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable output");

  auto* info = app.add_subcommand(
      "lattice-info", "Rank, determinant, signature and discriminant form");
  std::string lattice_arg;
  info->add_option("lattice", lattice_arg,
                   "Named lattice (A15, U+E8+A6, K7, ...) or lattice JSON file")
      ->required();

  auto* fib = app.add_subcommand(
      "fibration", "Singular fibers of a Weierstrass model or fibration JSON");
  std::string fib_arg;
  std::optional<int> ns_rank;
  fib->add_option("model", fib_arg, "AST, Ko, or a JSON file")->required();
  fib->add_option("--ns-rank", ns_rank,
                  "Picard number used for the Mordell-Weil rank");

  auto* verify = app.add_subcommand("verify-all", "Run every built-in check");
  std::string perturb;
  verify
      ->add_option("--perturb", perturb,
                   "Test hook: corrupt the named input (only 'gram')")
      ->expected(0, 1)
      ->default_str("gram")
      ->check(CLI::IsMember({"gram"}));

  for (auto* sub : {info, fib, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*info) return cmd_lattice_info(lattice_arg, as_json);
    if (*fib) return cmd_fibration(fib_arg, ns_rank, as_json);
    return cmd_verify_all(verify->count("--perturb") > 0, as_json);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
}
