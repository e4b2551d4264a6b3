#include "k3lat/fixtures.hpp"

#include <stdexcept>

namespace k3lat::fixtures {

WeierstrassModel weierstrass(const std::string& name) {
  const RationalPoly t = RationalPoly::t();
  if (name == "AST") {
    // a4 is the real cube root of -27/4; only its cube is needed.
    return WeierstrassModel::from_a4_cubed(
        RationalPoly(Rational(-27, 4)), t.pow(7) - RationalPoly(Rational(1)),
        "AST");
  }
  if (name == "Ko") {
    return WeierstrassModel::from_a4(t.pow(3), t.pow(8), "Ko");
  }
  throw std::invalid_argument("unknown Weierstrass fixture: " + name);
}

std::vector<std::string> weierstrass_names() { return {"AST", "Ko"}; }

FibrationModel ast_fibration() {
  FibrationModel f;
  f.fibers.push_back({"t=0", KodairaType::parse("I7"), "G7", "G", 1});
  f.fibers.push_back({"t=inf", KodairaType::parse("II*"), "T1", "T", 1});
  f.fibers.push_back({"t^7 - 2 = 0", KodairaType::parse("I1"), "", "N", 7});
  f.mw_rank = 0;
  return f;
}

std::vector<std::string> chain(const std::string& name) {
  const std::vector<std::string> tail{"G7", "S",  "T1", "T2", "T3", "T4",
                                      "T5", "T6", "T7", "T8"};
  std::vector<std::string> head;
  if (name == "A15-chain-1") {
    head = {"G2", "G3", "G4", "G5", "G6"};
  } else if (name == "A15-chain-2") {
    head = {"G5", "G4", "G3", "G2", "G1"};
  } else {
    throw std::invalid_argument("unknown chain fixture: " + name);
  }
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

std::vector<std::string> chain_names() {
  return {"A15-chain-1", "A15-chain-2"};
}

CurveConfiguration ast_configuration(const NeronSeveriModel& ns) {
  CurveConfiguration c;
  for (int i = 1; i <= 7; ++i) c.curves.push_back("G" + std::to_string(i));
  c.curves.push_back("S");
  for (int i = 1; i <= 9; ++i) c.curves.push_back("T" + std::to_string(i));
  for (std::size_t a = 0; a < c.curves.size(); ++a) {
    for (std::size_t b = a + 1; b < c.curves.size(); ++b) {
      const Integer x =
          ns.lattice.pairing(ns.curve(c.curves[a]), ns.curve(c.curves[b]));
      if (x == 1) {
        c.edges.emplace_back(a, b);
      } else if (x != 0) {
        throw std::logic_error("ast_configuration: curves " + c.curves[a] +
                               " and " + c.curves[b] + " meet with " +
                               x.get_str());
      }
    }
  }
  c.fixed = {c.index_of("G7"), c.index_of("T6")};
  return c;
}

}  // namespace k3lat::fixtures
