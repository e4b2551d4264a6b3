#pragma once

// JSON forms of lattices, sublattices, Weierstrass models, fibrations and
// glue solutions.
//
//   lattice      {"label": "K7", "gram": [[-4, 1], [1, -2]]}
//   sublattice   {"ambient": <lattice>, "coords": [[...], ...]}
//                (one inner array per generator, in ambient coordinates)
//   weierstrass  {"a4_cubed": "-27/4" | [...], "a4": [...], "a6": [...]}
//                (coefficient lists start at the constant term)
//   fibration    {"fibers": [{"place": "t=0", "type": "I7", "identity": "G7",
//                 "prefix": "G", "count": 1}, ...], "mw_rank": 0}
//
// Integers and rationals are read from JSON numbers or strings; anything
// produced for reports writes exact values as strings.

#include "k3lat/fibration.hpp"
#include "k3lat/lattice.hpp"
#include "k3lat/sublattice.hpp"

#include <json.hpp>

#include <stdexcept>

namespace k3lat {

/// Malformed input document.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Integer integer_from_json(const nlohmann::json& j);
Rational rational_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Integer& x);
nlohmann::json to_json(const Rational& x);
nlohmann::json to_json(const IntVector& v);

nlohmann::json lattice_to_json(const Lattice& l);
Lattice lattice_from_json(const nlohmann::json& j);

nlohmann::json sublattice_to_json(const Sublattice& s);
Sublattice sublattice_from_json(const nlohmann::json& j);

WeierstrassModel weierstrass_from_json(const nlohmann::json& j);
FibrationModel fibration_from_json(const nlohmann::json& j);
nlohmann::json fibration_to_json(const FibrationModel& f);

nlohmann::json glue_to_json(const GlueSolution& g);

}  // namespace k3lat
