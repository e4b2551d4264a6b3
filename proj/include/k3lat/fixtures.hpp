#pragma once

// Built-in models: the order-7 elliptic K3 surfaces "AST" and "Ko", the
// I7 + II* fibration of "AST" with its component labels, and the two
// fifteen-curve chains "A15-chain-1" and "A15-chain-2" inside it.
//
// Component labels: G1..G7 for the I7 fiber (G7 meets the section S),
// T1..T9 for the II* fiber (T1 meets S; T1..T8 form a chain and T9 is
// attached to T6).

#include "k3lat/fibration.hpp"
#include "k3lat/fixed_locus.hpp"

#include <string>
#include <vector>

namespace k3lat::fixtures {

/// "AST" or "Ko"; throws std::invalid_argument otherwise.
WeierstrassModel weierstrass(const std::string& name);
std::vector<std::string> weierstrass_names();

/// The I7 + II* + 7 I1 fibration of "AST", Mordell-Weil rank 0.
FibrationModel ast_fibration();

/// "A15-chain-1" or "A15-chain-2"; throws std::invalid_argument otherwise.
std::vector<std::string> chain(const std::string& name);
std::vector<std::string> chain_names();

/// The invariant curves G1..G7, S, T1..T9 of "AST" with crossings read off
/// the intersection numbers in ns, G7 and T6 pointwise fixed.
CurveConfiguration ast_configuration(const NeronSeveriModel& ns);

}  // namespace k3lat::fixtures
