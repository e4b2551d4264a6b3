#include "k3lat/json_io.hpp"

namespace k3lat {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

RationalPoly poly_from_json(const json& j) {
  if (!j.is_array()) return RationalPoly(rational_from_json(j));
  std::vector<Rational> coeffs;
  for (const auto& c : j) coeffs.push_back(rational_from_json(c));
  return RationalPoly(std::move(coeffs));
}

}  // namespace

Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? Integer(j.get<unsigned long>())
                                  : Integer(j.get<long>());
  }
  if (j.is_string()) {
    try {
      const Rational r = parse_rational(j.get<std::string>());
      if (is_integral(r)) return r.get_num();
    } catch (const std::invalid_argument&) {
    }
  }
  throw InputError("expected an integer, got " + j.dump());
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(integer_from_json(j));
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument&) {
    }
  }
  throw InputError("expected a rational (integer or \"p/q\"), got " + j.dump());
}

json to_json(const Integer& x) { return x.get_str(); }
json to_json(const Rational& x) { return to_string(x); }

json to_json(const IntVector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i).get_str());
  return out;
}

json lattice_to_json(const Lattice& l) {
  json gram = json::array();
  for (Index i = 0; i < l.rank(); ++i) {
    json row = json::array();
    for (Index j = 0; j < l.rank(); ++j) {
      const Integer& x = l.gram()(i, j);
      if (x.fits_slong_p()) {
        row.push_back(x.get_si());
      } else {
        row.push_back(x.get_str());
      }
    }
    gram.push_back(std::move(row));
  }
  return {{"label", l.label()}, {"gram", std::move(gram)}};
}

Lattice lattice_from_json(const json& j) {
  const json& rows = field(j, "gram");
  if (!rows.is_array()) throw InputError("\"gram\" must be an array");
  const auto n = static_cast<Index>(rows.size());
  IntMatrix gram(n, n);
  for (Index i = 0; i < n; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != n) {
      throw InputError("\"gram\" must be a square array of arrays");
    }
    for (Index k = 0; k < n; ++k) {
      gram(i, k) = integer_from_json(row[static_cast<std::size_t>(k)]);
    }
  }
  std::string label;
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw InputError("\"label\" must be a string");
    label = j["label"].get<std::string>();
  }
  try {
    return Lattice(std::move(gram), std::move(label));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

json sublattice_to_json(const Sublattice& s) {
  json coords = json::array();
  for (Index c = 0; c < s.rank(); ++c) {
    json gen = json::array();
    for (Index r = 0; r < s.coords().rows(); ++r) {
      gen.push_back(s.coords()(r, c).get_si());
    }
    coords.push_back(std::move(gen));
  }
  return {{"ambient", lattice_to_json(s.ambient())},
          {"coords", std::move(coords)},
          {"label", s.label()}};
}

Sublattice sublattice_from_json(const json& j) {
  Lattice ambient = lattice_from_json(field(j, "ambient"));
  const json& gens = field(j, "coords");
  if (!gens.is_array()) throw InputError("\"coords\" must be an array");
  IntMatrix coords(ambient.rank(), static_cast<Index>(gens.size()));
  for (std::size_t c = 0; c < gens.size(); ++c) {
    if (!gens[c].is_array() ||
        static_cast<Index>(gens[c].size()) != ambient.rank()) {
      throw InputError("each generator needs one entry per ambient basis vector");
    }
    for (std::size_t r = 0; r < gens[c].size(); ++r) {
      coords(static_cast<Index>(r), static_cast<Index>(c)) =
          integer_from_json(gens[c][r]);
    }
  }
  try {
    return Sublattice(std::move(ambient), std::move(coords),
                      j.value("label", std::string{}));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

WeierstrassModel weierstrass_from_json(const json& j) {
  if (!j.is_object()) throw InputError("Weierstrass model must be an object");
  const RationalPoly a6 = poly_from_json(field(j, "a6"));
  const std::string label = j.value("label", std::string{});
  if (j.contains("a4")) {
    WeierstrassModel w = WeierstrassModel::from_a4(poly_from_json(j["a4"]), a6,
                                                   label);
    if (j.contains("a4_cubed") &&
        !(poly_from_json(j["a4_cubed"]) == w.a4_cubed)) {
      throw InputError("\"a4\" and \"a4_cubed\" disagree");
    }
    return w;
  }
  if (j.contains("a4_cubed")) {
    return WeierstrassModel::from_a4_cubed(poly_from_json(j["a4_cubed"]), a6,
                                           label);
  }
  throw InputError("Weierstrass model needs \"a4\" or \"a4_cubed\"");
}

FibrationModel fibration_from_json(const json& j) {
  const json& fibers = field(j, "fibers");
  if (!fibers.is_array()) throw InputError("\"fibers\" must be an array");
  FibrationModel f;
  int index = 0;
  for (const auto& item : fibers) {
    FiberSpec spec;
    try {
      spec.place = field(item, "place").get<std::string>();
      spec.type = KodairaType::parse(field(item, "type").get<std::string>());
      spec.prefix = item.value("prefix", "P" + std::to_string(++index) + "_");
      spec.identity = item.value("identity", std::string{});
      spec.count = item.value("count", 1);
    } catch (const json::exception& e) {
      throw InputError(e.what());
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
    if (spec.count < 1) throw InputError("fiber count must be positive");
    f.fibers.push_back(std::move(spec));
  }
  const json& mw = field(j, "mw_rank");
  if (!mw.is_number_integer()) throw InputError("\"mw_rank\" must be an integer");
  f.mw_rank = mw.get<int>();
  return f;
}

json fibration_to_json(const FibrationModel& f) {
  json fibers = json::array();
  for (const auto& spec : f.fibers) {
    fibers.push_back({{"place", spec.place},
                      {"type", spec.type.name()},
                      {"identity", spec.identity},
                      {"prefix", spec.prefix},
                      {"count", spec.count}});
  }
  return {{"fibers", std::move(fibers)}, {"mw_rank", f.mw_rank}};
}

json glue_to_json(const GlueSolution& g) {
  json a = json::array();
  for (const auto& x : g.a) a.push_back(x.get_str());
  json out = {{"n", to_json(g.n)},
              {"H", to_json(g.H)},
              {"H_square", to_json(g.H_square)},
              {"h", to_json(g.h)},
              {"a", std::move(a)},
              {"reversed", g.reversed}};
  out["h_plus"] = g.h_plus ? to_json(*g.h_plus) : json(nullptr);
  return out;
}

}  // namespace k3lat
