#include "k3lat/fixed_locus.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <stdexcept>

namespace k3lat {

namespace {

std::string normalize_name(std::string_view name) {
  std::string text(name);
  const std::string oplus = "\xE2\x8A\x95";
  for (std::size_t pos; (pos = text.find(oplus)) != std::string::npos;) {
    text.replace(pos, oplus.size(), "+");
  }
  text.erase(std::remove(text.begin(), text.end(), ' '), text.end());
  return text;
}

int mod(int x, int m) { return ((x % m) + m) % m; }

}  // namespace

int FixedLocusProfile::rational_curves() const {
  return static_cast<int>(
      std::count(curves.begin(), curves.end(), CurveKind::Rational));
}

int FixedLocusProfile::euler_characteristic() const {
  return isolated_points() + 2 * rational_curves();
}

std::vector<std::string> fixed_locus_rows() {
  return {"U+K7", "U(7)+K7", "U+E8", "U(7)+E8", "U+E8+A6"};
}

std::optional<std::vector<int>> point_count_formulas(int rank) {
  if ((rank + 2) % 3 != 0 || (rank - 1) % 3 != 0 || (rank - 4) % 6 != 0) {
    return std::nullopt;
  }
  std::vector<int> counts{(rank + 2) / 3, (rank - 1) / 3, (rank - 4) / 6};
  if (std::any_of(counts.begin(), counts.end(), [](int c) { return c < 0; })) {
    return std::nullopt;
  }
  return counts;
}

FixedLocusProfile fixed_locus_table(std::string_view invariant_lattice) {
  const std::string name = normalize_name(invariant_lattice);
  FixedLocusProfile p;
  p.invariant_lattice = name;
  if (name == "U+K7") {
    p.rank = 4;
    p.curves = {CurveKind::Elliptic};
  } else if (name == "U(7)+K7") {
    p.rank = 4;
  } else if (name == "U+E8") {
    p.rank = 10;
    p.curves = {CurveKind::Elliptic, CurveKind::Rational};
  } else if (name == "U(7)+E8") {
    p.rank = 10;
    p.curves = {CurveKind::Rational};
  } else if (name == "U+E8+A6") {
    p.rank = 16;
    p.curves = {CurveKind::Rational, CurveKind::Rational};
  } else {
    throw std::invalid_argument("no fixed locus row for " + name);
  }
  const auto counts = point_count_formulas(p.rank);
  p.n26 = (*counts)[0];
  p.n35 = (*counts)[1];
  p.n44 = (*counts)[2];
  return p;
}

bool lefschetz_check(const FixedLocusProfile& profile,
                     int transcendental_rank) {
  if (transcendental_rank % 6 != 0) return false;
  // Eigenvalues off the invariant part are the six primitive 7th roots of
  // unity, each with multiplicity transcendental_rank / 6, summing to -1.
  const int lefschetz = 2 + profile.rank - transcendental_rank / 6;
  return profile.euler_characteristic() == lefschetz;
}

std::size_t CurveConfiguration::index_of(const std::string& label) const {
  auto it = std::find(curves.begin(), curves.end(), label);
  if (it == curves.end()) {
    throw std::invalid_argument("unknown curve: " + label);
  }
  return static_cast<std::size_t>(it - curves.begin());
}

CurveConfiguration linear_chain(std::size_t length,
                                const std::set<std::size_t>& fixed_positions) {
  CurveConfiguration c;
  for (std::size_t i = 1; i <= length; ++i) {
    c.curves.push_back("C" + std::to_string(i));
  }
  for (std::size_t i = 0; i + 1 < length; ++i) c.edges.emplace_back(i, i + 1);
  for (std::size_t p : fixed_positions) {
    if (p < 1 || p > length) {
      throw std::invalid_argument("fixed position outside the chain");
    }
    c.fixed.insert(p - 1);
  }
  return c;
}

std::pair<int, int> FixedPoint::type() const {
  return {std::min(along, across), std::max(along, across)};
}

int ChainModel::count_isolated(int i, int j) const {
  const std::pair<int, int> wanted{std::min(i, j), std::max(i, j)};
  return static_cast<int>(std::count_if(
      points.begin(), points.end(), [&](const FixedPoint& p) {
        return p.isolated() && p.type() == wanted;
      }));
}

std::string ChainModel::describe(const FixedPoint& p) const {
  const auto& names = configuration.curves;
  if (p.other) return names[p.curve] + " & " + names[*p.other];
  return "on " + names[p.curve];
}

ChainModel walk_chain(const CurveConfiguration& config, int order) {
  ChainModel model;
  model.configuration = config;
  const std::size_t n = config.curves.size();

  struct Incidence {
    std::array<std::size_t, 2> curve{};
    std::size_t arity = 1;
    std::array<std::optional<int>, 2> exponent;
  };
  std::vector<Incidence> points;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> on_curve(n);

  for (auto [a, b] : config.edges) {
    if (a >= n || b >= n || a == b) {
      throw std::invalid_argument("walk_chain: bad edge");
    }
    Incidence inc;
    inc.curve = {a, b};
    inc.arity = 2;
    on_curve[a].emplace_back(points.size(), 0);
    on_curve[b].emplace_back(points.size(), 1);
    points.push_back(inc);
  }
  for (std::size_t c = 0; c < n; ++c) {
    if (config.fixed.count(c)) continue;
    if (on_curve[c].size() > 2) {
      model.conflicts.push_back(config.curves[c] +
                                " is not pointwise fixed but meets more than "
                                "two invariant curves");
      continue;
    }
    while (on_curve[c].size() < 2) {
      Incidence inc;
      inc.curve = {c, c};
      on_curve[c].emplace_back(points.size(), 0);
      points.push_back(inc);
    }
  }
  if (config.fixed.empty()) {
    model.conflicts.push_back("no pointwise fixed curve to start from");
  }

  std::deque<std::pair<std::size_t, std::size_t>> queue;
  auto assign = [&](std::size_t p, std::size_t slot, int value) {
    value = mod(value, order);
    auto& e = points[p].exponent[slot];
    if (!e) {
      e = value;
      queue.emplace_back(p, slot);
    } else if (*e != value) {
      const std::size_t c = points[p].curve[slot];
      model.conflicts.push_back("conflicting exponents " + std::to_string(*e) +
                                " and " + std::to_string(value) + " along " +
                                config.curves[c]);
    }
  };
  for (std::size_t c : config.fixed) {
    for (auto [p, slot] : on_curve[c]) assign(p, slot, 0);
  }
  while (!queue.empty()) {
    const auto [p, slot] = queue.front();
    queue.pop_front();
    const int value = *points[p].exponent[slot];
    if (points[p].arity == 2) assign(p, 1 - slot, 1 - value);
    const std::size_t c = points[p].curve[slot];
    if (!config.fixed.count(c) && on_curve[c].size() == 2) {
      for (auto [q, qslot] : on_curve[c]) {
        if (q != p) assign(q, qslot, -value);
      }
    }
  }

  for (std::size_t p = 0; p < points.size(); ++p) {
    const Incidence& inc = points[p];
    bool known = true;
    for (std::size_t s = 0; s < inc.arity; ++s) {
      if (!inc.exponent[s]) known = false;
    }
    if (!known) {
      model.conflicts.push_back(config.curves[inc.curve[0]] +
                                " is not connected to a fixed curve");
      continue;
    }
    FixedPoint fp;
    fp.curve = inc.curve[0];
    fp.along = *inc.exponent[0];
    if (inc.arity == 2) {
      fp.other = inc.curve[1];
      fp.across = *inc.exponent[1];
    } else {
      fp.across = mod(1 - fp.along, order);
      if (fp.across == 0) {
        model.conflicts.push_back("free point on " +
                                  config.curves[inc.curve[0]] +
                                  " would lie on an unlisted fixed curve");
      }
    }
    for (std::size_t s = 0; s < inc.arity; ++s) {
      const std::size_t c = inc.curve[s];
      if (!config.fixed.count(c) && *inc.exponent[s] == 0) {
        model.conflicts.push_back(config.curves[c] +
                                  " would be pointwise fixed");
      }
    }
    model.points.push_back(fp);
  }
  model.conflicts.erase(
      std::unique(model.conflicts.begin(), model.conflicts.end()),
      model.conflicts.end());
  model.consistent = model.conflicts.empty();
  return model;
}

bool count_check(const ChainModel& walk, const FixedLocusProfile& row) {
  if (!walk.consistent) return false;
  if (row.rational_curves() != static_cast<int>(row.curves.size())) {
    return false;  // the walk only models rational curves
  }
  return walk.count_isolated(2, 6) == row.n26 &&
         walk.count_isolated(3, 5) == row.n35 &&
         walk.count_isolated(4, 4) == row.n44 &&
         static_cast<int>(walk.fixed_curves()) == row.rational_curves();
}

}  // namespace k3lat
