#include "tda/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "tda/detail/format.hpp"

namespace tda {

namespace {

double tent(double b, double d, double t) {
  return std::max(0.0, std::min(t - b, d - t));
}

// Drops breakpoints that lie on the segment between their neighbors and
// trims zero runs down to the support edges.
std::vector<Breakpoint> simplify(std::vector<Breakpoint> pts) {
  if (pts.size() < 3) return pts;
  std::vector<Breakpoint> out;
  out.push_back(pts.front());
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const auto& a = out.back();
    const auto& b = pts[i];
    const auto& c = pts[i + 1];
    double interp = a.value + (c.value - a.value) * (b.t - a.t) / (c.t - a.t);
    if (std::abs(interp - b.value) > 1e-12) out.push_back(b);
  }
  out.push_back(pts.back());
  return out;
}

}  // namespace

double PersistenceLandscape::value_at(int level, double t) const {
  if (level < 0 || level >= static_cast<int>(levels.size())) return 0.0;
  const auto& pts = levels[level];
  if (pts.empty() || t <= pts.front().t || t >= pts.back().t) {
    // At or outside the support edges the value is the stored endpoint (0
    // unless t hits an endpoint exactly).
    if (!pts.empty() && t == pts.front().t) return pts.front().value;
    if (!pts.empty() && t == pts.back().t) return pts.back().value;
    return 0.0;
  }
  auto it = std::lower_bound(pts.begin(), pts.end(), t,
                             [](const Breakpoint& bp, double x) { return bp.t < x; });
  if (it->t == t) return it->value;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  return lo.value + (hi.value - lo.value) * (t - lo.t) / (hi.t - lo.t);
}

PersistenceLandscape landscape_from_diagram(const PersistenceDiagram& d, int h) {
  if (!d.covers_dimension(h))
    throw std::invalid_argument("landscape_from_diagram: dimension not covered");

  std::vector<std::pair<double, double>> pts;
  for (const auto& p : d.pairs) {
    if (p.dimension != h) continue;
    double birth = p.birth;
    double death = p.infinite() ? d.max_scale : std::min(p.death, d.max_scale);
    if (death > birth) pts.emplace_back(birth, death);
  }

  PersistenceLandscape L;
  L.homology_dimension = h;
  L.domain_cap = d.max_scale;
  if (pts.empty()) return L;

  // Critical t values: tent corners plus every up-leg/down-leg crossing.
  // Between consecutive criticals every tent is linear and the k-th-max
  // ordering is constant, so these are exactly the breakpoints needed.
  std::vector<double> ts;
  for (const auto& [b, dd] : pts) {
    ts.push_back(b);
    ts.push_back(dd);
    ts.push_back((b + dd) / 2.0);
  }
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) {
      double cross = (pts[i].first + pts[j].second) / 2.0;
      ts.push_back(cross);
    }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  const std::size_t m = pts.size();
  std::vector<std::vector<Breakpoint>> raw(m);
  std::vector<double> values(m);
  for (double t : ts) {
    for (std::size_t i = 0; i < m; ++i) values[i] = tent(pts[i].first, pts[i].second, t);
    std::sort(values.begin(), values.end(), std::greater<>());
    for (std::size_t k = 0; k < m; ++k) raw[k].push_back({t, values[k]});
  }

  for (std::size_t k = 0; k < m; ++k) {
    auto level = simplify(std::move(raw[k]));
    bool all_zero = std::all_of(level.begin(), level.end(),
                                [](const Breakpoint& bp) { return bp.value == 0.0; });
    if (all_zero) break;
    L.levels.push_back(std::move(level));
  }
  return L;
}

PersistenceLandscape mean_landscape(const std::vector<PersistenceLandscape>& sample) {
  if (sample.empty()) throw std::invalid_argument("mean_landscape: empty sample");
  const int h = sample.front().homology_dimension;
  const double cap = sample.front().domain_cap;
  std::size_t n_levels = 0;
  for (const auto& L : sample) {
    if (L.homology_dimension != h)
      throw std::invalid_argument("mean_landscape: mixed homology dimensions");
    if (L.domain_cap != cap)
      throw std::invalid_argument("mean_landscape: mixed domain caps");
    n_levels = std::max(n_levels, L.levels.size());
  }

  PersistenceLandscape out;
  out.homology_dimension = h;
  out.domain_cap = cap;
  for (std::size_t k = 0; k < n_levels; ++k) {
    std::vector<double> ts;
    for (const auto& L : sample)
      if (k < L.levels.size())
        for (const auto& bp : L.levels[k]) ts.push_back(bp.t);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

    std::vector<Breakpoint> level;
    for (double t : ts) {
      double sum = 0.0;
      for (const auto& L : sample) sum += L.value_at(static_cast<int>(k), t);
      level.push_back({t, sum / static_cast<double>(sample.size())});
    }
    out.levels.push_back(simplify(std::move(level)));
  }
  return out;
}

double landscape_integral(const PersistenceLandscape& L) {
  double total = 0.0;
  for (const auto& level : L.levels)
    for (std::size_t i = 1; i < level.size(); ++i)
      total += (level[i].t - level[i - 1].t) * (level[i].value + level[i - 1].value) / 2.0;
  return total;
}

void write_landscape_json(std::ostream& out, const PersistenceLandscape& L) {
  // Hand-rolled so that float formatting (and hence the output bytes) match
  // the rest of the toolkit exactly.
  out << "{\"dim\":" << L.homology_dimension
      << ",\"cap\":" << detail::format_double(L.domain_cap) << ",\"levels\":[";
  for (std::size_t k = 0; k < L.levels.size(); ++k) {
    if (k) out << ',';
    out << '[';
    for (std::size_t i = 0; i < L.levels[k].size(); ++i) {
      if (i) out << ',';
      out << '[' << detail::format_double(L.levels[k][i].t) << ','
          << detail::format_double(L.levels[k][i].value) << ']';
    }
    out << ']';
  }
  out << "]}\n";
}

PersistenceLandscape read_landscape_json(std::istream& in) {
  nlohmann::json j = nlohmann::json::parse(in);
  PersistenceLandscape L;
  L.homology_dimension = j.at("dim").get<int>();
  L.domain_cap = j.at("cap").get<double>();
  for (const auto& level : j.at("levels")) {
    std::vector<Breakpoint> pts;
    for (const auto& bp : level) pts.push_back({bp.at(0).get<double>(), bp.at(1).get<double>()});
    L.levels.push_back(std::move(pts));
  }
  return L;
}

void write_landscape_grid_csv(std::ostream& out, const PersistenceLandscape& L,
                              int resolution) {
  if (resolution < 2) throw std::invalid_argument("grid resolution must be >= 2");
  out << 't';
  for (std::size_t k = 0; k < L.levels.size(); ++k) out << ",lambda" << (k + 1);
  out << '\n';
  for (int i = 0; i < resolution; ++i) {
    double t = L.domain_cap * i / (resolution - 1);
    out << detail::format_double(t);
    for (std::size_t k = 0; k < L.levels.size(); ++k)
      out << ',' << detail::format_double(L.value_at(static_cast<int>(k), t));
    out << '\n';
  }
}

}  // namespace tda
