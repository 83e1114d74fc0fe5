#include "tda/frechet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tda/matching.hpp"

namespace tda {

namespace {

using Points = std::vector<std::pair<double, double>>;

double functional_value(const Points& candidate, const std::vector<Points>& sample, double) {
  double total = 0.0;
  for (const auto& s : sample) total += optimal_matching(candidate, s, 2.0).cost;
  return total / static_cast<double>(sample.size());
}

}  // namespace

FrechetResult frechet_mean(const std::vector<PersistenceDiagram>& sample, int h,
                           int max_iterations) {
  if (sample.empty()) throw std::invalid_argument("frechet_mean: empty sample");
  const double cap = sample.front().max_scale;
  for (const auto& d : sample)
    if (d.max_scale != cap)
      throw std::invalid_argument("frechet_mean: diagrams have different truncation caps");

  std::vector<Points> points(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) points[i] = off_diagonal_points(sample[i], h);

  // Initialize at the sample diagram with the smallest functional value.
  std::size_t best = 0;
  double best_value = functional_value(points[0], points, 2.0);
  for (std::size_t i = 1; i < sample.size(); ++i) {
    double v = functional_value(points[i], points, 2.0);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  Points candidate = points[best];

  FrechetResult result;
  std::vector<std::vector<std::pair<int, int>>> prev_assignments;
  for (int iter = 0; iter < max_iterations; ++iter) {
    result.iterations = iter + 1;
    result.functional_trace.push_back(functional_value(candidate, points, 2.0));

    std::vector<std::vector<std::pair<int, int>>> assignments(points.size());
    std::vector<Matching> matchings(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      matchings[i] = optimal_matching(candidate, points[i], 2.0);
      assignments[i] = matchings[i].assignments;
    }
    if (assignments == prev_assignments) {
      result.converged = true;
      break;
    }
    prev_assignments = assignments;

    // Each candidate point moves to the arithmetic mean of its matched
    // targets; diagonal matches contribute the point's own diagonal
    // projection. Points everywhere matched to the diagonal are dropped.
    Points updated;
    for (std::size_t k = 0; k < candidate.size(); ++k) {
      double sx = 0.0, sy = 0.0;
      bool any_real = false;
      for (std::size_t i = 0; i < points.size(); ++i) {
        int target = kDiagonal;
        for (const auto& [from, to] : matchings[i].assignments)
          if (from == static_cast<int>(k)) {
            target = to;
            break;
          }
        if (target == kDiagonal) {
          double proj = (candidate[k].first + candidate[k].second) / 2.0;
          sx += proj;
          sy += proj;
        } else {
          any_real = true;
          sx += points[i][target].first;
          sy += points[i][target].second;
        }
      }
      if (!any_real) continue;
      updated.emplace_back(sx / points.size(), sy / points.size());
    }

    // The mean update is a descent step for the squared Euclidean ground
    // metric but not always for the infinity norm used here; accept it only
    // when the functional actually drops, otherwise stop where we are.
    if (functional_value(updated, points, 2.0) >= result.functional_trace.back()) {
      result.converged = true;
      break;
    }
    candidate = std::move(updated);
  }

  result.variance = functional_value(candidate, points, 2.0);
  result.mean.max_homology_dimension = h;
  result.mean.max_scale = cap;
  for (const auto& [b, d] : candidate) result.mean.pairs.push_back({h, b, d});
  std::sort(result.mean.pairs.begin(), result.mean.pairs.end(),
            [](const auto& a, const auto& b) {
              if (a.birth != b.birth) return a.birth < b.birth;
              return a.death < b.death;
            });
  return result;
}

}  // namespace tda
