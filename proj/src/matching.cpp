#include "tda/matching.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "tda/detail/format.hpp"

namespace tda {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ground_distance(const std::pair<double, double>& x, const std::pair<double, double>& y) {
  return std::max(std::abs(x.first - y.first), std::abs(x.second - y.second));
}

double diagonal_gap(const std::pair<double, double>& x) {
  return (x.second - x.first) / 2.0;
}

// Jonker-Volgenant style shortest augmenting path assignment, O(n^3).
// Returns the column matched to each row.
std::vector<int> solve_assignment(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, n), way(n + 1, 0);
  for (int i = 0; i < n; ++i) {
    p[n] = i;
    int j0 = n;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, false);
    do {
      used[j0] = true;
      int i0 = p[j0], j1 = -1;
      double delta = kInf;
      for (int j = 0; j < n; ++j) {
        if (used[j]) continue;
        double cur = cost[i0][j] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != n);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != n);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 0; j < n; ++j)
    if (p[j] != n) row_to_col[p[j]] = j;
  return row_to_col;
}

void check_common_cap(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                      int h, double p) {
  if (p < 1.0) throw std::invalid_argument("wasserstein: p must be >= 1");
  if (!d1.covers_dimension(h) || !d2.covers_dimension(h))
    throw std::invalid_argument("wasserstein: homology dimension " + std::to_string(h) +
                                " not covered by both diagrams");
  if (d1.max_scale != d2.max_scale)
    throw std::invalid_argument("wasserstein: diagrams have different truncation caps");
}

}  // namespace

std::vector<std::pair<double, double>> off_diagonal_points(const PersistenceDiagram& d, int h) {
  if (!d.covers_dimension(h))
    throw std::invalid_argument("off_diagonal_points: dimension not covered");
  std::vector<std::pair<double, double>> pts;
  for (const auto& pr : d.pairs) {
    if (pr.dimension != h) continue;
    double death = pr.infinite() ? d.max_scale : pr.death;
    if (death > pr.birth) pts.emplace_back(pr.birth, death);
  }
  return pts;
}

Matching optimal_matching(const std::vector<std::pair<double, double>>& a,
                          const std::vector<std::pair<double, double>>& b, double p) {
  const int na = static_cast<int>(a.size());
  const int nb = static_cast<int>(b.size());
  const int n = na + nb;
  Matching m;
  if (n == 0) return m;

  // Rows: a's points then b's diagonal slots. Columns: b's points then a's
  // diagonal slots. Diagonal-to-diagonal assignments cost 0.
  std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < nb; ++j) cost[i][j] = std::pow(ground_distance(a[i], b[j]), p);
    for (int j = nb; j < n; ++j)
      cost[i][j] = (j - nb == i) ? std::pow(diagonal_gap(a[i]), p) : kInf;
  }
  for (int i = na; i < n; ++i)
    for (int j = 0; j < nb; ++j)
      cost[i][j] = (i - na == j) ? std::pow(diagonal_gap(b[j]), p) : kInf;

  std::vector<int> row_to_col = solve_assignment(cost);
  for (int i = 0; i < n; ++i) {
    int j = row_to_col[i];
    int from = i < na ? i : kDiagonal;
    int to = j < nb ? j : kDiagonal;
    if (from == kDiagonal && to == kDiagonal) continue;
    m.assignments.emplace_back(from, to);
    m.cost += cost[i][j];
  }
  return m;
}

double wasserstein(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                   int h, double p) {
  check_common_cap(d1, d2, h, p);
  auto a = off_diagonal_points(d1, h);
  auto b = off_diagonal_points(d2, h);
  return std::pow(optimal_matching(a, b, p).cost, 1.0 / p);
}

double bottleneck(const PersistenceDiagram& d1, const PersistenceDiagram& d2, int h) {
  check_common_cap(d1, d2, h, 1.0);
  auto a = off_diagonal_points(d1, h);
  auto b = off_diagonal_points(d2, h);
  const int na = static_cast<int>(a.size());
  const int nb = static_cast<int>(b.size());
  if (na == 0 && nb == 0) return 0.0;

  // Candidate values: every point-to-point and point-to-diagonal cost.
  std::vector<double> candidates{0.0};
  for (int i = 0; i < na; ++i) {
    candidates.push_back(diagonal_gap(a[i]));
    for (int j = 0; j < nb; ++j) candidates.push_back(ground_distance(a[i], b[j]));
  }
  for (int j = 0; j < nb; ++j) candidates.push_back(diagonal_gap(b[j]));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // Feasibility at threshold lambda: perfect matching in the augmented
  // bipartite graph using only edges of cost <= lambda (Kuhn's algorithm).
  const int n = na + nb;
  auto feasible = [&](double lambda) {
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < na; ++i) {
      for (int j = 0; j < nb; ++j)
        if (ground_distance(a[i], b[j]) <= lambda) adj[i].push_back(j);
      if (diagonal_gap(a[i]) <= lambda) adj[i].push_back(nb + i);
    }
    for (int i = na; i < n; ++i) {
      int j = i - na;
      if (diagonal_gap(b[j]) <= lambda) adj[i].push_back(j);
      for (int k = nb; k < n; ++k) adj[i].push_back(k);  // diagonal-diagonal is free
    }
    std::vector<int> match_col(n, -1);
    std::vector<char> visited;
    std::function<bool(int)> try_row = [&](int i) -> bool {
      for (int j : adj[i]) {
        if (visited[j]) continue;
        visited[j] = true;
        if (match_col[j] == -1 || try_row(match_col[j])) {
          match_col[j] = i;
          return true;
        }
      }
      return false;
    };
    for (int i = 0; i < n; ++i) {
      visited.assign(n, false);
      if (!try_row(i)) return false;
    }
    return true;
  };

  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (feasible(candidates[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return candidates[lo];
}

void write_matching_json(std::ostream& out, const Matching& m) {
  out << "{\"cost\":" << detail::format_double(m.cost) << ",\"assignments\":[";
  for (std::size_t i = 0; i < m.assignments.size(); ++i) {
    if (i) out << ',';
    out << '[' << m.assignments[i].first << ',' << m.assignments[i].second << ']';
  }
  out << "]}\n";
}

}  // namespace tda
