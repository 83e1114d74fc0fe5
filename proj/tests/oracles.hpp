// Independent reference implementations used only by tests. These stay
// deliberately naive: exhaustive enumeration and dense GF(2) linear algebra,
// with no code shared with the library paths they check.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "tda/persistence.hpp"
#include "tda/rips.hpp"
#include "tda/rng.hpp"

namespace oracle {

// ---- Rips by exhaustive subset enumeration -------------------------------

struct SimplexValue {
  std::vector<tda::VertexId> vertices;
  double value;
};

inline void enumerate_subsets(const Eigen::MatrixXd& dm, int max_dimension,
                              double max_scale, std::vector<tda::VertexId>& current,
                              tda::VertexId next, std::vector<SimplexValue>& out) {
  if (!current.empty()) {
    double value = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < current.size() && ok; ++i)
      for (std::size_t j = i + 1; j < current.size(); ++j) {
        value = std::max(value, dm(current[i], current[j]));
        if (dm(current[i], current[j]) > max_scale) {
          ok = false;
          break;
        }
      }
    if (!ok) return;
    out.push_back({current, value});
    if (static_cast<int>(current.size()) - 1 == max_dimension) return;
  }
  for (tda::VertexId v = next; v < dm.rows(); ++v) {
    current.push_back(v);
    enumerate_subsets(dm, max_dimension, max_scale, current, v + 1, out);
    current.pop_back();
  }
}

inline std::vector<SimplexValue> brute_force_rips(const Eigen::MatrixXd& dm,
                                                  int max_dimension, double max_scale) {
  std::vector<SimplexValue> out;
  std::vector<tda::VertexId> current;
  enumerate_subsets(dm, max_dimension, max_scale, current, 0, out);
  return out;
}

// ---- Betti numbers by GF(2) boundary-matrix rank -------------------------

// Rank of a binary matrix given as columns of row-bitmask words.
inline int gf2_rank(std::vector<std::vector<std::uint64_t>> cols, int n_rows) {
  int rank = 0;
  const int words = (n_rows + 63) / 64;
  std::vector<std::vector<std::uint64_t>> basis;  // echelon columns, pivot rows
  std::vector<int> pivots;
  for (auto& col : cols) {
    col.resize(words, 0);
    while (true) {
      int pivot = -1;
      for (int w = words - 1; w >= 0 && pivot < 0; --w)
        if (col[w]) pivot = w * 64 + 63 - std::countl_zero(col[w]);
      if (pivot < 0) break;
      bool reduced = false;
      for (std::size_t k = 0; k < basis.size(); ++k)
        if (pivots[k] == pivot) {
          for (int w = 0; w < words; ++w) col[w] ^= basis[k][w];
          reduced = true;
          break;
        }
      if (!reduced) {
        basis.push_back(col);
        pivots.push_back(pivot);
        ++rank;
        break;
      }
    }
  }
  return rank;
}

// betti[h] for the complex made of the given simplices (must be closed
// under faces), for h = 0 .. max_h.
inline std::vector<int> betti_by_rank(const std::vector<tda::Simplex>& simplices, int max_h) {
  std::map<int, std::map<std::vector<tda::VertexId>, int>> index_by_dim;
  for (const auto& s : simplices) {
    auto& m = index_by_dim[s.dimension()];
    int id = static_cast<int>(m.size());
    m.emplace(s.vertices, id);
  }

  auto boundary_rank = [&](int d) -> int {
    if (d <= 0) return 0;
    auto rows_it = index_by_dim.find(d - 1);
    auto cols_it = index_by_dim.find(d);
    if (rows_it == index_by_dim.end() || cols_it == index_by_dim.end()) return 0;
    const int n_rows = static_cast<int>(rows_it->second.size());
    const int words = (n_rows + 63) / 64;
    std::vector<std::vector<std::uint64_t>> cols;
    for (const auto& [verts, id] : cols_it->second) {
      std::vector<std::uint64_t> col(words, 0);
      for (std::size_t omit = 0; omit < verts.size(); ++omit) {
        std::vector<tda::VertexId> facet;
        for (std::size_t k = 0; k < verts.size(); ++k)
          if (k != omit) facet.push_back(verts[k]);
        int row = rows_it->second.at(facet);
        col[row / 64] |= std::uint64_t(1) << (row % 64);
      }
      cols.push_back(std::move(col));
    }
    return gf2_rank(std::move(cols), n_rows);
  };

  std::vector<int> betti;
  for (int h = 0; h <= max_h; ++h) {
    int n_h = index_by_dim.count(h) ? static_cast<int>(index_by_dim[h].size()) : 0;
    betti.push_back(n_h - boundary_rank(h) - boundary_rank(h + 1));
  }
  return betti;
}

// ---- Exhaustive diagram matching -----------------------------------------

using DiagramPoints = std::vector<std::pair<double, double>>;

inline double inf_norm(const std::pair<double, double>& x, const std::pair<double, double>& y) {
  return std::max(std::abs(x.first - y.first), std::abs(x.second - y.second));
}

inline double to_diag(const std::pair<double, double>& x) { return (x.second - x.first) / 2.0; }

// Enumerates every assignment of a's points to distinct b points or the
// diagonal; leftover b points go to the diagonal. `combine` is sum-of-powers
// for Wasserstein or max for bottleneck.
template <typename Accumulate>
void enumerate_matchings(const DiagramPoints& a, const DiagramPoints& b, std::size_t i,
                         std::vector<char>& used, double acc, Accumulate step,
                         double& best) {
  if (i == a.size()) {
    double total = acc;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!used[j]) total = step(total, to_diag(b[j]));
    best = std::min(best, total);
    return;
  }
  enumerate_matchings(a, b, i + 1, used, step(acc, to_diag(a[i])), step, best);
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (used[j]) continue;
    used[j] = true;
    enumerate_matchings(a, b, i + 1, used, step(acc, inf_norm(a[i], b[j])), step, best);
    used[j] = false;
  }
}

inline double exhaustive_wasserstein(const DiagramPoints& a, const DiagramPoints& b, double p) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<char> used(b.size(), false);
  enumerate_matchings(a, b, 0, used, 0.0,
                      [p](double acc, double c) { return acc + std::pow(c, p); }, best);
  return std::pow(best, 1.0 / p);
}

inline double exhaustive_bottleneck(const DiagramPoints& a, const DiagramPoints& b) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<char> used(b.size(), false);
  enumerate_matchings(a, b, 0, used, 0.0,
                      [](double acc, double c) { return std::max(acc, c); }, best);
  return best;
}

// ---- Synthetic data -------------------------------------------------------

inline Eigen::MatrixXd random_cloud(tda::CounterRng& rng, int n, int dim, double lo,
                                    double hi) {
  Eigen::MatrixXd m(n, dim);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = rng.uniform(lo, hi);
  return m;
}

// Near-equispaced circle sample with angular jitter and radial noise.
inline Eigen::MatrixXd circle_cloud(tda::CounterRng& rng, int n, double cx, double cy,
                                    double radius, double noise) {
  Eigen::MatrixXd m(n, 2);
  for (int i = 0; i < n; ++i) {
    double theta = 2.0 * M_PI * (i + rng.uniform(-0.3, 0.3)) / n;
    double r = radius + rng.uniform(-noise, noise);
    m(i, 0) = cx + r * std::cos(theta);
    m(i, 1) = cy + r * std::sin(theta);
  }
  return m;
}

inline DiagramPoints random_diagram_points(tda::CounterRng& rng, int max_points, double cap) {
  int n = static_cast<int>(rng.next_below(max_points + 1));
  DiagramPoints pts;
  for (int i = 0; i < n; ++i) {
    double b = rng.uniform(0.0, cap * 0.8);
    double d = b + rng.uniform(1e-3, cap - b);
    pts.emplace_back(b, d);
  }
  return pts;
}

inline tda::PersistenceDiagram make_diagram(const DiagramPoints& pts, int h, double cap) {
  tda::PersistenceDiagram d;
  d.max_homology_dimension = h;
  d.max_scale = cap;
  for (const auto& [b, death] : pts) d.pairs.push_back({h, b, death});
  return d;
}

}  // namespace oracle
