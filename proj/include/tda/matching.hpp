#pragma once

#include <iosfwd>
#include <vector>

#include "tda/persistence.hpp"

namespace tda {

/// Index of the diagonal slot in a matching assignment.
inline constexpr int kDiagonal = -1;

/// An optimal assignment between the off-diagonal points of two diagrams.
/// Unmatched points pair with their diagonal projections (kDiagonal).
struct Matching {
  std::vector<std::pair<int, int>> assignments;
  double cost = 0.0;
};

/// Off-diagonal points of dimension h, infinite deaths truncated to
/// d.max_scale. Throws if h is not covered.
std::vector<std::pair<double, double>> off_diagonal_points(const PersistenceDiagram& d, int h);

/// p-th Wasserstein distance with infinity-norm ground metric:
/// (min over matchings of sum ||x - gamma(x)||_inf^p)^(1/p).
/// Throws if the diagrams' truncation caps differ or h is missing.
double wasserstein(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                   int h, double p);

/// min over matchings of the largest single-assignment infinity-norm cost.
double bottleneck(const PersistenceDiagram& d1, const PersistenceDiagram& d2, int h);

/// The optimal W_p matching itself, for export and for the Frechet iteration.
Matching optimal_matching(const std::vector<std::pair<double, double>>& a,
                          const std::vector<std::pair<double, double>>& b, double p);

void write_matching_json(std::ostream& out, const Matching& m);

}  // namespace tda
