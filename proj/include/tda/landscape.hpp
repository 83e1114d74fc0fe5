#pragma once

#include <iosfwd>
#include <vector>

#include "tda/persistence.hpp"

namespace tda {

/// One breakpoint of a piecewise-linear level function.
struct Breakpoint {
  double t = 0.0;
  double value = 0.0;
};

/// Persistence landscape: the ordered sequence lambda_1 >= lambda_2 >= ...
/// of piecewise-linear functions, each stored as sorted breakpoints with
/// value 0 outside the support. Levels beyond the stored ones are
/// identically zero.
struct PersistenceLandscape {
  int homology_dimension = 0;
  double domain_cap = 0.0;
  std::vector<std::vector<Breakpoint>> levels;

  double value_at(int level, double t) const;
};

/// lambda_k(t) = k-th largest tent value max(0, min(t - b, d - t)) over the
/// dimension-h pairs; infinite deaths truncated at the diagram's max_scale.
/// Exact breakpoint representation, no sampling grid.
PersistenceLandscape landscape_from_diagram(const PersistenceDiagram& d, int h);

/// Level-wise pointwise mean, exact on the union of breakpoints.
PersistenceLandscape mean_landscape(const std::vector<PersistenceLandscape>& sample);

/// sum_k integral of lambda_k, exact trapezoid sums over breakpoints.
double landscape_integral(const PersistenceLandscape& L);

/// JSON {dim, cap, levels: [[[t, v], ...], ...]}.
void write_landscape_json(std::ostream& out, const PersistenceLandscape& L);
PersistenceLandscape read_landscape_json(std::istream& in);

/// Plotting exporter: CSV columns t, lambda1, lambda2, ... sampled on a
/// uniform grid over [0, domain_cap].
void write_landscape_grid_csv(std::ostream& out, const PersistenceLandscape& L,
                              int resolution);

}  // namespace tda
