#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace tda {

using VertexId = std::int32_t;

/// A simplex as a strictly increasing list of vertex indices.
struct Simplex {
  std::vector<VertexId> vertices;

  int dimension() const { return static_cast<int>(vertices.size()) - 1; }

  friend bool operator==(const Simplex&, const Simplex&) = default;
  friend auto operator<=>(const Simplex&, const Simplex&) = default;
};

struct FiltrationEntry {
  Simplex simplex;
  double value = 0.0;
};

/// Vietoris-Rips filtered complex: simplices sorted by
/// (value, dimension, lexicographic vertices), faces before cofaces.
struct Filtration {
  std::vector<FiltrationEntry> entries;
  int max_dimension = 0;
  double max_scale = 0.0;
};

/// Builds the Rips filtration by incremental clique expansion. A simplex
/// enters at the largest pairwise distance among its vertices (0 for
/// vertices); simplices with entry value > max_scale are excluded.
Filtration build_rips(const Eigen::MatrixXd& dm, int max_dimension, double max_scale);

/// The simplices present at scale epsilon (filtration value <= epsilon).
/// Throws if epsilon exceeds the filtration's max_scale.
std::vector<Simplex> complex_at_scale(const Filtration& f, double epsilon);

/// Text serialization, one `value v0 v1 ... vk` line per simplex in
/// filtration order. Round-trips losslessly.
void write_filtration(std::ostream& out, const Filtration& f);
Filtration read_filtration(std::istream& in);

}  // namespace tda
