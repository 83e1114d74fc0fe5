#include "tda/rips.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "tda/detail/format.hpp"

namespace tda {

namespace {

struct Expander {
  const Eigen::MatrixXd& dm;
  int max_dimension;
  double max_scale;
  std::vector<std::vector<VertexId>> upper_neighbors;
  std::vector<FiltrationEntry>& out;

  // Depth-first clique expansion: extend the current simplex by vertices from
  // the shared upper-neighbor set, tracking the max pairwise distance.
  void extend(std::vector<VertexId>& simplex, double value,
              const std::vector<VertexId>& candidates) {
    out.push_back({Simplex{simplex}, value});
    if (static_cast<int>(simplex.size()) - 1 >= max_dimension) return;

    for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
      VertexId v = candidates[ci];
      double new_value = value;
      for (VertexId u : simplex) new_value = std::max(new_value, dm(u, v));
      if (new_value > max_scale) continue;

      // candidates is sorted; intersect with v's upper neighbors.
      std::vector<VertexId> next;
      std::set_intersection(candidates.begin() + ci + 1, candidates.end(),
                            upper_neighbors[v].begin(), upper_neighbors[v].end(),
                            std::back_inserter(next));
      simplex.push_back(v);
      extend(simplex, new_value, next);
      simplex.pop_back();
    }
  }
};

}  // namespace

Filtration build_rips(const Eigen::MatrixXd& dm, int max_dimension, double max_scale) {
  if (max_scale <= 0.0) throw std::invalid_argument("build_rips: max_scale must be positive");
  if (max_dimension < 0) throw std::invalid_argument("build_rips: max_dimension must be >= 0");
  const int n = static_cast<int>(dm.rows());
  if (max_dimension > n - 1)
    throw std::invalid_argument("build_rips: max_dimension exceeds point count - 1");

  Filtration f;
  f.max_dimension = max_dimension;
  f.max_scale = max_scale;

  std::vector<std::vector<VertexId>> upper(n);
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = i + 1; j < n; ++j)
      if (dm(i, j) <= max_scale) upper[i].push_back(j);

  Expander ex{dm, max_dimension, max_scale, std::move(upper), f.entries};
  std::vector<VertexId> simplex;
  for (VertexId v = 0; v < n; ++v) {
    simplex.assign(1, v);
    ex.extend(simplex, 0.0, ex.upper_neighbors[v]);
  }

  std::sort(f.entries.begin(), f.entries.end(),
            [](const FiltrationEntry& a, const FiltrationEntry& b) {
              if (a.value != b.value) return a.value < b.value;
              if (a.simplex.vertices.size() != b.simplex.vertices.size())
                return a.simplex.vertices.size() < b.simplex.vertices.size();
              return a.simplex.vertices < b.simplex.vertices;
            });
  return f;
}

std::vector<Simplex> complex_at_scale(const Filtration& f, double epsilon) {
  if (epsilon > f.max_scale)
    throw std::invalid_argument("complex_at_scale: epsilon exceeds max_scale");
  std::vector<Simplex> out;
  for (const auto& e : f.entries)
    if (e.value <= epsilon) out.push_back(e.simplex);
  return out;
}

void write_filtration(std::ostream& out, const Filtration& f) {
  out << "# max_dimension " << f.max_dimension << " max_scale "
      << detail::format_double(f.max_scale) << "\n";
  for (const auto& e : f.entries) {
    out << detail::format_double(e.value);
    for (VertexId v : e.simplex.vertices) out << ' ' << v;
    out << '\n';
  }
}

Filtration read_filtration(std::istream& in) {
  Filtration f;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_filtration: empty input");
  {
    std::istringstream ss(line);
    std::string hash, key1, key2;
    if (!(ss >> hash >> key1 >> f.max_dimension >> key2 >> f.max_scale) || hash != "#")
      throw std::runtime_error("read_filtration: bad header line");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    FiltrationEntry e;
    if (!(ss >> e.value)) throw std::runtime_error("read_filtration: bad value");
    VertexId v;
    while (ss >> v) e.simplex.vertices.push_back(v);
    if (e.simplex.vertices.empty()) throw std::runtime_error("read_filtration: empty simplex");
    f.entries.push_back(std::move(e));
  }
  return f;
}

}  // namespace tda
