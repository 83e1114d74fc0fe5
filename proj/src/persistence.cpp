#include "tda/persistence.hpp"

#include <algorithm>
#include <cstddef>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "tda/detail/format.hpp"

namespace tda {

namespace {

struct VertexVectorHash {
  std::size_t operator()(const std::vector<VertexId>& v) const {
    std::size_t h = v.size();
    for (VertexId x : v) h = h * 0x9e3779b97f4a7c15ULL + static_cast<std::size_t>(x) + 1;
    return h;
  }
};

using Column = std::vector<std::size_t>;  // sorted ascending, pivot at back

Column symmetric_difference(const Column& a, const Column& b) {
  Column out;
  out.reserve(a.size() + b.size());
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(out));
  return out;
}

}  // namespace

std::vector<PersistencePair> PersistenceDiagram::pairs_in_dimension(int h) const {
  std::vector<PersistencePair> out;
  for (const auto& p : pairs)
    if (p.dimension == h) out.push_back(p);
  return out;
}

PersistenceDiagram compute_persistence(const Filtration& f) {
  const std::size_t n = f.entries.size();
  const int top_pair_dim = std::max(f.max_dimension - 1, 0);

  std::unordered_map<std::vector<VertexId>, std::size_t, VertexVectorHash> index_of;
  index_of.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) index_of.emplace(f.entries[i].simplex.vertices, i);

  // Reduced columns keyed by their pivot row.
  std::vector<long long> owner_of_pivot(n, -1);
  std::vector<Column> reduced(n);
  std::vector<bool> is_creator(n, false);
  std::vector<bool> killed(n, false);

  PersistenceDiagram d;
  d.max_homology_dimension = top_pair_dim;
  d.max_scale = f.max_scale;

  std::vector<VertexId> facet;
  for (std::size_t j = 0; j < n; ++j) {
    const Simplex& s = f.entries[j].simplex;
    const int dim = s.dimension();
    if (dim == 0) {
      is_creator[j] = true;
      continue;
    }

    Column col;
    col.reserve(s.vertices.size());
    for (std::size_t omit = 0; omit < s.vertices.size(); ++omit) {
      facet.clear();
      for (std::size_t k = 0; k < s.vertices.size(); ++k)
        if (k != omit) facet.push_back(s.vertices[k]);
      auto it = index_of.find(facet);
      if (it == index_of.end())
        throw std::invalid_argument("compute_persistence: filtration not closed under faces");
      col.push_back(it->second);
    }
    std::sort(col.begin(), col.end());

    while (!col.empty() && owner_of_pivot[col.back()] != -1)
      col = symmetric_difference(col, reduced[col.back()]);

    if (col.empty()) {
      is_creator[j] = true;
    } else {
      const std::size_t piv = col.back();
      owner_of_pivot[piv] = static_cast<long long>(j);
      killed[piv] = true;
      reduced[piv] = std::move(col);
      d.pairs.push_back({dim - 1, f.entries[piv].value, f.entries[j].value});
    }
  }

  for (std::size_t i = 0; i < n; ++i)
    if (is_creator[i] && !killed[i] && f.entries[i].simplex.dimension() <= top_pair_dim)
      d.pairs.push_back({f.entries[i].simplex.dimension(), f.entries[i].value, kInfiniteDeath});

  std::sort(d.pairs.begin(), d.pairs.end(), [](const auto& a, const auto& b) {
    if (a.dimension != b.dimension) return a.dimension < b.dimension;
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.death < b.death;
  });
  return d;
}

std::vector<PersistencePair> compute_h0_union_find(const Filtration& f) {
  std::size_t n_vertices = 0;
  for (const auto& e : f.entries)
    if (e.simplex.dimension() == 0) ++n_vertices;

  std::vector<std::size_t> parent(n_vertices);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };

  std::vector<PersistencePair> pairs;
  for (const auto& e : f.entries) {
    if (e.simplex.dimension() != 1) continue;
    std::size_t a = find(static_cast<std::size_t>(e.simplex.vertices[0]));
    std::size_t b = find(static_cast<std::size_t>(e.simplex.vertices[1]));
    if (a == b) continue;
    // Elder rule: the younger root (larger index, equal births) dies.
    parent[std::max(a, b)] = std::min(a, b);
    pairs.push_back({0, 0.0, e.value});
  }
  std::size_t components = 0;
  for (std::size_t v = 0; v < n_vertices; ++v)
    if (find(v) == v) ++components;
  for (std::size_t c = 0; c < components; ++c) pairs.push_back({0, 0.0, kInfiniteDeath});

  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.death < b.death;
  });
  return pairs;
}

int betti_at(const PersistenceDiagram& d, int h, double epsilon) {
  if (!d.covers_dimension(h))
    throw std::invalid_argument("betti_at: homology dimension " + std::to_string(h) +
                                " was not computed");
  int count = 0;
  for (const auto& p : d.pairs)
    if (p.dimension == h && p.birth <= epsilon && epsilon < p.death) ++count;
  return count;
}

Barcode diagram_to_barcode(const PersistenceDiagram& d) {
  Barcode b;
  b.max_scale = d.max_scale;
  for (const auto& p : d.pairs)
    if (p.death > p.birth) b.intervals.push_back({p.dimension, p.birth, p.death});
  return b;
}

void write_diagram_csv(std::ostream& out, const PersistenceDiagram& d) {
  out << "dim,birth,death\n";
  for (const auto& p : d.pairs) {
    out << p.dimension << ',' << detail::format_double(p.birth) << ',';
    if (p.infinite())
      out << "inf";
    else
      out << detail::format_double(p.death);
    out << '\n';
  }
}

PersistenceDiagram read_diagram_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("diagram CSV: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "dim,birth,death")
    throw std::runtime_error("diagram CSV: expected header 'dim,birth,death'");

  PersistenceDiagram d;
  double max_seen = 0.0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    PersistencePair p;
    std::string death_field;
    if (!(ss >> p.dimension >> p.birth >> death_field))
      throw std::runtime_error("diagram CSV line " + std::to_string(line_no) + ": parse error");
    p.death = death_field == "inf" ? kInfiniteDeath : std::stod(death_field);
    if (p.death < p.birth)
      throw std::runtime_error("diagram CSV line " + std::to_string(line_no) +
                               ": death < birth");
    d.max_homology_dimension = std::max(d.max_homology_dimension, p.dimension);
    max_seen = std::max(max_seen, p.birth);
    if (!p.infinite()) max_seen = std::max(max_seen, p.death);
    d.pairs.push_back(p);
  }
  d.max_scale = max_seen;
  return d;
}

void write_barcode_csv(std::ostream& out, const Barcode& b) {
  out << "dim,birth,death\n";
  for (const auto& iv : b.intervals) {
    out << iv.dimension << ',' << detail::format_double(iv.start) << ',';
    if (iv.end == kInfiniteDeath)
      out << "inf";
    else
      out << detail::format_double(iv.end);
    out << '\n';
  }
}

}  // namespace tda
