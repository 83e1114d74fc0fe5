#pragma once

#include <iosfwd>
#include <limits>
#include <vector>

#include "tda/rips.hpp"

namespace tda {

/// Sentinel for classes alive at the end of the filtration.
inline constexpr double kInfiniteDeath = std::numeric_limits<double>::infinity();

struct PersistencePair {
  int dimension = 0;
  double birth = 0.0;
  double death = kInfiniteDeath;

  bool infinite() const { return death == kInfiniteDeath; }
  double persistence() const { return death - birth; }

  friend bool operator==(const PersistencePair&, const PersistencePair&) = default;
};

/// Multiset of birth-death pairs per homology dimension. max_scale gives the
/// truncation context for infinite deaths.
struct PersistenceDiagram {
  std::vector<PersistencePair> pairs;
  int max_homology_dimension = 0;  // dimensions 0..max_homology_dimension covered
  double max_scale = 0.0;

  std::vector<PersistencePair> pairs_in_dimension(int h) const;
  bool covers_dimension(int h) const { return h >= 0 && h <= max_homology_dimension; }
};

struct BarcodeInterval {
  int dimension = 0;
  double start = 0.0;
  double end = kInfiniteDeath;
};

/// Intervals with positive length; zero-length pairs are dropped.
struct Barcode {
  std::vector<BarcodeInterval> intervals;
  double max_scale = 0.0;
};

/// Standard persistence computation over Z/2: boundary-matrix reduction by
/// left-to-right column additions, pairs read off pivots. Covers homology
/// dimensions 0 .. f.max_dimension - 1.
PersistenceDiagram compute_persistence(const Filtration& f);

/// H0 pairs via union-find over the edge list; agrees with the reduction path.
std::vector<PersistencePair> compute_h0_union_find(const Filtration& f);

/// Number of classes with birth <= epsilon < death. Throws if h is not covered.
int betti_at(const PersistenceDiagram& d, int h, double epsilon);

Barcode diagram_to_barcode(const PersistenceDiagram& d);

/// CSV with header `dim,birth,death`, `inf` literal for infinite deaths,
/// shortest round-trip float printing.
void write_diagram_csv(std::ostream& out, const PersistenceDiagram& d);
PersistenceDiagram read_diagram_csv(std::istream& in);
void write_barcode_csv(std::ostream& out, const Barcode& b);

}  // namespace tda
