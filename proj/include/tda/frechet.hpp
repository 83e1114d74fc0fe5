#pragma once

#include <vector>

#include "tda/persistence.hpp"

namespace tda {

struct FrechetResult {
  PersistenceDiagram mean;
  double variance = 0.0;
  int iterations = 0;
  bool converged = false;
  /// Functional value at the candidate entering each iteration; non-increasing.
  std::vector<double> functional_trace;
};

/// Frechet mean under squared W2: alternate optimal matchings from the
/// candidate to every sample diagram with arithmetic-mean point updates.
/// Initialized at the sample diagram with the smallest functional value;
/// converges to a local minimum. Throws on an empty sample or mismatched
/// truncation caps.
FrechetResult frechet_mean(const std::vector<PersistenceDiagram>& sample, int h,
                           int max_iterations = 100);

}  // namespace tda
