#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "tda/landscape.hpp"
#include "tda/metric.hpp"
#include "tda/persistence.hpp"

namespace tda {

enum class TestMethod { DiagramPermutation, LandscapePermutation, TwoSampleT };

/// Permutation count request: nullopt means exhaustive enumeration.
using PermutationCount = std::optional<int>;
inline constexpr PermutationCount kExhaustive = std::nullopt;

struct TestReport {
  double p_value = 1.0;
  double observed_statistic = 0.0;
  long long permutations_used = 0;  // distinct relabelings for exhaustive mode
  bool exhaustive = false;
  std::uint64_t seed = 0;
  TestMethod method = TestMethod::DiagramPermutation;
  int tests_run = 1;  // no multiplicity correction is applied; callers may
};

struct ConfidenceBand {
  double c_n = 0.0;
  double alpha = 0.05;
  int bootstrap_rounds = 0;
  std::uint64_t seed = 0;

  /// Lifespan threshold below which a diagram point is topological noise.
  double noise_threshold() const;
  bool is_noise(const PersistencePair& pair) const;
};

/// Robinson-Turner style permutation test on the joint loss
/// F_p = sum over groups of the within-group mean pairwise W_p^p.
/// Small losses are extreme; exhaustive when the number of relabelings is
/// small (or requested), Monte Carlo with the +1 correction otherwise.
TestReport diagram_permutation_test(const std::vector<PersistenceDiagram>& group1,
                                    const std::vector<PersistenceDiagram>& group2,
                                    int h, double p, PermutationCount permutations,
                                    std::uint64_t seed);

/// Reduces each landscape to its integral functional and permutes the
/// two-sided difference of group means.
TestReport landscape_functional_test(const std::vector<PersistenceLandscape>& group1,
                                     const std::vector<PersistenceLandscape>& group2,
                                     PermutationCount permutations, std::uint64_t seed);

/// Welch two-sided t-test with Satterthwaite degrees of freedom.
TestReport two_sample_t_test(const std::vector<double>& scalars1,
                             const std::vector<double>& scalars2);

/// Bootstrap confidence band: c_n is the (1 - alpha) empirical quantile of
/// bottleneck distances between the full-cloud diagram and diagrams of
/// n-point resamples with replacement.
ConfidenceBand confidence_band(const PointCloud& cloud, int h, double alpha,
                               int bootstrap_rounds, std::uint64_t seed,
                               const Metric& metric, int max_dimension,
                               double max_scale);

void write_test_report_json(std::ostream& out, const TestReport& r);
void write_confidence_band_json(std::ostream& out, const ConfidenceBand& b);

}  // namespace tda
