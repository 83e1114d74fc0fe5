#include "tda/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "tda/detail/format.hpp"
#include "tda/matching.hpp"
#include "tda/rng.hpp"

namespace tda {

namespace {

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

constexpr long long kExhaustiveSplitLimit = 20000;

// Regularized incomplete beta function I_x(a, b) by continued fraction.
double betacf(double a, double b, double x) {
  const double eps = 1e-14;
  const double fpmin = 1e-300;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0, d = 1.0 - qab * x / qap;
  if (std::abs(d) < fpmin) d = fpmin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 300; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < eps) break;
  }
  return h;
}

double reg_inc_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                    a * std::log(x) + b * std::log1p(-x);
  double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

/// Two-sided p-value of a t statistic with df degrees of freedom.
double t_two_sided_p(double t, double df) {
  return reg_inc_beta(df / 2.0, 0.5, df / (df + t * t));
}

// Shared permutation machinery over a per-relabeling statistic. `extreme`
// decides whether a relabeling's statistic is at least as extreme as the
// observed one.
template <typename StatFn, typename ExtremeFn>
TestReport permute(int n1, int n2, PermutationCount permutations, std::uint64_t seed,
                   StatFn stat, ExtremeFn extreme) {
  const int n = n1 + n2;
  std::vector<int> labels(n);
  std::fill(labels.begin(), labels.begin() + n1, 0);
  std::fill(labels.begin() + n1, labels.end(), 1);
  const double observed = stat(labels);

  TestReport report;
  report.observed_statistic = observed;
  report.seed = seed;

  const long long total_splits = binomial(n, n1);
  const bool exhaustive =
      !permutations.has_value() || total_splits <= kExhaustiveSplitLimit;

  if (exhaustive) {
    // Enumerate every size-n1 subset as group 1.
    std::vector<int> choose(n1);
    std::iota(choose.begin(), choose.end(), 0);
    long long at_least_as_extreme = 0;
    while (true) {
      std::vector<int> lab(n, 1);
      for (int i : choose) lab[i] = 0;
      if (extreme(stat(lab), observed)) ++at_least_as_extreme;

      int i = n1 - 1;
      while (i >= 0 && choose[i] == n - n1 + i) --i;
      if (i < 0) break;
      ++choose[i];
      for (int j = i + 1; j < n1; ++j) choose[j] = choose[j - 1] + 1;
    }
    report.p_value = static_cast<double>(at_least_as_extreme) /
                     static_cast<double>(total_splits);
    report.permutations_used = total_splits;
    report.exhaustive = true;
  } else {
    const int rounds = *permutations;
    if (rounds < 1) throw std::invalid_argument("permutation count must be >= 1");
    long long at_least_as_extreme = 0;
    for (int r = 0; r < rounds; ++r) {
      CounterRng rng(seed, static_cast<std::uint64_t>(r) + 1);
      std::vector<int> lab = labels;
      for (int i = n - 1; i > 0; --i)
        std::swap(lab[i], lab[rng.next_below(static_cast<std::uint64_t>(i) + 1)]);
      if (extreme(stat(lab), observed)) ++at_least_as_extreme;
    }
    report.p_value = static_cast<double>(1 + at_least_as_extreme) /
                     static_cast<double>(1 + rounds);
    report.permutations_used = rounds;
    report.exhaustive = false;
  }
  return report;
}

}  // namespace

TestReport diagram_permutation_test(const std::vector<PersistenceDiagram>& group1,
                                    const std::vector<PersistenceDiagram>& group2,
                                    int h, double p, PermutationCount permutations,
                                    std::uint64_t seed) {
  const int n1 = static_cast<int>(group1.size());
  const int n2 = static_cast<int>(group2.size());
  if (n1 < 2 || n2 < 2)
    throw std::invalid_argument("diagram_permutation_test: each group needs >= 2 diagrams");

  std::vector<const PersistenceDiagram*> all;
  for (const auto& d : group1) all.push_back(&d);
  for (const auto& d : group2) all.push_back(&d);
  const int n = n1 + n2;
  for (const auto* d : all)
    if (d->max_scale != all.front()->max_scale)
      throw std::invalid_argument("diagram_permutation_test: mixed truncation caps");

  // Pairwise W_p^p costs computed once; every relabeling reuses them.
  std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double w = wasserstein(*all[i], *all[j], h, p);
      cost[i][j] = cost[j][i] = std::pow(w, p);
    }

  auto joint_loss = [&](const std::vector<int>& labels) {
    double loss = 0.0;
    for (int g = 0; g < 2; ++g) {
      int m = g == 0 ? n1 : n2;
      double sum = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (labels[i] == g && labels[j] == g) sum += cost[i][j];
      loss += sum / (2.0 * m * (m - 1));
    }
    return loss;
  };
  auto report = permute(n1, n2, permutations, seed, joint_loss,
                        [](double s, double obs) { return s <= obs; });
  report.method = TestMethod::DiagramPermutation;
  return report;
}

TestReport landscape_functional_test(const std::vector<PersistenceLandscape>& group1,
                                     const std::vector<PersistenceLandscape>& group2,
                                     PermutationCount permutations, std::uint64_t seed) {
  if (group1.empty() || group2.empty())
    throw std::invalid_argument("landscape_functional_test: empty group");
  const int h = group1.front().homology_dimension;
  const double cap = group1.front().domain_cap;
  std::vector<double> scalars;
  for (const auto* group : {&group1, &group2})
    for (const auto& L : *group) {
      if (L.homology_dimension != h)
        throw std::invalid_argument("landscape_functional_test: mixed homology dimensions");
      if (L.domain_cap != cap)
        throw std::invalid_argument("landscape_functional_test: mixed domain caps");
      scalars.push_back(landscape_integral(L));
    }

  const int n1 = static_cast<int>(group1.size());
  const int n2 = static_cast<int>(group2.size());
  auto mean_gap = [&](const std::vector<int>& labels) {
    double s0 = 0.0, s1 = 0.0;
    for (std::size_t i = 0; i < scalars.size(); ++i)
      (labels[i] == 0 ? s0 : s1) += scalars[i];
    return std::abs(s0 / n1 - s1 / n2);
  };
  auto report = permute(n1, n2, permutations, seed, mean_gap,
                        [](double s, double obs) { return s >= obs; });
  report.method = TestMethod::LandscapePermutation;
  return report;
}

TestReport two_sample_t_test(const std::vector<double>& scalars1,
                             const std::vector<double>& scalars2) {
  const auto n1 = scalars1.size();
  const auto n2 = scalars2.size();
  if (n1 < 2 || n2 < 2)
    throw std::invalid_argument("two_sample_t_test: each group needs >= 2 values");

  auto mean = [](const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  };
  auto var = [&](const std::vector<double>& v, double m) {
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / (v.size() - 1);
  };
  const double m1 = mean(scalars1), m2 = mean(scalars2);
  const double v1 = var(scalars1, m1), v2 = var(scalars2, m2);

  TestReport report;
  report.method = TestMethod::TwoSampleT;
  report.permutations_used = 0;

  const double se2 = v1 / n1 + v2 / n2;
  if (se2 == 0.0) {
    report.observed_statistic = 0.0;
    report.p_value = (m1 == m2) ? 1.0 : std::numeric_limits<double>::min();
    return report;
  }
  const double t = (m1 - m2) / std::sqrt(se2);
  const double df = se2 * se2 /
                    (v1 * v1 / (static_cast<double>(n1) * n1 * (n1 - 1)) +
                     v2 * v2 / (static_cast<double>(n2) * n2 * (n2 - 1)));
  report.observed_statistic = t;
  report.p_value = t_two_sided_p(t, df);
  return report;
}

double ConfidenceBand::noise_threshold() const { return std::sqrt(2.0) * c_n; }

bool ConfidenceBand::is_noise(const PersistencePair& pair) const {
  if (pair.infinite()) return false;
  return pair.persistence() < noise_threshold();
}

ConfidenceBand confidence_band(const PointCloud& cloud, int h, double alpha,
                               int bootstrap_rounds, std::uint64_t seed,
                               const Metric& metric, int max_dimension,
                               double max_scale) {
  if (alpha <= 0.0 || alpha >= 1.0)
    throw std::invalid_argument("confidence_band: alpha must be in (0, 1)");
  if (bootstrap_rounds < 1)
    throw std::invalid_argument("confidence_band: need at least one bootstrap round");

  const auto base = compute_persistence(
      build_rips(distance_matrix(cloud, metric), max_dimension, max_scale));

  const auto n = cloud.size();
  std::vector<double> distances;
  distances.reserve(bootstrap_rounds);
  for (int r = 0; r < bootstrap_rounds; ++r) {
    CounterRng rng(seed, static_cast<std::uint64_t>(r) + 1);
    Eigen::MatrixXd resampled(n, cloud.dimension());
    for (Eigen::Index i = 0; i < n; ++i)
      resampled.row(i) =
          cloud.points().row(static_cast<Eigen::Index>(rng.next_below(n)));
    PointCloud boot(std::move(resampled));
    auto diagram = compute_persistence(
        build_rips(distance_matrix(boot, metric), max_dimension, max_scale));
    distances.push_back(bottleneck(base, diagram, h));
  }
  std::sort(distances.begin(), distances.end());

  // (1 - alpha) empirical quantile as an order statistic, so that c_n is
  // monotone non-increasing in alpha.
  auto k = static_cast<std::size_t>(
      std::ceil((1.0 - alpha) * bootstrap_rounds));
  k = std::clamp<std::size_t>(k, 1, distances.size());

  ConfidenceBand band;
  band.c_n = distances[k - 1];
  band.alpha = alpha;
  band.bootstrap_rounds = bootstrap_rounds;
  band.seed = seed;
  return band;
}

void write_test_report_json(std::ostream& out, const TestReport& r) {
  const char* method = r.method == TestMethod::DiagramPermutation ? "diagram_permutation"
                       : r.method == TestMethod::LandscapePermutation
                           ? "landscape_permutation"
                           : "two_sample_t";
  out << "{\"method\":\"" << method << "\",\"p_value\":" << detail::format_double(r.p_value)
      << ",\"observed_statistic\":" << detail::format_double(r.observed_statistic)
      << ",\"permutations_used\":" << r.permutations_used
      << ",\"exhaustive\":" << (r.exhaustive ? "true" : "false") << ",\"seed\":" << r.seed
      << ",\"tests_run\":" << r.tests_run << "}\n";
}

void write_confidence_band_json(std::ostream& out, const ConfidenceBand& b) {
  out << "{\"c_n\":" << detail::format_double(b.c_n)
      << ",\"alpha\":" << detail::format_double(b.alpha)
      << ",\"noise_threshold\":" << detail::format_double(b.noise_threshold())
      << ",\"bootstrap_rounds\":" << b.bootstrap_rounds << ",\"seed\":" << b.seed << "}\n";
}

}  // namespace tda
