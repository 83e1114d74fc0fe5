#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "tda/metric.hpp"
#include "tda/rips.hpp"

using namespace tda;

namespace {

Eigen::MatrixXd triangle_dm() {
  Eigen::MatrixXd dm(3, 3);
  dm << 0, 1, 1, 1, 0, 1, 1, 1, 0;
  return dm;
}

std::set<std::vector<VertexId>> simplex_set(const std::vector<Simplex>& simplices) {
  std::set<std::vector<VertexId>> s;
  for (const auto& sp : simplices) s.insert(sp.vertices);
  return s;
}

long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("equilateral triangle filtration") {
  auto f = build_rips(triangle_dm(), 2, 1.5);
  REQUIRE(f.entries.size() == 7);
  int vertices = 0, edges = 0, triangles = 0;
  for (const auto& e : f.entries) {
    if (e.simplex.dimension() == 0) {
      CHECK(e.value == 0.0);
      ++vertices;
    } else {
      CHECK(e.value == 1.0);
      (e.simplex.dimension() == 1 ? edges : triangles)++;
    }
  }
  CHECK(vertices == 3);
  CHECK(edges == 3);
  CHECK(triangles == 1);
}

TEST_CASE("threshold excludes far pair") {
  Eigen::MatrixXd dm(2, 2);
  dm << 0, 5, 5, 0;
  auto f = build_rips(dm, 1, 1.0);
  CHECK(f.entries.size() == 2);
  for (const auto& e : f.entries) CHECK(e.simplex.dimension() == 0);
}

TEST_CASE("build_rips input validation") {
  CHECK_THROWS(build_rips(triangle_dm(), 2, 0.0));
  CHECK_THROWS(build_rips(triangle_dm(), -1, 1.0));
  CHECK_THROWS(build_rips(triangle_dm(), 3, 1.0));
}

TEST_CASE("matches exhaustive subset enumeration") {
  CounterRng rng(3);
  PointCloud cloud(oracle::random_cloud(rng, 15, 2, 0.0, 1.0));
  auto dm = distance_matrix(cloud, Metric::pnorm(2));
  auto f = build_rips(dm, 2, 0.6);
  auto expected = oracle::brute_force_rips(dm, 2, 0.6);

  REQUIRE(f.entries.size() == expected.size());
  std::set<std::vector<VertexId>> got;
  for (const auto& e : f.entries) got.insert(e.simplex.vertices);
  for (const auto& s : expected) {
    CHECK(got.count(s.vertices) == 1);
    auto it = std::find_if(f.entries.begin(), f.entries.end(),
                           [&](const auto& e) { return e.simplex.vertices == s.vertices; });
    CHECK(it->value == doctest::Approx(s.value).epsilon(1e-12));
  }
}

TEST_CASE("filtration order and closure invariants") {
  CounterRng rng(5);
  PointCloud cloud(oracle::random_cloud(rng, 12, 3, 0.0, 1.0));
  auto dm = distance_matrix(cloud, Metric::pnorm(2));
  auto f = build_rips(dm, 2, 1.0);

  for (std::size_t i = 1; i < f.entries.size(); ++i) {
    const auto& a = f.entries[i - 1];
    const auto& b = f.entries[i];
    bool ordered = a.value < b.value ||
                   (a.value == b.value &&
                    (a.simplex.dimension() < b.simplex.dimension() ||
                     (a.simplex.dimension() == b.simplex.dimension() &&
                      a.simplex.vertices < b.simplex.vertices)));
    CHECK(ordered);
  }

  // Every face present, at an equal-or-smaller value; Rips value equals
  // the max pairwise distance.
  std::set<std::vector<VertexId>> present;
  std::vector<double> value_of;
  for (const auto& e : f.entries) present.insert(e.simplex.vertices);
  for (const auto& e : f.entries) {
    if (e.simplex.dimension() == 0) {
      CHECK(e.value == 0.0);
      continue;
    }
    double max_pair = 0.0;
    for (std::size_t i = 0; i < e.simplex.vertices.size(); ++i)
      for (std::size_t j = i + 1; j < e.simplex.vertices.size(); ++j)
        max_pair = std::max(max_pair, dm(e.simplex.vertices[i], e.simplex.vertices[j]));
    CHECK(e.value == max_pair);
    for (std::size_t omit = 0; omit < e.simplex.vertices.size(); ++omit) {
      std::vector<VertexId> facet;
      for (std::size_t k = 0; k < e.simplex.vertices.size(); ++k)
        if (k != omit) facet.push_back(e.simplex.vertices[k]);
      CHECK(present.count(facet) == 1);
    }
  }
}

TEST_CASE("complex_at_scale") {
  auto f = build_rips(triangle_dm(), 2, 1.5);
  CHECK(complex_at_scale(f, 0.0).size() == 3);
  CHECK(complex_at_scale(f, 1.0).size() == 7);
  CHECK_THROWS(complex_at_scale(f, 2.0));

  // Monotone in epsilon and equal to rebuilding with the smaller scale.
  CounterRng rng(9);
  PointCloud cloud(oracle::random_cloud(rng, 10, 2, 0.0, 1.0));
  auto dm = distance_matrix(cloud, Metric::pnorm(2));
  auto full = build_rips(dm, 2, 1.5);
  double prev_count = -1;
  for (double eps : {0.2, 0.5, 0.9, 1.3}) {
    auto at = complex_at_scale(full, eps);
    CHECK(static_cast<double>(at.size()) >= prev_count);
    prev_count = static_cast<double>(at.size());
    auto rebuilt = build_rips(dm, 2, eps == 0.0 ? 1e-12 : eps);
    std::vector<Simplex> rebuilt_simplices;
    for (const auto& e : rebuilt.entries) rebuilt_simplices.push_back(e.simplex);
    CHECK(simplex_set(at) == simplex_set(rebuilt_simplices));
  }
}

TEST_CASE("full-scale simplex count is sum of binomials") {
  CounterRng rng(13);
  int n = 8;
  PointCloud cloud(oracle::random_cloud(rng, n, 2, 0.0, 1.0));
  auto dm = distance_matrix(cloud, Metric::pnorm(2));
  for (int k : {1, 2, 3}) {
    auto f = build_rips(dm, k, dm.maxCoeff() + 0.1);
    long long expected = 0;
    for (int j = 1; j <= k + 1; ++j) expected += binom(n, j);
    CHECK(static_cast<long long>(f.entries.size()) == expected);
  }
}

TEST_CASE("filtration text round-trip") {
  auto f = build_rips(triangle_dm(), 2, 1.5);
  std::stringstream ss;
  write_filtration(ss, f);
  auto g = read_filtration(ss);
  CHECK(g.max_dimension == f.max_dimension);
  CHECK(g.max_scale == f.max_scale);
  REQUIRE(g.entries.size() == f.entries.size());
  for (std::size_t i = 0; i < f.entries.size(); ++i) {
    CHECK(g.entries[i].value == f.entries[i].value);
    CHECK(g.entries[i].simplex == f.entries[i].simplex);
  }
}
