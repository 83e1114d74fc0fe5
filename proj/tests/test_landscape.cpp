#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "tda/landscape.hpp"
#include "tda/metric.hpp"

using namespace tda;
using oracle::make_diagram;

TEST_CASE("single interval gives one tent") {
  auto L = landscape_from_diagram(make_diagram({{0.0, 2.0}}, 0, 3.0), 0);
  REQUIRE(L.levels.size() == 1);
  CHECK(L.value_at(0, 1.0) == doctest::Approx(1.0));
  CHECK(L.value_at(0, 0.0) == 0.0);
  CHECK(L.value_at(0, 2.0) == 0.0);
  CHECK(L.value_at(0, 0.5) == doctest::Approx(0.5));
  CHECK(L.value_at(1, 1.0) == 0.0);
}

TEST_CASE("empty diagram gives the zero landscape") {
  auto L = landscape_from_diagram(make_diagram({}, 0, 3.0), 0);
  CHECK(L.levels.empty());
  CHECK(landscape_integral(L) == 0.0);
}

TEST_CASE("missing dimension is an error") {
  CHECK_THROWS(landscape_from_diagram(make_diagram({{0.0, 1.0}}, 0, 2.0), 3));
}

TEST_CASE("multiplicity doubles the level") {
  auto L = landscape_from_diagram(make_diagram({{0.0, 2.0}, {0.0, 2.0}}, 0, 3.0), 0);
  REQUIRE(L.levels.size() == 2);
  CHECK(L.value_at(1, 1.0) == doctest::Approx(1.0));
  CHECK(landscape_integral(L) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("pointwise ordering, slopes, and Lipschitz on random diagrams") {
  CounterRng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    auto pts = oracle::random_diagram_points(rng, 6, 2.0);
    auto L = landscape_from_diagram(make_diagram(pts, 1, 2.0), 1);
    for (std::size_t k = 0; k + 1 < L.levels.size(); ++k)
      for (const auto& bp : L.levels[k + 1])
        CHECK(L.value_at(static_cast<int>(k), bp.t) >= bp.value - 1e-12);
    for (const auto& level : L.levels)
      for (std::size_t i = 1; i < level.size(); ++i) {
        double slope = (level[i].value - level[i - 1].value) / (level[i].t - level[i - 1].t);
        bool valid = std::abs(slope) < 1e-9 || std::abs(std::abs(slope) - 1.0) < 1e-9;
        CHECK(valid);
        CHECK(level[i].value >= -1e-15);
      }
    // 1-Lipschitz on random point pairs.
    for (int q = 0; q < 10; ++q) {
      double s = rng.uniform(0.0, 2.0), t = rng.uniform(0.0, 2.0);
      for (std::size_t k = 0; k < L.levels.size(); ++k)
        CHECK(std::abs(L.value_at(static_cast<int>(k), s) -
                       L.value_at(static_cast<int>(k), t)) <= std::abs(s - t) + 1e-12);
    }
  }
}

TEST_CASE("nonzero level count equals betti away from breakpoints") {
  CounterRng rng(5);
  PointCloud cloud(oracle::random_cloud(rng, 14, 2, 0.0, 1.0));
  auto d = compute_persistence(build_rips(distance_matrix(cloud, Metric::pnorm(2)), 2, 1.5));
  auto L = landscape_from_diagram(d, 0);
  for (double t : {0.0511, 0.1737, 0.3313, 0.7177}) {
    int nonzero = 0;
    for (std::size_t k = 0; k < L.levels.size(); ++k)
      if (L.value_at(static_cast<int>(k), t) > 1e-12) ++nonzero;
    CHECK(nonzero == betti_at(d, 0, t));
  }
}

TEST_CASE("landscape integral identities") {
  CounterRng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    double b = rng.uniform(0.0, 1.0), d = b + rng.uniform(0.01, 1.0);
    auto L = landscape_from_diagram(make_diagram({{b, d}}, 0, 2.5), 0);
    CHECK(landscape_integral(L) ==
          doctest::Approx(((d - b) / 2.0) * ((d - b) / 2.0)).epsilon(1e-12));
  }

  // Additive under disjoint union, quadratic under dilation.
  oracle::DiagramPoints p1{{0.0, 1.0}};
  oracle::DiagramPoints p2{{3.0, 4.5}};
  oracle::DiagramPoints both{{0.0, 1.0}, {3.0, 4.5}};
  double i1 = landscape_integral(landscape_from_diagram(make_diagram(p1, 0, 5.0), 0));
  double i2 = landscape_integral(landscape_from_diagram(make_diagram(p2, 0, 5.0), 0));
  double i12 = landscape_integral(landscape_from_diagram(make_diagram(both, 0, 5.0), 0));
  CHECK(i12 == doctest::Approx(i1 + i2).epsilon(1e-12));

  double c = 1.7;
  oracle::DiagramPoints scaled{{0.0, c * 1.0}, {c * 3.0, c * 4.5}};
  double iscaled =
      landscape_integral(landscape_from_diagram(make_diagram(scaled, 0, c * 5.0), 0));
  CHECK(iscaled == doctest::Approx(c * c * i12).epsilon(1e-9));
}

TEST_CASE("mean landscape") {
  auto L = landscape_from_diagram(make_diagram({{0.0, 2.0}, {1.0, 2.5}}, 0, 3.0), 0);
  auto mean_same = mean_landscape({L, L, L});
  CHECK(landscape_integral(mean_same) == doctest::Approx(landscape_integral(L)).epsilon(1e-12));
  for (double t : {0.3, 0.9, 1.7, 2.2})
    CHECK(mean_same.value_at(0, t) == doctest::Approx(L.value_at(0, t)).epsilon(1e-12));

  // Disjoint tents average to two half-height peaks.
  auto t1 = landscape_from_diagram(make_diagram({{0.0, 2.0}}, 0, 4.0), 0);
  auto t2 = landscape_from_diagram(make_diagram({{2.0, 4.0}}, 0, 4.0), 0);
  auto mean = mean_landscape({t1, t2});
  CHECK(mean.value_at(0, 1.0) == doctest::Approx(0.5));
  CHECK(mean.value_at(0, 3.0) == doctest::Approx(0.5));

  // Averaging with the zero landscape halves everything.
  PersistenceLandscape zero;
  zero.homology_dimension = 0;
  zero.domain_cap = 4.0;
  auto halved = mean_landscape({t1, zero});
  for (double t : {0.5, 1.0, 1.5})
    CHECK(halved.value_at(0, t) == doctest::Approx(t1.value_at(0, t) / 2.0).epsilon(1e-12));

  // Pointwise ordering survives the mean.
  CounterRng rng(9);
  std::vector<PersistenceLandscape> sample;
  for (int i = 0; i < 4; ++i)
    sample.push_back(landscape_from_diagram(
        make_diagram(oracle::random_diagram_points(rng, 5, 2.0), 0, 2.0), 0));
  auto m = mean_landscape(sample);
  for (std::size_t k = 0; k + 1 < m.levels.size(); ++k)
    for (const auto& bp : m.levels[k + 1])
      CHECK(m.value_at(static_cast<int>(k), bp.t) >= bp.value - 1e-12);

  CHECK_THROWS(mean_landscape({}));
  PersistenceLandscape other_dim = t1;
  other_dim.homology_dimension = 1;
  CHECK_THROWS(mean_landscape({t1, other_dim}));
}

TEST_CASE("landscape JSON round-trip and grid export") {
  auto L = landscape_from_diagram(make_diagram({{0.0, 2.0}, {0.5, 1.8}}, 1, 3.0), 1);
  std::stringstream ss;
  write_landscape_json(ss, L);
  auto M = read_landscape_json(ss);
  CHECK(M.homology_dimension == 1);
  CHECK(M.domain_cap == 3.0);
  REQUIRE(M.levels.size() == L.levels.size());
  for (std::size_t k = 0; k < L.levels.size(); ++k) {
    REQUIRE(M.levels[k].size() == L.levels[k].size());
    for (std::size_t i = 0; i < L.levels[k].size(); ++i) {
      CHECK(M.levels[k][i].t == L.levels[k][i].t);
      CHECK(M.levels[k][i].value == L.levels[k][i].value);
    }
  }

  std::stringstream grid;
  write_landscape_grid_csv(grid, L, 5);
  std::string header;
  std::getline(grid, header);
  CHECK(header == "t,lambda1,lambda2");
  int rows = 0;
  for (std::string line; std::getline(grid, line);) ++rows;
  CHECK(rows == 5);
}
