#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tda/detail/format.hpp"
#include "tda/frechet.hpp"
#include "tda/inference.hpp"
#include "tda/landscape.hpp"
#include "tda/matching.hpp"
#include "tda/metric.hpp"
#include "tda/persistence.hpp"
#include "tda/point_cloud.hpp"
#include "tda/rips.hpp"
#include "tda/svg.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

tda::Metric parse_metric(const std::string& s) {
  if (s == "max") return tda::Metric::max();
  if (s.size() > 1 && s[0] == 'p') return tda::Metric::pnorm(std::stod(s.substr(1)));
  throw CLI::ValidationError("--metric", "expected p<number> (e.g. p2) or max");
}

tda::PermutationCount parse_perms(const std::string& s) {
  if (s == "exhaustive") return tda::kExhaustive;
  return std::stoi(s);
}

// No partial output files: write to a temp sibling, then rename atomically.
void write_file(const fs::path& path, const std::function<void(std::ostream&)>& fill) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    fill(out);
  }
  fs::rename(tmp, path);
}

void echo_config(const fs::path& out_dir,
                 const std::vector<std::pair<std::string, std::string>>& fields) {
  write_file(out_dir / "config.json", [&](std::ostream& out) {
    out << "{";
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out << ',';
      out << '"' << fields[i].first << "\":" << fields[i].second;
    }
    out << "}\n";
  });
}

std::string quoted(const std::string& s) { return '"' + s + '"'; }

std::vector<fs::path> sorted_files(const fs::path& dir, const std::string& ext) {
  if (!fs::is_directory(dir)) throw std::runtime_error("'" + dir.string() + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ext)
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.size() < 2)
    throw std::runtime_error("'" + dir.string() + "' needs at least 2 " + ext + " files");
  return files;
}

tda::PersistenceDiagram load_diagram(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return tda::read_diagram_csv(in);
}

tda::PersistenceLandscape load_landscape(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return tda::read_landscape_json(in);
}

struct PersistArgs {
  std::string input;
  std::string metric = "p2";
  int max_dim = 2;
  double max_scale = 0.0;  // 0 = AUTO (cloud diameter)
  char sep = ',';
  bool header = false;
  std::string out;
};

int run_persist(const PersistArgs& a) {
  tda::Metric metric = parse_metric(a.metric);
  tda::PointCloud cloud =
      tda::read_point_cloud_csv(a.input, {.separator = a.sep, .skip_header = a.header});
  double scale = a.max_scale > 0 ? a.max_scale : tda::diameter(cloud, metric);
  if (scale <= 0) scale = 1.0;  // single point or all-duplicate cloud
  int max_dim = std::min<int>(a.max_dim, static_cast<int>(cloud.size()) - 1);

  auto filtration = tda::build_rips(tda::distance_matrix(cloud, metric), max_dim, scale);
  auto diagram = tda::compute_persistence(filtration);
  auto barcode = tda::diagram_to_barcode(diagram);

  fs::create_directories(a.out);
  write_file(fs::path(a.out) / "diagram.csv",
             [&](std::ostream& out) { tda::write_diagram_csv(out, diagram); });
  write_file(fs::path(a.out) / "barcode.csv",
             [&](std::ostream& out) { tda::write_barcode_csv(out, barcode); });
  echo_config(a.out, {{"command", quoted("persist")},
                      {"input", quoted(a.input)},
                      {"metric", quoted(a.metric)},
                      {"max_dimension", std::to_string(max_dim)},
                      {"max_scale", tda::detail::format_double(scale)}});

  std::map<int, int> counts;
  for (const auto& p : diagram.pairs) ++counts[p.dimension];
  std::cout << "persist:";
  for (const auto& [dim, count] : counts) std::cout << " H" << dim << "=" << count;
  std::cout << " -> " << a.out << "\n";
  return kExitOk;
}

struct LandscapeArgs {
  std::string diagram;
  int dim = 0;
  double cap = 0.0;  // 0 = inferred from the diagram
  int grid_resolution = 0;
  std::string out;
};

int run_landscape(const LandscapeArgs& a) {
  auto diagram = load_diagram(a.diagram);
  if (a.cap > 0) diagram.max_scale = a.cap;
  if (a.dim > diagram.max_homology_dimension) diagram.max_homology_dimension = a.dim;
  auto L = tda::landscape_from_diagram(diagram, a.dim);

  fs::create_directories(a.out);
  write_file(fs::path(a.out) / "landscape.json",
             [&](std::ostream& out) { tda::write_landscape_json(out, L); });
  if (a.grid_resolution > 0)
    write_file(fs::path(a.out) / "landscape_grid.csv", [&](std::ostream& out) {
      tda::write_landscape_grid_csv(out, L, a.grid_resolution);
    });
  echo_config(a.out, {{"command", quoted("landscape")},
                      {"diagram", quoted(a.diagram)},
                      {"dim", std::to_string(a.dim)},
                      {"cap", tda::detail::format_double(L.domain_cap)},
                      {"grid_resolution", std::to_string(a.grid_resolution)}});
  std::cout << "landscape: " << L.levels.size() << " levels, integral="
            << tda::detail::format_double(tda::landscape_integral(L)) << " -> " << a.out
            << "\n";
  return kExitOk;
}

struct DistanceArgs {
  std::string d1, d2;
  int dim = 0;
  double p = 2.0;
  bool use_bottleneck = false;
  double cap = 0.0;
};

int run_distance(const DistanceArgs& a) {
  auto d1 = load_diagram(a.d1);
  auto d2 = load_diagram(a.d2);
  double cap = a.cap > 0 ? a.cap : std::max(d1.max_scale, d2.max_scale);
  d1.max_scale = d2.max_scale = cap;
  int dim = std::max({a.dim, d1.max_homology_dimension, d2.max_homology_dimension});
  d1.max_homology_dimension = d2.max_homology_dimension = dim;
  double value = a.use_bottleneck ? tda::bottleneck(d1, d2, a.dim)
                                  : tda::wasserstein(d1, d2, a.dim, a.p);
  std::cout << tda::detail::format_double(value) << "\n";
  return kExitOk;
}

struct MeanArgs {
  std::vector<std::string> diagrams;
  int dim = 0;
  double cap = 0.0;
  std::string out;
};

int run_mean(const MeanArgs& a) {
  std::vector<tda::PersistenceDiagram> sample;
  double cap = a.cap;
  for (const auto& path : a.diagrams) sample.push_back(load_diagram(path));
  if (cap <= 0)
    for (const auto& d : sample) cap = std::max(cap, d.max_scale);
  for (auto& d : sample) {
    d.max_scale = cap;
    d.max_homology_dimension = std::max(d.max_homology_dimension, a.dim);
  }
  auto result = tda::frechet_mean(sample, a.dim);

  fs::create_directories(a.out);
  write_file(fs::path(a.out) / "mean_diagram.csv",
             [&](std::ostream& out) { tda::write_diagram_csv(out, result.mean); });
  write_file(fs::path(a.out) / "frechet.json", [&](std::ostream& out) {
    out << "{\"variance\":" << tda::detail::format_double(result.variance)
        << ",\"iterations\":" << result.iterations
        << ",\"converged\":" << (result.converged ? "true" : "false") << "}\n";
  });
  echo_config(a.out, {{"command", quoted("mean")},
                      {"dim", std::to_string(a.dim)},
                      {"cap", tda::detail::format_double(cap)},
                      {"inputs", std::to_string(a.diagrams.size())}});
  std::cout << "mean: variance=" << tda::detail::format_double(result.variance)
            << " iterations=" << result.iterations << " -> " << a.out << "\n";
  return kExitOk;
}

struct BandArgs {
  std::string input;
  int dim = 0;
  double alpha = 0.05;
  int boot = 50;
  std::uint64_t seed = 0;
  std::string metric = "p2";
  int max_dim = 2;
  double max_scale = 0.0;
  char sep = ',';
  bool header = false;
  std::string out;
};

int run_band(const BandArgs& a) {
  tda::Metric metric = parse_metric(a.metric);
  tda::PointCloud cloud =
      tda::read_point_cloud_csv(a.input, {.separator = a.sep, .skip_header = a.header});
  double scale = a.max_scale > 0 ? a.max_scale : tda::diameter(cloud, metric);
  if (scale <= 0) scale = 1.0;
  auto band =
      tda::confidence_band(cloud, a.dim, a.alpha, a.boot, a.seed, metric, a.max_dim, scale);

  fs::create_directories(a.out);
  write_file(fs::path(a.out) / "band.json",
             [&](std::ostream& out) { tda::write_confidence_band_json(out, band); });
  echo_config(a.out, {{"command", quoted("band")},
                      {"input", quoted(a.input)},
                      {"dim", std::to_string(a.dim)},
                      {"alpha", tda::detail::format_double(a.alpha)},
                      {"bootstrap_rounds", std::to_string(a.boot)},
                      {"seed", std::to_string(a.seed)},
                      {"metric", quoted(a.metric)},
                      {"max_dimension", std::to_string(a.max_dim)},
                      {"max_scale", tda::detail::format_double(scale)}});
  std::cout << "band: c_n=" << tda::detail::format_double(band.c_n)
            << " noise_threshold=" << tda::detail::format_double(band.noise_threshold())
            << " -> " << a.out << "\n";
  return kExitOk;
}

struct TestArgs {
  std::string dir1, dir2;
  std::string method = "landscape";
  int dim = 0;
  double p = 2.0;
  std::string perms = "exhaustive";
  std::uint64_t seed = 0;
  double cap = 0.0;
  std::string out;
};

int run_test(const TestArgs& a) {
  tda::PermutationCount perms = parse_perms(a.perms);
  tda::TestReport report;

  if (a.method == "diagram") {
    auto load_group = [&](const fs::path& dir) {
      std::vector<tda::PersistenceDiagram> group;
      for (const auto& f : sorted_files(dir, ".csv")) group.push_back(load_diagram(f));
      return group;
    };
    auto g1 = load_group(a.dir1);
    auto g2 = load_group(a.dir2);
    double cap = a.cap;
    if (cap <= 0) {
      for (const auto& d : g1) cap = std::max(cap, d.max_scale);
      for (const auto& d : g2) cap = std::max(cap, d.max_scale);
    }
    for (auto* group : {&g1, &g2})
      for (auto& d : *group) {
        d.max_scale = cap;
        d.max_homology_dimension = std::max(d.max_homology_dimension, a.dim);
      }
    report = tda::diagram_permutation_test(g1, g2, a.dim, a.p, perms, a.seed);
  } else if (a.method == "landscape" || a.method == "ttest") {
    auto load_group = [&](const fs::path& dir) {
      std::vector<tda::PersistenceLandscape> group;
      for (const auto& f : sorted_files(dir, ".json")) group.push_back(load_landscape(f));
      return group;
    };
    auto g1 = load_group(a.dir1);
    auto g2 = load_group(a.dir2);
    if (a.method == "landscape") {
      report = tda::landscape_functional_test(g1, g2, perms, a.seed);
    } else {
      auto integrals = [](const std::vector<tda::PersistenceLandscape>& g) {
        std::vector<double> v;
        for (const auto& L : g) v.push_back(tda::landscape_integral(L));
        return v;
      };
      report = tda::two_sample_t_test(integrals(g1), integrals(g2));
    }
  } else {
    throw CLI::ValidationError("--method", "expected diagram, landscape, or ttest");
  }

  fs::create_directories(a.out);
  write_file(fs::path(a.out) / "report.json",
             [&](std::ostream& out) { tda::write_test_report_json(out, report); });
  echo_config(a.out, {{"command", quoted("test")},
                      {"method", quoted(a.method)},
                      {"dim", std::to_string(a.dim)},
                      {"p", tda::detail::format_double(a.p)},
                      {"perms", quoted(a.perms)},
                      {"seed", std::to_string(a.seed)}});
  std::cout << "test[" << a.method << "]: p=" << tda::detail::format_double(report.p_value)
            << " stat=" << tda::detail::format_double(report.observed_statistic) << " -> "
            << (fs::path(a.out) / "report.json").string() << "\n";
  return kExitOk;
}

struct PlotArgs {
  std::string input;
  std::string kind;
  std::string out;
};

int run_plot(const PlotArgs& a) {
  fs::create_directories(a.out);
  fs::path target = fs::path(a.out) / (fs::path(a.input).stem().string() + ".svg");
  if (a.kind == "diagram") {
    auto d = load_diagram(a.input);
    write_file(target, [&](std::ostream& out) { tda::write_diagram_svg(out, d); });
  } else if (a.kind == "barcode") {
    auto d = load_diagram(a.input);  // same CSV schema
    tda::Barcode b;
    b.max_scale = d.max_scale;
    for (const auto& p : d.pairs)
      if (p.death > p.birth) b.intervals.push_back({p.dimension, p.birth, p.death});
    write_file(target, [&](std::ostream& out) { tda::write_barcode_svg(out, b); });
  } else if (a.kind == "landscape") {
    auto L = load_landscape(a.input);
    write_file(target, [&](std::ostream& out) { tda::write_landscape_svg(out, L); });
  } else {
    throw CLI::ValidationError("--kind", "expected diagram, barcode, or landscape");
  }
  std::cout << "plot -> " << target.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Persistent homology summaries and inference for point clouds"};
  app.require_subcommand(1);

  PersistArgs pa;
  auto* persist = app.add_subcommand("persist", "point cloud CSV -> diagram + barcode");
  persist->add_option("input", pa.input, "point cloud CSV")->required();
  persist->add_option("--metric", pa.metric, "p<number> or max");
  persist->add_option("--max-dim", pa.max_dim, "max simplex dimension");
  persist->add_option("--max-scale", pa.max_scale, "filtration cutoff (default: diameter)");
  persist->add_option("--sep", pa.sep, "CSV separator");
  persist->add_flag("--header", pa.header, "skip a header row");
  persist->add_option("--out", pa.out, "output directory")->required();

  LandscapeArgs la;
  auto* landscape = app.add_subcommand("landscape", "diagram CSV -> landscape JSON");
  landscape->add_option("diagram", la.diagram, "diagram CSV")->required();
  landscape->add_option("--dim", la.dim, "homology dimension");
  landscape->add_option("--cap", la.cap, "truncation cap for infinite deaths");
  landscape->add_option("--grid-resolution", la.grid_resolution, "also export a sampled grid CSV");
  landscape->add_option("--out", la.out, "output directory")->required();

  DistanceArgs da;
  auto* distance = app.add_subcommand("distance", "Wasserstein/bottleneck between two diagrams");
  distance->add_option("diagram1", da.d1)->required();
  distance->add_option("diagram2", da.d2)->required();
  distance->add_option("--dim", da.dim, "homology dimension");
  distance->add_option("--p", da.p, "Wasserstein order");
  distance->add_flag("--bottleneck", da.use_bottleneck, "bottleneck instead of Wasserstein");
  distance->add_option("--cap", da.cap, "common truncation cap");

  MeanArgs ma;
  auto* mean = app.add_subcommand("mean", "Frechet mean of diagram CSVs");
  mean->add_option("diagrams", ma.diagrams, "diagram CSV files")->required()->expected(-1);
  mean->add_option("--dim", ma.dim, "homology dimension");
  mean->add_option("--cap", ma.cap, "common truncation cap");
  mean->add_option("--out", ma.out, "output directory")->required();

  BandArgs ba;
  auto* band = app.add_subcommand("band", "bootstrap confidence band for one cloud");
  band->add_option("input", ba.input, "point cloud CSV")->required();
  band->add_option("--dim", ba.dim, "homology dimension");
  band->add_option("--alpha", ba.alpha, "significance level");
  band->add_option("--boot", ba.boot, "bootstrap rounds");
  band->add_option("--seed", ba.seed, "random seed");
  band->add_option("--metric", ba.metric, "p<number> or max");
  band->add_option("--max-dim", ba.max_dim, "max simplex dimension");
  band->add_option("--max-scale", ba.max_scale, "filtration cutoff (default: diameter)");
  band->add_option("--sep", ba.sep, "CSV separator");
  band->add_flag("--header", ba.header, "skip a header row");
  band->add_option("--out", ba.out, "output directory")->required();

  TestArgs ta;
  auto* test = app.add_subcommand("test", "two-sample test over directories of summaries");
  test->add_option("group1", ta.dir1, "directory of summaries")->required();
  test->add_option("group2", ta.dir2, "directory of summaries")->required();
  test->add_option("--method", ta.method, "diagram | landscape | ttest");
  test->add_option("--dim", ta.dim, "homology dimension (diagram method)");
  test->add_option("--p", ta.p, "Wasserstein order (diagram method)");
  test->add_option("--perms", ta.perms, "N or 'exhaustive'");
  test->add_option("--seed", ta.seed, "random seed");
  test->add_option("--cap", ta.cap, "common truncation cap (diagram method)");
  test->add_option("--out", ta.out, "output directory")->required();

  PlotArgs pla;
  auto* plot = app.add_subcommand("plot", "summary file -> SVG");
  plot->add_option("input", pla.input, "diagram/barcode CSV or landscape JSON")->required();
  plot->add_option("--kind", pla.kind, "diagram | barcode | landscape")->required();
  plot->add_option("--out", pla.out, "output directory")->required();

  try {
    app.parse(argc, argv);
    if (*persist) return run_persist(pa);
    if (*landscape) return run_landscape(la);
    if (*distance) return run_distance(da);
    if (*mean) return run_mean(ma);
    if (*band) return run_band(ba);
    if (*test) return run_test(ta);
    if (*plot) return run_plot(pla);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
}
