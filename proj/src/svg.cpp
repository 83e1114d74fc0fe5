#include "tda/svg.hpp"

#include <algorithm>
#include <ostream>
#include <vector>

#include "tda/detail/format.hpp"

namespace tda {

namespace {

constexpr int kWidth = 480;
constexpr int kHeight = 480;
constexpr int kMargin = 40;

const char* kDimColors[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#8c564b"};

const char* dim_color(int dim) {
  return kDimColors[dim % (sizeof(kDimColors) / sizeof(kDimColors[0]))];
}

void open_svg(std::ostream& out, int w, int h) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" viewBox=\"0 0 " << w << " " << h << "\">\n"
      << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
}

std::string num(double x) { return detail::format_double(x); }

}  // namespace

void write_diagram_svg(std::ostream& out, const PersistenceDiagram& d) {
  const double cap = d.max_scale > 0 ? d.max_scale : 1.0;
  const double span = kWidth - 2.0 * kMargin;
  auto sx = [&](double v) { return kMargin + span * v / cap; };
  auto sy = [&](double v) { return kHeight - kMargin - span * v / cap; };

  open_svg(out, kWidth, kHeight);
  out << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
      << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin
      << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << kMargin
      << "\" y2=\"" << kMargin << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << num(sx(0)) << "\" y1=\"" << num(sy(0)) << "\" x2=\"" << num(sx(cap))
      << "\" y2=\"" << num(sy(cap)) << "\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";
  for (const auto& p : d.pairs) {
    if (p.infinite()) {
      // Infinite deaths as up-triangles at the top edge.
      double x = sx(p.birth);
      out << "<path d=\"M " << num(x - 4) << ' ' << num(kMargin + 4.0) << " L " << num(x + 4)
          << ' ' << num(kMargin + 4.0) << " L " << num(x) << ' ' << num(kMargin - 4.0)
          << " Z\" fill=\"" << dim_color(p.dimension) << "\"/>\n";
    } else {
      out << "<circle cx=\"" << num(sx(p.birth)) << "\" cy=\"" << num(sy(p.death))
          << "\" r=\"3\" fill=\"" << dim_color(p.dimension) << "\" fill-opacity=\"0.8\"/>\n";
    }
  }
  out << "</svg>\n";
}

void write_barcode_svg(std::ostream& out, const Barcode& b) {
  std::vector<BarcodeInterval> bars = b.intervals;
  std::stable_sort(bars.begin(), bars.end(), [](const auto& x, const auto& y) {
    if (x.dimension != y.dimension) return x.dimension < y.dimension;
    if (x.start != y.start) return x.start < y.start;
    return x.end < y.end;
  });

  const double cap = b.max_scale > 0 ? b.max_scale : 1.0;
  const int row_height = 6;
  const int height = 2 * kMargin + row_height * std::max<int>(1, static_cast<int>(bars.size()));
  const double span = kWidth - 2.0 * kMargin;
  auto sx = [&](double v) { return kMargin + span * std::min(v, cap) / cap; };

  open_svg(out, kWidth, height);
  out << "<line x1=\"" << kMargin << "\" y1=\"" << height - kMargin << "\" x2=\""
      << kWidth - kMargin << "\" y2=\"" << height - kMargin << "\" stroke=\"black\"/>\n";
  int row = 0;
  for (const auto& bar : bars) {
    double y = kMargin + row_height * row + row_height / 2.0;
    double x2 = bar.end == kInfiniteDeath ? kWidth - kMargin : sx(bar.end);
    out << "<line x1=\"" << num(sx(bar.start)) << "\" y1=\"" << num(y) << "\" x2=\"" << num(x2)
        << "\" y2=\"" << num(y) << "\" stroke=\"" << dim_color(bar.dimension)
        << "\" stroke-width=\"4\"/>\n";
    ++row;
  }
  out << "</svg>\n";
}

void write_landscape_svg(std::ostream& out, const PersistenceLandscape& L) {
  const double cap = L.domain_cap > 0 ? L.domain_cap : 1.0;
  double peak = 1e-12;
  for (const auto& level : L.levels)
    for (const auto& bp : level) peak = std::max(peak, bp.value);

  const double span = kWidth - 2.0 * kMargin;
  const double vspan = kHeight - 2.0 * kMargin;
  auto sx = [&](double t) { return kMargin + span * t / cap; };
  auto sy = [&](double v) { return kHeight - kMargin - vspan * v / peak; };

  open_svg(out, kWidth, kHeight);
  out << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
      << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin
      << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << kMargin
      << "\" y2=\"" << kMargin << "\" stroke=\"black\"/>\n";
  for (std::size_t k = 0; k < L.levels.size(); ++k) {
    out << "<polyline fill=\"none\" stroke=\"" << dim_color(static_cast<int>(k))
        << "\" points=\"";
    for (std::size_t i = 0; i < L.levels[k].size(); ++i) {
      if (i) out << ' ';
      out << num(sx(L.levels[k][i].t)) << ',' << num(sy(L.levels[k][i].value));
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace tda
