#include "tda/point_cloud.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace tda {

PointCloud::PointCloud(Eigen::MatrixXd points) : points_(std::move(points)) {
  if (points_.rows() < 1) throw std::invalid_argument("PointCloud: need at least one point");
  if (points_.cols() < 1) throw std::invalid_argument("PointCloud: ambient dimension must be positive");
  if (!points_.allFinite()) throw std::invalid_argument("PointCloud: coordinates must be finite");
}

PointCloud read_point_cloud_csv(std::istream& in, const CsvOptions& opts) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (first && opts.skip_header) {
      first = false;
      continue;
    }
    first = false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::vector<double> coords;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, opts.separator)) {
      try {
        std::size_t pos = 0;
        double v = std::stod(field, &pos);
        while (pos < field.size() && std::isspace(static_cast<unsigned char>(field[pos]))) ++pos;
        if (pos != field.size()) throw std::invalid_argument("trailing characters");
        coords.push_back(v);
      } catch (const std::exception&) {
        throw std::runtime_error("line " + std::to_string(line_no) +
                                 ": cannot parse coordinate '" + field + "'");
      }
    }
    if (coords.empty())
      throw std::runtime_error("line " + std::to_string(line_no) + ": no coordinates");
    if (!rows.empty() && coords.size() != rows.front().size())
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected " +
                               std::to_string(rows.front().size()) + " coordinates, got " +
                               std::to_string(coords.size()));
    for (double v : coords)
      if (!std::isfinite(v))
        throw std::runtime_error("line " + std::to_string(line_no) + ": non-finite coordinate");
    rows.push_back(std::move(coords));
  }
  if (rows.empty()) throw std::runtime_error("empty point cloud");

  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  return PointCloud(std::move(m));
}

PointCloud read_point_cloud_csv(const std::string& path, const CsvOptions& opts) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_point_cloud_csv(in, opts);
}

}  // namespace tda
