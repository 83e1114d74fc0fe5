#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>

namespace tda {

/// A finite sample of points in R^n. Rows are points, columns are coordinates.
/// Immutable after construction; construction rejects non-finite coordinates
/// and empty clouds.
class PointCloud {
public:
  explicit PointCloud(Eigen::MatrixXd points);

  const Eigen::MatrixXd& points() const { return points_; }
  Eigen::Index size() const { return points_.rows(); }
  Eigen::Index dimension() const { return points_.cols(); }
  Eigen::RowVectorXd point(Eigen::Index i) const { return points_.row(i); }

private:
  Eigen::MatrixXd points_;
};

struct CsvOptions {
  char separator = ',';
  bool skip_header = false;
};

/// Reads one point per row, decimal coordinate fields. Throws std::runtime_error
/// with a line-numbered message on malformed input.
PointCloud read_point_cloud_csv(std::istream& in, const CsvOptions& opts = {});
PointCloud read_point_cloud_csv(const std::string& path, const CsvOptions& opts = {});

}  // namespace tda
