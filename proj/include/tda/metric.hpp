#pragma once

#include <Eigen/Dense>
#include <stdexcept>

#include "tda/point_cloud.hpp"

namespace tda {

/// Distance family on R^n: either the p-norm distance (p >= 1) or the
/// maximum (infinity-norm) distance.
struct Metric {
  enum class Kind { PNorm, MaxNorm };

  Kind kind = Kind::PNorm;
  double p = 2.0;

  static Metric pnorm(double p) {
    if (p < 1.0) throw std::invalid_argument("Metric: p must be >= 1");
    return {Kind::PNorm, p};
  }
  static Metric max() { return {Kind::MaxNorm, 0.0}; }

  double operator()(const Eigen::Ref<const Eigen::RowVectorXd>& x,
                    const Eigen::Ref<const Eigen::RowVectorXd>& y) const;
};

/// (sum_i |x_i - y_i|^p)^(1/p). Throws on dimension mismatch or p < 1.
double p_distance(const Eigen::Ref<const Eigen::RowVectorXd>& x,
                  const Eigen::Ref<const Eigen::RowVectorXd>& y, double p);

/// max_i |x_i - y_i|. Throws on dimension mismatch.
double max_distance(const Eigen::Ref<const Eigen::RowVectorXd>& x,
                    const Eigen::Ref<const Eigen::RowVectorXd>& y);

/// Symmetric pairwise distance matrix with zero diagonal.
Eigen::MatrixXd distance_matrix(const PointCloud& cloud, const Metric& metric);

/// Largest pairwise distance in the cloud (0 for a single point).
double diameter(const PointCloud& cloud, const Metric& metric);

}  // namespace tda
