#include "tda/metric.hpp"

#include <cmath>

namespace tda {

namespace {
void check_dims(const Eigen::Ref<const Eigen::RowVectorXd>& x,
                const Eigen::Ref<const Eigen::RowVectorXd>& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("distance: dimension mismatch (" +
                                std::to_string(x.size()) + " vs " +
                                std::to_string(y.size()) + ")");
}
}  // namespace

double p_distance(const Eigen::Ref<const Eigen::RowVectorXd>& x,
                  const Eigen::Ref<const Eigen::RowVectorXd>& y, double p) {
  check_dims(x, y);
  if (p < 1.0) throw std::invalid_argument("p_distance: p must be >= 1");
  if (p == 2.0) return (x - y).norm();
  if (p == 1.0) return (x - y).cwiseAbs().sum();
  return std::pow((x - y).cwiseAbs().array().pow(p).sum(), 1.0 / p);
}

double max_distance(const Eigen::Ref<const Eigen::RowVectorXd>& x,
                    const Eigen::Ref<const Eigen::RowVectorXd>& y) {
  check_dims(x, y);
  return (x - y).cwiseAbs().maxCoeff();
}

double Metric::operator()(const Eigen::Ref<const Eigen::RowVectorXd>& x,
                          const Eigen::Ref<const Eigen::RowVectorXd>& y) const {
  return kind == Kind::PNorm ? p_distance(x, y, p) : max_distance(x, y);
}

Eigen::MatrixXd distance_matrix(const PointCloud& cloud, const Metric& metric) {
  const Eigen::Index n = cloud.size();
  Eigen::MatrixXd dm = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double d = metric(cloud.points().row(i), cloud.points().row(j));
      dm(i, j) = d;
      dm(j, i) = d;
    }
  return dm;
}

double diameter(const PointCloud& cloud, const Metric& metric) {
  return distance_matrix(cloud, metric).maxCoeff();
}

}  // namespace tda
