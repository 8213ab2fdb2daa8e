#include "driftcast/batch/linear.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace driftcast::batch {

LinearRegression::LinearRegression(double penalty) : penalty_(penalty) {
  if (!(penalty_ >= 0.0) || !std::isfinite(penalty_)) {
    throw std::invalid_argument("penalty must be finite and >= 0");
  }
}

void LinearRegression::fit(const TrainingSet& data) {
  const auto n = static_cast<Eigen::Index>(data.size());
  const auto d = static_cast<Eigen::Index>(data.n_features);
  if (n < 1) throw std::invalid_argument("linear regression needs at least one example");

  using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMatrix> raw(data.x.data(), n, d);
  Eigen::Map<const Eigen::VectorXd> y_raw(data.y.data(), n);

  const Eigen::RowVectorXd x_mean = raw.colwise().mean();
  Eigen::RowVectorXd x_scale = ((raw.rowwise() - x_mean).colwise().squaredNorm() / static_cast<double>(n)).cwiseSqrt();
  for (Eigen::Index j = 0; j < d; ++j) {
    if (!(x_scale(j) > 0.0)) x_scale(j) = 1.0;
  }
  const double y_mean = y_raw.mean();
  double y_scale = std::sqrt((y_raw.array() - y_mean).square().sum() / static_cast<double>(n));
  if (!(y_scale > 0.0)) y_scale = 1.0;

  const Eigen::MatrixXd xs = (raw.rowwise() - x_mean).array().rowwise() / x_scale.array();
  const Eigen::VectorXd ys = (y_raw.array() - y_mean) / y_scale;

  Eigen::VectorXd w;
  if (penalty_ == 0.0) {
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(xs);
    rank_ = static_cast<std::size_t>(cod.rank());
    w = cod.solve(ys);
  } else {
    Eigen::MatrixXd gram = xs.transpose() * xs;
    gram.diagonal().array() += penalty_;
    w = gram.ldlt().solve(xs.transpose() * ys);
    rank_ = static_cast<std::size_t>(Eigen::FullPivLU<Eigen::MatrixXd>(xs).rank());
  }

  weights_.assign(static_cast<std::size_t>(d), 0.0);
  bias_ = y_mean;
  for (Eigen::Index j = 0; j < d; ++j) {
    const double wj = y_scale * w(j) / x_scale(j);
    weights_[static_cast<std::size_t>(j)] = wj;
    bias_ -= wj * x_mean(j);
  }
}

double LinearRegression::predict_one(std::span<const double> x) const {
  if (weights_.empty()) return bias_;
  check_dimension(weights_.size(), x);
  double acc = bias_;
  for (std::size_t j = 0; j < x.size(); ++j) acc += weights_[j] * x[j];
  return acc;
}

nlohmann::json LinearRegression::state() const {
  return {{"penalty", penalty_}, {"weights", weights_}, {"bias", bias_}, {"rank", rank_}};
}

LinearRegression LinearRegression::from_state(const nlohmann::json& j) {
  LinearRegression m(j.at("penalty").get<double>());
  m.weights_ = j.at("weights").get<std::vector<double>>();
  m.bias_ = j.at("bias").get<double>();
  m.rank_ = j.at("rank").get<std::size_t>();
  return m;
}

}  // namespace driftcast::batch
