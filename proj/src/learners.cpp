// Copyright 2026 The graphfolk Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "graphfolk/learners.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "graphfolk/error.hpp"
#include "graphfolk/simd.hpp"

namespace graphfolk::predict {
namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

double softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double logistic(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

Eigen::VectorXd BinaryLogistic::decision(const Eigen::MatrixXd& x) const {
  return (x * weights).array() + intercept;
}

double logistic_objective(const Eigen::MatrixXd& x, const Eigen::VectorXd& y01,
                          const Eigen::VectorXd& weights, double intercept,
                          double l2) {
  const Eigen::VectorXd z = (x * weights).array() + intercept;
  double loss = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) loss += softplus(z[i]) - y01[i] * z[i];
  return loss + 0.5 * l2 * weights.squaredNorm();
}

Eigen::VectorXd logistic_gradient(const Eigen::MatrixXd& x,
                                  const Eigen::VectorXd& y01,
                                  const Eigen::VectorXd& weights, double intercept,
                                  double l2) {
  const Eigen::VectorXd z = (x * weights).array() + intercept;
  Eigen::VectorXd residual(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) residual[i] = logistic(z[i]) - y01[i];
  Eigen::VectorXd grad(weights.size() + 1);
  grad.head(weights.size()) = x.transpose() * residual + l2 * weights;
  grad[weights.size()] = residual.sum();
  return grad;
}

BinaryLogistic fit_binary_logistic(const Eigen::MatrixXd& x,
                                   const Eigen::VectorXd& y01, double l2,
                                   const LogisticOptions& options,
                                   std::vector<double>* trace) {
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  BinaryLogistic model{Eigen::VectorXd::Zero(d), 0.0};
  double objective = logistic_objective(x, y01, model.weights, model.intercept, l2);
  if (trace) trace->assign(1, objective);

  Eigen::MatrixXd hessian(d + 1, d + 1);
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const Eigen::VectorXd grad =
        logistic_gradient(x, y01, model.weights, model.intercept, l2);
    if (grad.lpNorm<Eigen::Infinity>() <= options.gradient_tolerance * std::max<double>(1.0, n))
      break;

    const Eigen::VectorXd z = (x * model.weights).array() + model.intercept;
    Eigen::VectorXd s(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double p = logistic(z[i]);
      s[i] = p * (1.0 - p);
    }
    hessian.topLeftCorner(d, d).noalias() = x.transpose() * s.asDiagonal() * x;
    hessian.topLeftCorner(d, d).diagonal().array() += l2;
    hessian.block(0, d, d, 1) = x.transpose() * s;
    hessian.block(d, 0, 1, d) = hessian.block(0, d, d, 1).transpose();
    hessian(d, d) = s.sum();
    hessian.diagonal().array() += 1e-10;
    const Eigen::VectorXd step = hessian.ldlt().solve(grad);

    // Armijo backtracking along the Newton direction.
    const double slope = -grad.dot(step);
    double t = 1.0;
    bool accepted = false;
    for (int k = 0; k < 40; ++k, t *= 0.5) {
      const Eigen::VectorXd w = model.weights - t * step.head(d);
      const double b = model.intercept - t * step[d];
      const double candidate = logistic_objective(x, y01, w, b, l2);
      if (candidate <= objective + 1e-4 * t * slope) {
        model.weights = w;
        model.intercept = b;
        accepted = candidate < objective;
        objective = candidate;
        break;
      }
    }
    if (trace) trace->push_back(objective);
    if (!accepted) break;
  }
  return model;
}

std::vector<int> LogisticOva::predict(const Eigen::MatrixXd& x) const {
  std::vector<int> out(static_cast<std::size_t>(x.rows()), classes_.front());
  std::vector<double> best(out.size(), -std::numeric_limits<double>::infinity());
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    const Eigen::VectorXd score = models_[c].decision(x);
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (score[static_cast<Eigen::Index>(i)] > best[i]) {
        best[i] = score[static_cast<Eigen::Index>(i)];
        out[i] = classes_[c];
      }
    }
  }
  return out;
}

LogisticOva fit_logreg_ova(const Eigen::MatrixXd& x, std::span<const int> y,
                           double l2, const LogisticOptions& options) {
  if (static_cast<Eigen::Index>(y.size()) != x.rows()) {
    throw DataError("label count does not match feature rows");
  }
  LogisticOva ova;
  ova.classes_.assign(y.begin(), y.end());
  std::sort(ova.classes_.begin(), ova.classes_.end());
  ova.classes_.erase(std::unique(ova.classes_.begin(), ova.classes_.end()),
                     ova.classes_.end());
  if (ova.classes_.size() < 2) {
    throw DataError("one-vs-all training needs at least two classes");
  }
  Eigen::VectorXd target(x.rows());
  for (int cls : ova.classes_) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      target[i] = y[static_cast<std::size_t>(i)] == cls ? 1.0 : 0.0;
    }
    ova.models_.push_back(fit_binary_logistic(x, target, l2, options));
  }
  return ova;
}

Eigen::VectorXd LinearModel::predict(const Eigen::MatrixXd& x) const {
  return (x * weights).array() + intercept;
}

LinearModel fit_ridge(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double l2) {
  if (x.rows() == 0) throw DataError("ridge needs at least one training row");
  if (y.size() != x.rows()) throw DataError("target count does not match feature rows");
  const Eigen::RowVectorXd x_mean = x.colwise().mean();
  const double y_mean = y.mean();
  const Eigen::MatrixXd xc = x.rowwise() - x_mean;
  Eigen::MatrixXd gram = xc.transpose() * xc;
  gram.diagonal().array() += l2;
  LinearModel model;
  model.weights = gram.ldlt().solve(xc.transpose() * (y.array() - y_mean).matrix());
  model.intercept = y_mean - x_mean.dot(model.weights);
  return model;
}

Eigen::MatrixXd rbf_kernel(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                           double gamma) {
  const RowMatrix ra = a;
  const RowMatrix rb = b;
  const auto dim = static_cast<std::size_t>(a.cols());
  const auto& k = simd::active();
  Eigen::MatrixXd out(a.rows(), b.rows());
  for (Eigen::Index j = 0; j < rb.rows(); ++j) {
    for (Eigen::Index i = 0; i < ra.rows(); ++i) {
      out(i, j) = std::exp(-gamma * k.squared_distance(ra.row(i).data(),
                                                       rb.row(j).data(), dim));
    }
  }
  return out;
}

Eigen::VectorXd KernelRidgeModel::predict(const Eigen::MatrixXd& x) const {
  return (rbf_kernel(x, support, gamma) * alpha).array() + offset;
}

KernelRidgeModel fit_kernel_ridge(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                  double l2, double gamma) {
  if (x.rows() == 0) throw DataError("kernel ridge needs at least one training row");
  if (y.size() != x.rows()) throw DataError("target count does not match feature rows");
  if (!(gamma > 0.0)) throw ConfigError("kernel width gamma must be > 0");
  KernelRidgeModel model;
  model.support = x;
  model.gamma = gamma;
  model.offset = y.mean();
  Eigen::MatrixXd k = rbf_kernel(x, x, gamma);
  k.diagonal().array() += l2;
  model.alpha = k.ldlt().solve((y.array() - model.offset).matrix());
  return model;
}

}  // namespace graphfolk::predict
