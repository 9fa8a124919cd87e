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

// Downstream learners: one-vs-all L2 logistic regression for occupational
// class, ridge and RBF kernel ridge regression for income.

#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace graphfolk::predict {

// Binary logistic regression, objective
//   sum_i [log(1 + exp(z_i)) - y_i z_i] + l2/2 ||w||^2,   z = X w + b,
// with the intercept b unpenalized.
struct BinaryLogistic {
  Eigen::VectorXd weights;
  double intercept = 0.0;

  Eigen::VectorXd decision(const Eigen::MatrixXd& x) const;
};

struct LogisticOptions {
  int max_iterations = 100;
  double gradient_tolerance = 1e-8;
};

double logistic_objective(const Eigen::MatrixXd& x, const Eigen::VectorXd& y01,
                          const Eigen::VectorXd& weights, double intercept,
                          double l2);
// Gradient of logistic_objective(); the last entry is d/d intercept.
Eigen::VectorXd logistic_gradient(const Eigen::MatrixXd& x,
                                  const Eigen::VectorXd& y01,
                                  const Eigen::VectorXd& weights, double intercept,
                                  double l2);

// Damped Newton with Armijo backtracking, so the objective never increases.
// When `trace` is given it receives the objective after every iteration,
// starting with the value at the zero initial point.
BinaryLogistic fit_binary_logistic(const Eigen::MatrixXd& x,
                                   const Eigen::VectorXd& y01, double l2,
                                   const LogisticOptions& options = {},
                                   std::vector<double>* trace = nullptr);

// One binary model per class present in training; predict() takes the
// argmax of the decision values with ties going to the lowest class.
class LogisticOva {
 public:
  const std::vector<int>& classes() const { return classes_; }
  const std::vector<BinaryLogistic>& models() const { return models_; }
  std::vector<int> predict(const Eigen::MatrixXd& x) const;

 private:
  friend LogisticOva fit_logreg_ova(const Eigen::MatrixXd&, std::span<const int>,
                                    double, const LogisticOptions&);
  std::vector<int> classes_;
  std::vector<BinaryLogistic> models_;
};

// Throws DataError when fewer than two classes are present.
LogisticOva fit_logreg_ova(const Eigen::MatrixXd& x, std::span<const int> y,
                           double l2, const LogisticOptions& options = {});

struct LinearModel {
  Eigen::VectorXd weights;
  double intercept = 0.0;

  Eigen::VectorXd predict(const Eigen::MatrixXd& x) const;
};

// Minimizes ||y - X w - b||^2 + l2 ||w||^2 (intercept unpenalized) through
// the centred normal equations (Xc^T Xc + l2 I) w = Xc^T yc.
LinearModel fit_ridge(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double l2);

struct KernelRidgeModel {
  Eigen::MatrixXd support;
  Eigen::VectorXd alpha;
  double gamma = 1.0;
  double offset = 0.0;

  Eigen::VectorXd predict(const Eigen::MatrixXd& x) const;
};

// K_ij = exp(-gamma ||x_i - x_j||^2).
Eigen::MatrixXd rbf_kernel(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                           double gamma);

// Solves (K + l2 I) alpha = y - mean(y); predictions are
// mean(y) + k(x)^T alpha.
KernelRidgeModel fit_kernel_ridge(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                  double l2, double gamma);

}  // namespace graphfolk::predict
