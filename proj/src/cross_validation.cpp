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

#include "graphfolk/cross_validation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "graphfolk/error.hpp"
#include "graphfolk/learners.hpp"
#include "graphfolk/rng.hpp"

namespace graphfolk::predict {
namespace {

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& x, const IndexSet& rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), x.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = x.row(static_cast<Eigen::Index>(rows[i]));
  }
  return out;
}

template <class T>
std::vector<T> take(const std::vector<T>& v, const IndexSet& rows) {
  std::vector<T> out;
  out.reserve(rows.size());
  for (std::size_t r : rows) out.push_back(v[r]);
  return out;
}

IndexSet set_difference(const IndexSet& all, const IndexSet& remove) {
  IndexSet out;
  std::set_difference(all.begin(), all.end(), remove.begin(), remove.end(),
                      std::back_inserter(out));
  return out;
}

// z-score with statistics of `train`; zero-variance columns are only centred.
void standardize(Eigen::MatrixXd& train, Eigen::MatrixXd& test) {
  const Eigen::RowVectorXd mean = train.colwise().mean();
  Eigen::RowVectorXd scale =
      ((train.rowwise() - mean).array().square().colwise().sum() /
       static_cast<double>(std::max<Eigen::Index>(1, train.rows())))
          .sqrt();
  for (Eigen::Index c = 0; c < scale.size(); ++c) {
    if (!(scale[c] > 1e-12)) scale[c] = 1.0;
  }
  train = (train.rowwise() - mean).array().rowwise() / scale.array();
  test = (test.rowwise() - mean).array().rowwise() / scale.array();
}

struct Outcome {
  std::vector<int> classes;
  std::vector<double> values;
};

Outcome fit_and_predict(Learner learner, const LabeledDataset& data,
                        const IndexSet& train_rows, const IndexSet& test_rows,
                        const GridPoint& point) {
  Eigen::MatrixXd train = take_rows(data.features, train_rows);
  Eigen::MatrixXd test = take_rows(data.features, test_rows);
  standardize(train, test);
  Outcome out;
  switch (learner) {
    case Learner::kLogistic: {
      const std::vector<int> y = take(data.occ_class, train_rows);
      const bool single = std::all_of(y.begin(), y.end(), [&](int c) { return c == y[0]; });
      if (single) {
        out.classes.assign(test_rows.size(), y[0]);
      } else {
        out.classes = fit_logreg_ova(train, y, point.l2).predict(test);
      }
      break;
    }
    case Learner::kRidge:
    case Learner::kKernelRidge: {
      const std::vector<double> yv = take(data.income, train_rows);
      const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(
          yv.data(), static_cast<Eigen::Index>(yv.size()));
      Eigen::VectorXd pred;
      if (learner == Learner::kRidge) {
        pred = fit_ridge(train, y, point.l2).predict(test);
      } else {
        pred = fit_kernel_ridge(train, y, point.l2, point.gamma).predict(test);
      }
      out.values.assign(pred.data(), pred.data() + pred.size());
      break;
    }
  }
  return out;
}

// Higher is better.
double inner_metric(Task task, const LabeledDataset& data, const IndexSet& rows,
                    const Outcome& out) {
  if (task == Task::kClassification) {
    return accuracy_percent(out.classes, take(data.occ_class, rows));
  }
  return -mean_absolute_error(out.values, take(data.income, rows));
}

void check_candidates(std::span<const LabeledDataset> candidates, Task task) {
  if (candidates.empty()) throw ConfigError("no feature sets to evaluate");
  const LabeledDataset& first = candidates.front();
  for (const LabeledDataset& c : candidates) {
    if (c.ids != first.ids || c.occ_class != first.occ_class || c.income != first.income) {
      throw DataError("candidate feature sets must cover the same labelled rows");
    }
    if (static_cast<std::size_t>(c.features.rows()) != c.size()) {
      throw DataError("feature rows do not match labelled rows");
    }
  }
  const std::size_t labels =
      task == Task::kClassification ? first.occ_class.size() : first.income.size();
  if (labels != first.size()) throw DataError("labels missing for the requested task");
}

}  // namespace

IndexSet FoldPlan::outer_train(std::size_t k) const {
  IndexSet all(num_samples);
  for (std::size_t i = 0; i < num_samples; ++i) all[i] = i;
  return set_difference(all, outer_test.at(k));
}

IndexSet FoldPlan::inner_train(std::size_t k, std::size_t j) const {
  return set_difference(outer_train(k), inner_validation.at(k).at(j));
}

std::vector<IndexSet> make_folds(const IndexSet& indices, std::span<const int> strata,
                                 std::size_t k, std::uint64_t seed) {
  if (k == 0) throw ConfigError("fold count must be >= 1");
  if (indices.size() < k) {
    throw DataError("cannot split " + std::to_string(indices.size()) + " samples into " +
                    std::to_string(k) + " folds");
  }
  Rng rng(seed);
  std::vector<IndexSet> folds(k);
  std::map<int, IndexSet> groups;
  for (std::size_t i : indices) groups[strata.empty() ? 0 : strata[i]].push_back(i);
  std::size_t next = 0;
  for (auto& [stratum, members] : groups) {
    std::shuffle(members.begin(), members.end(), rng);
    for (std::size_t i : members) {
      folds[next].push_back(i);
      next = (next + 1) % k;
    }
  }
  for (IndexSet& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

FoldPlan make_fold_plan(std::size_t n, std::span<const int> strata, std::size_t outer_k,
                        std::size_t inner_k, std::uint64_t seed) {
  FoldPlan plan;
  plan.num_samples = n;
  plan.seed = seed;
  IndexSet all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  plan.outer_test = make_folds(all, strata, outer_k, stream_seed(seed, 0));
  for (std::size_t k = 0; k < outer_k; ++k) {
    plan.inner_validation.push_back(
        make_folds(plan.outer_train(k), strata, inner_k, stream_seed(seed, k + 1)));
  }
  return plan;
}

const char* learner_name(Learner learner) {
  switch (learner) {
    case Learner::kLogistic: return "logistic";
    case Learner::kRidge: return "ridge";
    case Learner::kKernelRidge: return "kernel-ridge";
  }
  return "unknown";
}

const char* task_name(Task task) {
  return task == Task::kClassification ? "classification" : "regression";
}

std::vector<double> default_l2_grid() { return {1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2}; }

std::vector<GridPoint> make_grid(Learner learner, std::span<const std::size_t> feature_dims,
                                 std::span<const double> l2_values) {
  std::vector<GridPoint> grid;
  for (std::size_t f = 0; f < feature_dims.size(); ++f) {
    for (double l2 : l2_values) {
      if (learner == Learner::kKernelRidge) {
        const double dim = static_cast<double>(std::max<std::size_t>(1, feature_dims[f]));
        for (double m : {0.1, 1.0, 10.0}) grid.push_back({f, l2, m / dim});
      } else {
        grid.push_back({f, l2, 0.0});
      }
    }
  }
  return grid;
}

EvalReport nested_cv(std::span<const LabeledDataset> candidates, Task task,
                     Learner learner, std::span<const GridPoint> grid,
                     const FoldPlan& plan, const CvOptions& options) {
  if (grid.empty()) throw ConfigError("hyperparameter grid is empty");
  if ((task == Task::kClassification) != (learner == Learner::kLogistic)) {
    throw ConfigError(std::string("learner ") + learner_name(learner) +
                      " does not fit task " + task_name(task));
  }
  check_candidates(candidates, task);
  for (const GridPoint& p : grid) {
    if (p.feature_set >= candidates.size()) throw ConfigError("grid names a missing feature set");
  }
  const LabeledDataset& base = candidates.front();
  const std::size_t n = base.size();
  if (n < 20) throw DataError("nested cross-validation needs at least 20 samples");
  if (plan.num_samples != n) throw DataError("fold plan does not match the data size");

  EvalReport report;
  report.task = task;
  report.learner = learner;
  const std::size_t outer_k = plan.outer_test.size();
  report.folds.resize(outer_k);
  std::vector<Outcome> fold_outcomes(outer_k);

  auto run_fold = [&](std::size_t k) {
    const IndexSet outer_train = plan.outer_train(k);
    const auto& inner = plan.inner_validation[k];
    double best = -std::numeric_limits<double>::infinity();
    std::size_t best_index = 0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const LabeledDataset& data = candidates[grid[g].feature_set];
      double total = 0.0;
      for (std::size_t j = 0; j < inner.size(); ++j) {
        const IndexSet train = set_difference(outer_train, inner[j]);
        total += inner_metric(task, data, inner[j],
                              fit_and_predict(learner, data, train, inner[j], grid[g]));
      }
      const double mean = total / static_cast<double>(inner.size());
      if (mean > best) {
        best = mean;
        best_index = g;
      }
    }
    const GridPoint chosen = grid[best_index];
    const LabeledDataset& data = candidates[chosen.feature_set];
    const IndexSet& test = plan.outer_test[k];
    fold_outcomes[k] = fit_and_predict(learner, data, outer_train, test, chosen);

    FoldResult& fr = report.folds[k];
    fr.fold = k;
    fr.test_size = test.size();
    fr.chosen = chosen;
    fr.inner_score = task == Task::kClassification ? best : -best;
    if (task == Task::kClassification) {
      fr.accuracy = accuracy_percent(fold_outcomes[k].classes, take(base.occ_class, test));
    } else {
      const auto truth = take(base.income, test);
      const RegressionScore s = evaluate_regression(fold_outcomes[k].values, truth);
      fr.mae = s.mae;
      fr.rho = s.rho;
    }
  };

  const std::size_t workers = std::min<std::size_t>(std::max(1u, options.threads), outer_k);
  if (workers <= 1) {
    for (std::size_t k = 0; k < outer_k; ++k) run_fold(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      for (std::size_t t = 0; t < workers; ++t) {
        pool.emplace_back([&, t] {
          try {
            for (std::size_t k; (k = next.fetch_add(1)) < outer_k;) run_fold(k);
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  // Pool out-of-fold predictions in sample order.
  if (task == Task::kClassification) {
    report.predicted_class.assign(n, 0);
    double acc_sum = 0.0;
    for (std::size_t k = 0; k < outer_k; ++k) {
      const IndexSet& test = plan.outer_test[k];
      for (std::size_t i = 0; i < test.size(); ++i) {
        report.predicted_class[test[i]] = fold_outcomes[k].classes[i];
      }
      acc_sum += report.folds[k].accuracy;
    }
    report.accuracy_mean = acc_sum / static_cast<double>(outer_k);
    report.accuracy_pooled = accuracy_percent(report.predicted_class, base.occ_class);
    report.majority_baseline = majority_baseline_percent(base.occ_class);
    report.confusion = misclassification_matrix(report.predicted_class, base.occ_class);
  } else {
    report.predicted_value.assign(n, 0.0);
    std::vector<double> mean_pred(n, 0.0);
    double mae_sum = 0.0;
    for (std::size_t k = 0; k < outer_k; ++k) {
      const IndexSet& test = plan.outer_test[k];
      const auto train_y = take(base.income, plan.outer_train(k));
      double train_mean = 0.0;
      for (double y : train_y) train_mean += y;
      train_mean /= static_cast<double>(train_y.size());
      for (std::size_t i = 0; i < test.size(); ++i) {
        report.predicted_value[test[i]] = fold_outcomes[k].values[i];
        mean_pred[test[i]] = train_mean;
      }
      mae_sum += report.folds[k].mae;
    }
    const RegressionScore pooled = evaluate_regression(report.predicted_value, base.income);
    report.mae_pooled = pooled.mae;
    report.rho_pooled = pooled.rho;
    report.mae_fold_mean = mae_sum / static_cast<double>(outer_k);
    report.mae_mean_predictor = mean_absolute_error(mean_pred, base.income);
  }
  return report;
}

EvalReport nested_cv(const LabeledDataset& data, Task task, Learner learner,
                     std::span<const GridPoint> grid, const FoldPlan& plan,
                     const CvOptions& options) {
  return nested_cv(std::span<const LabeledDataset>(&data, 1), task, learner, grid, plan,
                   options);
}

namespace {

std::string feature_set_name(const EvalReport& r, std::size_t index) {
  if (index < r.feature_set_names.size()) return r.feature_set_names[index];
  return std::to_string(index);
}

}  // namespace

std::string report_to_jsonl(const EvalReport& report) {
  using nlohmann::json;
  std::string out;
  const bool cls = report.task == Task::kClassification;
  for (const FoldResult& f : report.folds) {
    json rec = {{"record", "fold"},
                {"task", task_name(report.task)},
                {"learner", learner_name(report.learner)},
                {"fold", f.fold},
                {"test_size", f.test_size},
                {"feature_set", feature_set_name(report, f.chosen.feature_set)},
                {"l2", f.chosen.l2}};
    if (report.learner == Learner::kKernelRidge) rec["gamma"] = f.chosen.gamma;
    if (cls) {
      rec["inner_accuracy"] = f.inner_score;
      rec["accuracy"] = f.accuracy;
    } else {
      rec["inner_mae"] = f.inner_score;
      rec["mae"] = f.mae;
      rec["rho"] = f.rho ? json(*f.rho) : json(nullptr);
    }
    out += rec.dump() + '\n';
  }
  json agg = {{"record", "aggregate"},
              {"task", task_name(report.task)},
              {"learner", learner_name(report.learner)},
              {"folds", report.folds.size()}};
  if (cls) {
    agg["accuracy"] = report.accuracy_mean;
    agg["accuracy_pooled"] = report.accuracy_pooled;
    agg["majority_baseline"] = report.majority_baseline;
    json matrix = json::array();
    for (const auto& row : report.confusion) matrix.push_back(row);
    agg["misclassification_matrix"] = matrix;
  } else {
    agg["mae"] = report.mae_pooled;
    agg["mae_fold_mean"] = report.mae_fold_mean;
    agg["rho"] = report.rho_pooled ? json(*report.rho_pooled) : json(nullptr);
    agg["mae_mean_predictor"] = report.mae_mean_predictor;
  }
  out += agg.dump() + '\n';
  return out;
}

std::string report_to_table(const EvalReport& report) {
  std::ostringstream os;
  const bool cls = report.task == Task::kClassification;
  os << "task: " << task_name(report.task) << "  learner: " << learner_name(report.learner)
     << "\n\n";
  os << std::fixed;
  if (cls) {
    os << "fold   n  feature_set        l2  inner_acc%  accuracy%\n";
  } else {
    os << "fold   n  feature_set        l2      gamma   inner_MAE        MAE     rho\n";
  }
  for (const FoldResult& f : report.folds) {
    os << std::setw(4) << f.fold << std::setw(4) << f.test_size << "  " << std::setw(11)
       << feature_set_name(report, f.chosen.feature_set) << std::setw(10)
       << std::setprecision(3) << f.chosen.l2;
    if (cls) {
      os << std::setw(12) << std::setprecision(2) << f.inner_score << std::setw(11)
         << f.accuracy << '\n';
    } else {
      os << std::setw(11) << std::setprecision(4) << f.chosen.gamma << std::setw(12)
         << std::setprecision(1) << f.inner_score << std::setw(11) << f.mae;
      if (f.rho) {
        os << std::setw(8) << std::setprecision(3) << *f.rho << '\n';
      } else {
        os << "       -\n";
      }
    }
  }
  os << '\n';
  if (cls) {
    os << std::setprecision(2) << "accuracy (mean over folds): " << report.accuracy_mean
       << "%\naccuracy (pooled):          " << report.accuracy_pooled
       << "%\nmajority-class baseline:    " << report.majority_baseline << "%\n\n";
    os << "misclassification matrix (row = true class, column = predicted)\n     ";
    for (int c = 1; c <= kNumClasses; ++c) os << std::setw(6) << c;
    os << '\n';
    for (int t = 0; t < kNumClasses; ++t) {
      os << std::setw(5) << t + 1;
      for (int p = 0; p < kNumClasses; ++p) os << std::setw(6) << report.confusion[t][p];
      os << '\n';
    }
  } else {
    os << std::setprecision(1) << "MAE (pooled):               " << report.mae_pooled
       << "\nMAE (mean over folds):      " << report.mae_fold_mean
       << "\nMAE (train-mean predictor): " << report.mae_mean_predictor << '\n';
    os << "Pearson rho (pooled):       ";
    if (report.rho_pooled) {
      os << std::setprecision(4) << *report.rho_pooled << '\n';
    } else {
      os << "undefined\n";
    }
  }
  return os.str();
}

}  // namespace graphfolk::predict
