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

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "graphfolk/cross_validation.hpp"
#include "graphfolk/error.hpp"
#include "graphfolk/learners.hpp"
#include "json.hpp"

using namespace graphfolk;
using namespace graphfolk::predict;

namespace {

// Three noisy Gaussian clusters with unequal sizes and cluster-level income.
LabeledDataset clusters(std::size_t n, std::uint64_t seed, double noise = 0.6) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  LabeledDataset d;
  d.features.resize(static_cast<Eigen::Index>(n), 3);
  for (std::size_t i = 0; i < n; ++i) {
    const int cls = i % 5 == 0 ? 3 : (i % 5 < 3 ? 1 : 2);
    d.ids.push_back("s" + std::to_string(i));
    d.occ_class.push_back(cls);
    d.income.push_back(20000.0 * cls + 2000.0 * g(rng));
    for (int c = 0; c < 3; ++c) {
      d.features(static_cast<Eigen::Index>(i), c) = (c + 1 == cls ? 2.0 : 0.0) + noise * g(rng);
    }
  }
  return d;
}

Eigen::MatrixXd rows_of(const Eigen::MatrixXd& x, const IndexSet& r) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(r.size()), x.cols());
  for (std::size_t i = 0; i < r.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = x.row(static_cast<Eigen::Index>(r[i]));
  return out;
}

}  // namespace

TEST_CASE("fold plans partition the samples") {
  const LabeledDataset d = clusters(103, 1);
  const FoldPlan plan = make_fold_plan(d.size(), d.occ_class, 10, 10, 42);
  REQUIRE(plan.outer_test.size() == 10);
  std::vector<int> seen(d.size(), 0);
  for (const IndexSet& f : plan.outer_test)
    for (std::size_t i : f) ++seen[i];
  CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));

  for (std::size_t k = 0; k < 10; ++k) {
    const IndexSet train = plan.outer_train(k);
    CHECK(train.size() + plan.outer_test[k].size() == d.size());
    std::vector<int> inner_seen(d.size(), 0);
    for (std::size_t j = 0; j < 10; ++j) {
      const IndexSet& val = plan.inner_validation[k][j];
      const IndexSet itrain = plan.inner_train(k, j);
      const std::set<std::size_t> vs(val.begin(), val.end());
      for (std::size_t i : itrain) CHECK_FALSE(vs.contains(i));
      CHECK(itrain.size() + val.size() == train.size());
      for (std::size_t i : val) ++inner_seen[i];
    }
    for (std::size_t i : train) CHECK(inner_seen[i] == 1);
    for (std::size_t i : plan.outer_test[k]) CHECK(inner_seen[i] == 0);
  }
  CHECK(make_fold_plan(d.size(), d.occ_class, 10, 10, 42).outer_test == plan.outer_test);
}

TEST_CASE("stratified folds keep class ratios within one sample") {
  std::vector<int> strata;
  const int counts[9] = {46, 161, 95, 17, 78, 27, 6, 19, 13};
  for (int c = 0; c < 9; ++c) strata.insert(strata.end(), static_cast<std::size_t>(counts[c]), c + 1);
  IndexSet all(strata.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const auto folds = make_folds(all, strata, 10, 3);
  for (int c = 1; c <= 9; ++c) {
    std::size_t lo = SIZE_MAX, hi = 0;
    for (const IndexSet& f : folds) {
      const auto n = static_cast<std::size_t>(
          std::count_if(f.begin(), f.end(), [&](std::size_t i) { return strata[i] == c; }));
      lo = std::min(lo, n);
      hi = std::max(hi, n);
    }
    CHECK(hi - lo <= 1);
  }
  std::size_t lo = SIZE_MAX, hi = 0;
  for (const IndexSet& f : folds) {
    lo = std::min(lo, f.size());
    hi = std::max(hi, f.size());
  }
  CHECK(hi - lo <= 1);
  CHECK_THROWS_AS(make_folds(IndexSet{0, 1}, {}, 3, 0), DataError);
}

TEST_CASE("single-point grid reduces to plain cross-validation") {
  const LabeledDataset d = clusters(60, 2, 1.5);
  const FoldPlan plan = make_fold_plan(d.size(), d.occ_class, 10, 10, 7);
  const GridPoint point{0, 0.1, 0.0};
  const std::vector<GridPoint> grid{point};
  const EvalReport r = nested_cv(d, Task::kClassification, Learner::kLogistic, grid, plan);
  double acc = 0.0;
  for (std::size_t k = 0; k < 10; ++k) {
    CHECK(r.folds[k].chosen.l2 == 0.1);
    const IndexSet train = plan.outer_train(k);
    const IndexSet& test = plan.outer_test[k];
    Eigen::MatrixXd xtr = rows_of(d.features, train), xte = rows_of(d.features, test);
    const Eigen::RowVectorXd mu = xtr.colwise().mean();
    const Eigen::RowVectorXd sd =
        ((xtr.rowwise() - mu).array().square().colwise().mean()).sqrt();
    xtr = (xtr.rowwise() - mu).array().rowwise() / sd.array();
    xte = (xte.rowwise() - mu).array().rowwise() / sd.array();
    std::vector<int> ytr;
    for (std::size_t i : train) ytr.push_back(d.occ_class[i]);
    const std::vector<int> pred = fit_logreg_ova(xtr, ytr, 0.1).predict(xte);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < test.size(); ++i) {
      CHECK(r.predicted_class[test[i]] == pred[i]);
      hits += pred[i] == d.occ_class[test[i]];
    }
    acc += 100.0 * static_cast<double>(hits) / static_cast<double>(test.size());
  }
  CHECK(r.accuracy_mean == doctest::Approx(acc / 10.0));
}

TEST_CASE("nested selection on separable data") {
  const LabeledDataset d = clusters(120, 3, 0.3);
  const FoldPlan plan = make_fold_plan(d.size(), d.occ_class, 10, 5, 8);
  const auto grid = make_grid(Learner::kLogistic, std::vector<std::size_t>{3}, default_l2_grid());
  CHECK(grid.size() == 6);
  const EvalReport r = nested_cv(d, Task::kClassification, Learner::kLogistic, grid, plan);
  CHECK(r.accuracy_mean > 95.0);
  CHECK(r.majority_baseline == doctest::Approx(40.0));
  std::size_t total = 0;
  for (const auto& row : r.confusion)
    for (std::size_t c : row) total += c;
  CHECK(total == 120);

  // Multi-threaded folds give the same report.
  const EvalReport par =
      nested_cv(d, Task::kClassification, Learner::kLogistic, grid, plan, {.threads = 3});
  CHECK(par.predicted_class == r.predicted_class);
}

TEST_CASE("regression reports pooled and per-fold scores") {
  const LabeledDataset d = clusters(100, 4, 0.3);
  const FoldPlan plan = make_fold_plan(d.size(), {}, 10, 5, 9);
  for (Learner learner : {Learner::kRidge, Learner::kKernelRidge}) {
    const auto grid = make_grid(learner, std::vector<std::size_t>{3}, default_l2_grid());
    CHECK(grid.size() == (learner == Learner::kRidge ? 6u : 18u));
    const EvalReport r = nested_cv(d, Task::kRegression, learner, grid, plan);
    REQUIRE(r.rho_pooled.has_value());
    CHECK(*r.rho_pooled > 0.9);
    CHECK(r.mae_pooled < 0.6 * r.mae_mean_predictor);
    double mean = 0.0;
    for (const FoldResult& f : r.folds) mean += f.mae;
    CHECK(r.mae_fold_mean == doctest::Approx(mean / 10.0));

    std::istringstream lines(report_to_jsonl(r));
    std::string line;
    std::size_t records = 0;
    nlohmann::json last;
    while (std::getline(lines, line)) {
      last = nlohmann::json::parse(line);
      ++records;
    }
    CHECK(records == 11);
    CHECK(last["record"] == "aggregate");
    CHECK(last["mae"].get<double>() == doctest::Approx(r.mae_pooled));
    CHECK(report_to_table(r).find("Pearson rho") != std::string::npos);
  }
}

TEST_CASE("candidate feature sets are selected per fold") {
  LabeledDataset useful = clusters(80, 5, 0.3);
  LabeledDataset noise = useful;
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(0.0, 1.0);
  for (Eigen::Index i = 0; i < noise.features.rows(); ++i)
    for (Eigen::Index c = 0; c < noise.features.cols(); ++c) noise.features(i, c) = g(rng);
  const std::vector<LabeledDataset> candidates{noise, useful};
  const auto grid =
      make_grid(Learner::kLogistic, std::vector<std::size_t>{3, 3}, std::vector<double>{1.0});
  const FoldPlan plan = make_fold_plan(80, useful.occ_class, 10, 5, 2);
  const EvalReport r =
      nested_cv(candidates, Task::kClassification, Learner::kLogistic, grid, plan);
  for (const FoldResult& f : r.folds) CHECK(f.chosen.feature_set == 1);
}

TEST_CASE("cross-validation input errors") {
  const LabeledDataset d = clusters(40, 6);
  const FoldPlan plan = make_fold_plan(d.size(), d.occ_class, 10, 3, 1);
  const std::vector<GridPoint> empty;
  CHECK_THROWS_AS(nested_cv(d, Task::kClassification, Learner::kLogistic, empty, plan),
                  ConfigError);
  const std::vector<GridPoint> one{{0, 1.0, 0.0}};
  CHECK_THROWS_AS(nested_cv(d, Task::kClassification, Learner::kRidge, one, plan),
                  ConfigError);
  const LabeledDataset small = clusters(19, 6);
  const FoldPlan small_plan = make_fold_plan(19, small.occ_class, 5, 2, 1);
  CHECK_THROWS_AS(nested_cv(small, Task::kClassification, Learner::kLogistic, one, small_plan),
                  DataError);
}
