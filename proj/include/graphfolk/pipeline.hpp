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

// File-to-file pipeline stages behind the `graphfolk` subcommands. Every
// stage validates its input fully before anything is written, and every
// output file is staged and renamed into place.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "graphfolk/cross_validation.hpp"
#include "graphfolk/sgns.hpp"
#include "graphfolk/synth.hpp"
#include "graphfolk/walks.hpp"

namespace graphfolk::cli {

namespace fs = std::filesystem;

// Stage seeds are derived from the global seed by stage name, so running a
// stage alone with --seed S reproduces the same stage inside `pipeline`.
inline constexpr const char* kWalkStage = "walks";
inline constexpr const char* kTrainStage = "sgns";
inline constexpr const char* kEvalStage = "predict";

struct PruneOptions {
  fs::path input;
  fs::path output;
  std::size_t min_in_degree = 10;
  std::optional<fs::path> keep;
  std::optional<char> delimiter;
};

// Returns the number of edges written.
std::size_t run_prune(const PruneOptions& opts, std::ostream* log = nullptr);

struct WalkOptions {
  fs::path edges;
  fs::path output;
  WalkConfig walk;            // walk.seed is the global seed
  std::optional<char> delimiter;
};

WalkCorpus run_walk(const WalkOptions& opts, std::ostream* log = nullptr);

struct TrainOptions {
  fs::path corpus;
  fs::path output;
  SgnsConfig sgns;            // sgns.seed is the global seed
  std::optional<fs::path> loss_log;
};

// Returns the mean pair loss of every epoch.
std::vector<double> run_train(const TrainOptions& opts, std::ostream* log = nullptr);

struct EvalOptions {
  // Alternative embeddings of the same users (e.g. one per dimensionality);
  // nested CV picks among them.
  std::vector<fs::path> embeddings;
  fs::path labels;
  predict::Task task = predict::Task::kClassification;
  predict::Learner learner = predict::Learner::kLogistic;
  // Concatenated onto every embedding (e.g. precomputed topic features).
  std::optional<fs::path> extra_features;
  // Writes <output>.jsonl and <output>.txt.
  fs::path output;
  std::vector<double> l2_grid = predict::default_l2_grid();
  std::size_t outer_folds = 10;
  std::size_t inner_folds = 10;
  std::uint64_t seed = 0;     // global seed
  unsigned threads = 1;
};

predict::EvalReport run_eval(const EvalOptions& opts, std::ostream* log = nullptr);

// Writes edges.txt, labels.csv, seeds.txt (every labelled id, for --keep)
// and, when the spec asks for topic features, topics.txt.
synth::SyntheticData run_synth(const fs::path& spec, const fs::path& out_dir,
                               std::ostream* log = nullptr);

struct PipelineOptions {
  // Exactly one of edges / synth_spec.
  std::optional<fs::path> edges;
  std::optional<fs::path> synth_spec;
  std::optional<fs::path> labels;   // taken from the synth output when unset
  std::optional<fs::path> keep;     // idem
  std::optional<fs::path> extra_features;
  fs::path out_dir;
  std::optional<char> delimiter;
  std::size_t min_in_degree = 10;
  WalkConfig walk;
  SgnsConfig sgns;
  std::vector<std::size_t> dims{32};
  predict::Learner income_learner = predict::Learner::kRidge;
  std::vector<double> l2_grid = predict::default_l2_grid();
  std::size_t outer_folds = 10;
  std::size_t inner_folds = 10;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct PipelineResult {
  std::optional<predict::EvalReport> occupation;
  std::optional<predict::EvalReport> income;
};

// prune -> walk -> train (one embedding per dim) -> eval for every task the
// labels support. Outputs land in out_dir.
PipelineResult run_pipeline(const PipelineOptions& opts, std::ostream* log = nullptr);

}  // namespace graphfolk::cli
