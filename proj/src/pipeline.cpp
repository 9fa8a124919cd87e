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

#include "graphfolk/pipeline.hpp"

#include <fstream>
#include <ostream>
#include <unordered_map>

#include "graphfolk/error.hpp"
#include "graphfolk/graph.hpp"
#include "graphfolk/io.hpp"
#include "graphfolk/rng.hpp"

namespace graphfolk::cli {
namespace {

void note(std::ostream* log, const std::string& line) {
  if (log) *log << "[graphfolk] " << line << '\n';
}

fs::path with_suffix(const fs::path& base, const char* suffix) {
  fs::path p = base;
  p += suffix;
  return p;
}

// Reorders `data` rows to follow `ids`; both must name the same rows.
predict::LabeledDataset align_rows(const predict::LabeledDataset& data,
                                   const std::vector<std::string>& ids) {
  if (data.ids == ids) return data;
  if (data.ids.size() != ids.size()) {
    throw DataError("embedding files cover different labelled users");
  }
  std::unordered_map<std::string_view, std::size_t> pos;
  for (std::size_t i = 0; i < data.ids.size(); ++i) pos.emplace(data.ids[i], i);
  predict::LabeledDataset out;
  out.ids = ids;
  out.features.resize(data.features.rows(), data.features.cols());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto it = pos.find(ids[i]);
    if (it == pos.end()) throw DataError("embedding files cover different labelled users");
    const std::size_t j = it->second;
    out.features.row(static_cast<Eigen::Index>(i)) =
        data.features.row(static_cast<Eigen::Index>(j));
    if (!data.occ_class.empty()) out.occ_class.push_back(data.occ_class[j]);
    if (!data.income.empty()) out.income.push_back(data.income[j]);
  }
  return out;
}

}  // namespace

std::size_t run_prune(const PruneOptions& opts, std::ostream* log) {
  const EdgeList edges = load_edge_list(opts.input, opts.delimiter);
  std::unordered_set<std::string> keep;
  if (opts.keep) keep = load_id_set(*opts.keep);
  const EdgeList kept = prune_by_in_degree(edges, opts.min_in_degree, keep);
  save_edge_list(opts.output, kept, opts.delimiter.value_or(' '));
  note(log, "prune: kept " + std::to_string(kept.size()) + " of " +
                std::to_string(edges.size()) + " edges (min in-degree " +
                std::to_string(opts.min_in_degree) + ")");
  return kept.size();
}

WalkCorpus run_walk(const WalkOptions& opts, std::ostream* log) {
  WalkConfig cfg = opts.walk;
  cfg.validate();
  cfg.seed = derive_seed(opts.walk.seed, kWalkStage);
  const Graph g = Graph::build_undirected(load_edge_list(opts.edges, opts.delimiter));
  WalkCorpus corpus = generate_corpus(g, cfg);
  save_corpus(opts.output, corpus, g.ids());
  note(log, "walk: " + std::to_string(g.num_vertices()) + " vertices, " +
                std::to_string(g.num_edges()) + " edges, " +
                std::to_string(corpus.walks.size()) + " walks, " +
                std::to_string(corpus.num_tokens()) + " tokens");
  return corpus;
}

std::vector<double> run_train(const TrainOptions& opts, std::ostream* log) {
  SgnsConfig cfg = opts.sgns;
  cfg.validate();
  cfg.seed = derive_seed(opts.sgns.seed, kTrainStage);
  const LoadedCorpus loaded = load_corpus(opts.corpus);
  const TrainResult result = train(loaded.corpus, loaded.ids.size(), cfg);
  if (!result.model.all_finite()) throw DataError("training diverged (non-finite weights)");
  predict::save_feature_table(opts.output, export_embeddings(result.model, loaded.ids));
  for (std::size_t e = 0; e < result.epoch_loss.size(); ++e) {
    note(log, "train: epoch " + std::to_string(e + 1) + " mean pair loss " +
                  io::format_double(result.epoch_loss[e]));
  }
  if (opts.loss_log) {
    io::write_atomically(*opts.loss_log, [&](std::ostream& out) {
      out << "epoch,mean_pair_loss,online_pair_loss\n";
      for (std::size_t e = 0; e < result.epoch_loss.size(); ++e) {
        out << e + 1 << ',' << io::format_double(result.epoch_loss[e]) << ','
            << io::format_double(result.online_loss[e]) << '\n';
      }
    });
  }
  return result.epoch_loss;
}

predict::EvalReport run_eval(const EvalOptions& opts, std::ostream* log) {
  using namespace predict;
  if (opts.embeddings.empty()) throw ConfigError("eval needs at least one embedding file");
  if (opts.l2_grid.empty()) throw ConfigError("l2 grid is empty");
  const LabelTable labels = load_labels(opts.labels);
  std::optional<FeatureTable> extra;
  if (opts.extra_features) extra = load_feature_table(*opts.extra_features);

  std::vector<LabeledDataset> candidates;
  std::vector<std::size_t> dims;
  std::vector<std::string> names;
  for (const fs::path& path : opts.embeddings) {
    FeatureTable table = load_feature_table(path);
    std::string name = path.stem().string();
    if (extra) {
      table = concat_features(table, *extra);
      name += "+" + opts.extra_features->stem().string();
    }
    JoinStats stats;
    LabeledDataset data = join_labels(table, labels, opts.task, &stats);
    if (stats.labels_without_features > 0) {
      note(log, "eval: " + std::to_string(stats.labels_without_features) +
                    " labelled users have no features in " + path.string() +
                    " and are skipped");
    }
    if (!candidates.empty()) data = align_rows(data, candidates.front().ids);
    dims.push_back(table.cols());
    names.push_back(std::move(name));
    candidates.push_back(std::move(data));
  }

  const LabeledDataset& base = candidates.front();
  const std::uint64_t seed = derive_seed(opts.seed, kEvalStage);
  const std::span<const int> strata =
      opts.task == Task::kClassification ? std::span<const int>(base.occ_class)
                                         : std::span<const int>();
  const FoldPlan plan =
      make_fold_plan(base.size(), strata, opts.outer_folds, opts.inner_folds, seed);
  const auto grid = make_grid(opts.learner, dims, opts.l2_grid);
  EvalReport report =
      nested_cv(candidates, opts.task, opts.learner, grid, plan, CvOptions{opts.threads});
  report.feature_set_names = names;

  const std::string jsonl = report_to_jsonl(report);
  const std::string table = report_to_table(report);
  io::write_atomically(with_suffix(opts.output, ".jsonl"),
                       [&](std::ostream& out) { out << jsonl; });
  io::write_atomically(with_suffix(opts.output, ".txt"),
                       [&](std::ostream& out) { out << table; });
  if (report.task == Task::kClassification) {
    note(log, "eval: " + std::to_string(base.size()) + " users, accuracy " +
                  io::format_double(report.accuracy_mean) + "% (majority " +
                  io::format_double(report.majority_baseline) + "%)");
  } else {
    note(log, "eval: " + std::to_string(base.size()) + " users, MAE " +
                  io::format_double(report.mae_pooled) + ", rho " +
                  (report.rho_pooled ? io::format_double(*report.rho_pooled) : "undefined"));
  }
  return report;
}

synth::SyntheticData run_synth(const fs::path& spec_path, const fs::path& out_dir,
                               std::ostream* log) {
  const synth::SbmSpec spec = synth::load_sbm_spec(spec_path);
  synth::SyntheticData data = synth::generate_sbm(spec);
  fs::create_directories(out_dir);
  save_edge_list(out_dir / "edges.txt", data.edges);
  predict::save_labels(out_dir / "labels.csv", data.labels);
  io::write_atomically(out_dir / "seeds.txt", [&](std::ostream& out) {
    for (const auto& row : data.labels) out << row.id << '\n';
  });
  if (spec.topics_dim > 0) predict::save_feature_table(out_dir / "topics.txt", data.topics);
  note(log, "synth: " + std::to_string(spec.num_vertices()) + " vertices in " +
                std::to_string(spec.block_sizes.size()) + " blocks, " +
                std::to_string(data.edges.size()) + " edges");
  return data;
}

PipelineResult run_pipeline(const PipelineOptions& opts, std::ostream* log) {
  if (opts.edges.has_value() == opts.synth_spec.has_value()) {
    throw ConfigError("pipeline needs exactly one of an edge list or a synth spec");
  }
  if (opts.dims.empty()) throw ConfigError("pipeline needs at least one embedding dim");
  opts.walk.validate();
  {
    SgnsConfig probe = opts.sgns;
    for (std::size_t d : opts.dims) {
      probe.dim = d;
      probe.validate();
    }
  }
  fs::create_directories(opts.out_dir);

  fs::path edges;
  std::optional<fs::path> labels = opts.labels;
  std::optional<fs::path> keep = opts.keep;
  if (opts.synth_spec) {
    const fs::path synth_dir = opts.out_dir / "synth";
    run_synth(*opts.synth_spec, synth_dir, log);
    edges = synth_dir / "edges.txt";
    if (!labels) labels = synth_dir / "labels.csv";
    if (!keep) keep = synth_dir / "seeds.txt";
  } else {
    edges = *opts.edges;
  }

  const fs::path pruned = opts.out_dir / "pruned_edges.txt";
  run_prune({edges, pruned, opts.min_in_degree, keep, opts.delimiter}, log);

  WalkOptions walk{pruned, opts.out_dir / "walks.txt", opts.walk, opts.delimiter};
  walk.walk.seed = opts.seed;
  walk.walk.threads = opts.threads;
  run_walk(walk, log);

  std::vector<fs::path> embeddings;
  for (std::size_t dim : opts.dims) {
    TrainOptions train_opts;
    train_opts.corpus = walk.output;
    train_opts.output = opts.out_dir / ("embeddings_d" + std::to_string(dim) + ".txt");
    train_opts.loss_log = opts.out_dir / ("loss_d" + std::to_string(dim) + ".csv");
    train_opts.sgns = opts.sgns;
    train_opts.sgns.dim = dim;
    train_opts.sgns.seed = opts.seed;
    train_opts.sgns.threads = opts.threads;
    run_train(train_opts, log);
    embeddings.push_back(train_opts.output);
  }

  PipelineResult result;
  if (!labels) return result;
  const predict::LabelTable table = predict::load_labels(*labels);
  std::size_t with_class = 0, with_income = 0;
  for (const auto& row : table) {
    with_class += row.occ_class.has_value();
    with_income += row.income.has_value();
  }
  EvalOptions eval;
  eval.embeddings = embeddings;
  eval.labels = *labels;
  eval.extra_features = opts.extra_features;
  eval.l2_grid = opts.l2_grid;
  eval.outer_folds = opts.outer_folds;
  eval.inner_folds = opts.inner_folds;
  eval.seed = opts.seed;
  eval.threads = opts.threads;
  if (with_class > 0) {
    eval.task = predict::Task::kClassification;
    eval.learner = predict::Learner::kLogistic;
    eval.output = opts.out_dir / "occupation_report";
    result.occupation = run_eval(eval, log);
  }
  if (with_income > 0) {
    eval.task = predict::Task::kRegression;
    eval.learner = opts.income_learner;
    eval.output = opts.out_dir / "income_report";
    result.income = run_eval(eval, log);
  }
  return result;
}

}  // namespace graphfolk::cli
