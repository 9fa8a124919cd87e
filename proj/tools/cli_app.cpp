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

#include "cli_app.hpp"

#include <map>
#include <ostream>

#include "CLI11.hpp"
#include "graphfolk/error.hpp"
#include "graphfolk/io.hpp"
#include "graphfolk/pipeline.hpp"

namespace graphfolk::cli {
namespace {

constexpr int kExitFailure = 1;
constexpr int kExitBadInput = 2;

struct Args {
  std::string config;
  std::string delimiter;
  std::uint64_t seed = 0;
  unsigned threads = 1;

  PruneOptions prune;
  std::string prune_keep;

  WalkOptions walk;

  TrainOptions train;
  std::string loss_log;

  std::vector<std::string> embeddings;
  std::string labels, extra_features, eval_output;
  std::string task = "occ";
  std::string learner;
  std::vector<double> l2 = predict::default_l2_grid();
  std::size_t outer_folds = 10, inner_folds = 10;

  std::string synth_spec, out_dir;

  std::string edges, keep;
  std::vector<std::size_t> dims{32};
  std::string income_learner = "ridge";
};

std::optional<char> parse_delimiter(const std::string& text) {
  if (text.empty()) return std::nullopt;
  if (text == "tab" || text == "\\t") return '\t';
  if (text == "space") return ' ';
  if (text.size() != 1) throw ConfigError("delimiter must be a single character");
  return text[0];
}

predict::Learner parse_learner(const std::string& name) {
  if (name == "logistic") return predict::Learner::kLogistic;
  if (name == "ridge") return predict::Learner::kRidge;
  if (name == "kernel-ridge") return predict::Learner::kKernelRidge;
  throw ConfigError("unknown learner " + name);
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw ConfigError(std::string(flag) + " is required");
}

std::optional<fs::path> optional_path(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return fs::path(s);
}

// Flat "key = value" file whose keys are flag names without the dashes.
// Values become option defaults, so flags given on the command line win.
void apply_config(CLI::App& app, CLI::App& sub, const std::string& path) {
  const std::string text = io::read_file(path);
  const auto lines = io::split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const auto line = io::trim(lines[n]);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(path, n + 1, "expected key = value");
    const std::string key(io::trim(line.substr(0, eq)));
    std::string value(io::trim(line.substr(eq + 1)));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (key == "config") throw ParseError(path, n + 1, "config files cannot nest");
    if (CLI::Option* opt = sub.get_option_no_throw("--" + key)) {
      try {
        opt->default_val(value);
      } catch (const CLI::Error& e) {
        throw ParseError(path, n + 1, "bad value for " + key + ": " + e.what());
      }
      continue;
    }
    bool known = false;
    for (const CLI::App* other : app.get_subcommands({})) {
      known = known || other->get_option_no_throw("--" + key) != nullptr;
    }
    if (!known) throw ParseError(path, n + 1, "unknown key " + key);
  }
}

void add_seed_threads(CLI::App* sub, Args& a) {
  sub->add_option("--seed", a.seed, "Global seed")->envname("GRAPHFOLK_SEED");
  sub->add_option("--threads", a.threads, "Worker threads; 1 is fully deterministic")
      ->check(CLI::PositiveNumber);
}

void add_walk_flags(CLI::App* sub, WalkConfig& w) {
  sub->add_option("--walk-length", w.walk_length, "Vertices per walk")->capture_default_str();
  sub->add_option("--walks-per-vertex", w.walks_per_vertex, "Walks started at every vertex")
      ->capture_default_str();
}

void add_sgns_flags(CLI::App* sub, SgnsConfig& s, bool dim_flag) {
  if (dim_flag) sub->add_option("--dim", s.dim, "Embedding dimensionality")->capture_default_str();
  sub->add_option("--window-radius", s.window_radius, "Context positions on each side")
      ->capture_default_str();
  sub->add_option("--negatives", s.negatives, "Negative samples per pair")->capture_default_str();
  sub->add_option("--lr", s.initial_lr, "Initial learning rate")->capture_default_str();
  sub->add_option("--epochs", s.epochs, "Passes over the corpus")->capture_default_str();
}

void add_eval_flags(CLI::App* sub, Args& a) {
  sub->add_option("--l2", a.l2, "L2 grid for nested CV")->delimiter(',');
  sub->add_option("--outer-folds", a.outer_folds)->capture_default_str();
  sub->add_option("--inner-folds", a.inner_folds)->capture_default_str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  CLI::App app{"graphfolk: random-walk SkipGram user embeddings and attribute prediction",
               "graphfolk"};
  app.require_subcommand(1);
  Args a;

  auto* prune = app.add_subcommand("prune", "Keep edges whose target has enough followers");
  prune->add_option("--input,-i", a.prune.input, "Directed edge list");
  prune->add_option("--output,-o", a.prune.output, "Pruned edge list");
  prune->add_option("--min-in-degree", a.prune.min_in_degree)->capture_default_str();
  prune->add_option("--keep", a.prune_keep, "Ids whose incoming edges are always kept");

  auto* walk = app.add_subcommand("walk", "Generate the random-walk corpus");
  walk->add_option("--edges", a.edges, "Edge list");
  walk->add_option("--output,-o", a.walk.output, "Corpus file");
  add_walk_flags(walk, a.walk.walk);
  add_seed_threads(walk, a);

  auto* train = app.add_subcommand("train", "Train SkipGram embeddings on a corpus");
  train->add_option("--corpus", a.train.corpus, "Corpus file");
  train->add_option("--output,-o", a.train.output, "Embedding file");
  train->add_option("--loss-log", a.loss_log, "CSV of mean pair loss per epoch");
  add_sgns_flags(train, a.train.sgns, true);
  add_seed_threads(train, a);

  auto* eval = app.add_subcommand("eval", "Nested cross-validated attribute prediction");
  eval->add_option("--embeddings", a.embeddings,
                   "Feature files (several = candidates chosen by inner CV)");
  eval->add_option("--labels", a.labels, "Label CSV (id,occ_class,income)");
  eval->add_option("--task", a.task, "occ or income")->check(CLI::IsMember({"occ", "income"}));
  eval->add_option("--learner", a.learner, "logistic | ridge | kernel-ridge");
  eval->add_option("--extra-features", a.extra_features, "Features appended to every embedding");
  eval->add_option("--output,-o", a.eval_output, "Report prefix (.jsonl and .txt)");
  add_eval_flags(eval, a);
  add_seed_threads(eval, a);

  auto* synth = app.add_subcommand("synth", "Generate a labelled stochastic block model");
  synth->add_option("--spec", a.synth_spec, "key = value SBM spec");
  synth->add_option("--out-dir", a.out_dir, "Output directory");

  auto* pipeline = app.add_subcommand("pipeline", "prune, walk, train and eval in one go");
  PipelineOptions pipe;
  pipeline->add_option("--edges", a.edges, "Directed edge list");
  pipeline->add_option("--synth", a.synth_spec, "SBM spec to generate the input from");
  pipeline->add_option("--labels", a.labels);
  pipeline->add_option("--keep", a.keep);
  pipeline->add_option("--extra-features", a.extra_features);
  pipeline->add_option("--out-dir", a.out_dir);
  pipeline->add_option("--min-in-degree", pipe.min_in_degree)->capture_default_str();
  pipeline->add_option("--dim", a.dims, "Embedding dims, comma separated")->delimiter(',');
  pipeline->add_option("--income-learner", a.income_learner)->capture_default_str();
  add_walk_flags(pipeline, pipe.walk);
  add_sgns_flags(pipeline, pipe.sgns, false);
  add_eval_flags(pipeline, a);
  add_seed_threads(pipeline, a);

  for (CLI::App* sub : {prune, walk, pipeline}) {
    sub->add_option("--delimiter", a.delimiter, "Edge-list field separator (default whitespace)");
  }
  for (CLI::App* sub : app.get_subcommands({})) {
    sub->add_option("--config", a.config, "key = value file; command-line flags take precedence");
  }

  std::vector<std::string> argv(args_in.rbegin(), args_in.rend());
  if (!argv.empty()) argv.pop_back();  // program name

  try {
    // Config values must be in place before the command line is parsed.
    for (std::size_t i = 0; i < args_in.size(); ++i) {
      std::string cfg;
      if (args_in[i] == "--config" && i + 1 < args_in.size()) cfg = args_in[i + 1];
      if (args_in[i].rfind("--config=", 0) == 0) cfg = args_in[i].substr(9);
      if (cfg.empty()) continue;
      for (CLI::App* sub : app.get_subcommands({})) {
        for (std::size_t j = 1; j < i; ++j) {
          if (args_in[j] == sub->get_name()) apply_config(app, *sub, cfg);
        }
      }
    }
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }

  try {
    const auto delimiter = parse_delimiter(a.delimiter);
    if (prune->parsed()) {
      require(a.prune.input.string(), "--input");
      require(a.prune.output.string(), "--output");
      a.prune.keep = optional_path(a.prune_keep);
      a.prune.delimiter = delimiter;
      run_prune(a.prune, &err);
    } else if (walk->parsed()) {
      require(a.edges, "--edges");
      require(a.walk.output.string(), "--output");
      a.walk.edges = a.edges;
      a.walk.walk.seed = a.seed;
      a.walk.walk.threads = a.threads;
      a.walk.delimiter = delimiter;
      run_walk(a.walk, &err);
    } else if (train->parsed()) {
      require(a.train.corpus.string(), "--corpus");
      require(a.train.output.string(), "--output");
      a.train.sgns.seed = a.seed;
      a.train.sgns.threads = a.threads;
      a.train.loss_log = optional_path(a.loss_log);
      run_train(a.train, &err);
    } else if (eval->parsed()) {
      if (a.embeddings.empty()) throw ConfigError("--embeddings is required");
      require(a.labels, "--labels");
      require(a.eval_output, "--output");
      EvalOptions opts;
      for (const auto& e : a.embeddings) opts.embeddings.emplace_back(e);
      opts.labels = a.labels;
      opts.task = a.task == "occ" ? predict::Task::kClassification : predict::Task::kRegression;
      opts.learner = a.learner.empty()
                         ? (a.task == "occ" ? predict::Learner::kLogistic
                                            : predict::Learner::kRidge)
                         : parse_learner(a.learner);
      opts.extra_features = optional_path(a.extra_features);
      opts.output = a.eval_output;
      opts.l2_grid = a.l2;
      opts.outer_folds = a.outer_folds;
      opts.inner_folds = a.inner_folds;
      opts.seed = a.seed;
      opts.threads = a.threads;
      run_eval(opts, &err);
    } else if (synth->parsed()) {
      require(a.synth_spec, "--spec");
      require(a.out_dir, "--out-dir");
      run_synth(a.synth_spec, a.out_dir, &err);
    } else if (pipeline->parsed()) {
      require(a.out_dir, "--out-dir");
      pipe.edges = optional_path(a.edges);
      pipe.synth_spec = optional_path(a.synth_spec);
      pipe.labels = optional_path(a.labels);
      pipe.keep = optional_path(a.keep);
      pipe.extra_features = optional_path(a.extra_features);
      pipe.out_dir = a.out_dir;
      pipe.delimiter = delimiter;
      pipe.dims = a.dims;
      pipe.income_learner = parse_learner(a.income_learner);
      pipe.l2_grid = a.l2;
      pipe.outer_folds = a.outer_folds;
      pipe.inner_folds = a.inner_folds;
      pipe.seed = a.seed;
      pipe.threads = a.threads;
      run_pipeline(pipe, &err);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return 0;
}

}  // namespace graphfolk::cli
