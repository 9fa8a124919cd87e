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

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli_app.hpp"
#include "doctest.h"
#include "graphfolk/io.hpp"
#include "json.hpp"
#include "test_util.hpp"

using namespace graphfolk;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "graphfolk");
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::vector<std::string> lines_of(const fs::path& p) {
  std::vector<std::string> out;
  std::ifstream in(p);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::size_t tokens(const std::string& line) {
  std::istringstream s(line);
  std::size_t n = 0;
  for (std::string t; s >> t;) ++n;
  return n;
}

// Ring of ten with chords: every vertex has degree >= 2.
std::string ten_vertex_edges() {
  std::string s = "# fixture\n";
  for (int i = 0; i < 10; ++i) {
    s += "v" + std::to_string(i) + " v" + std::to_string((i + 1) % 10) + "\n";
  }
  s += "v0 v5\nv2 v7\n";
  return s;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"walk", "--no-such-flag"}).code == 2);
  CHECK(run({"walk", "--output", "x"}).code == 2);
  CHECK(run({"eval", "--task", "height"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("prune subcommand") {
  test::TempDir dir;
  const fs::path in = dir.path() / "follows.txt";
  std::string star = "# header\n";
  for (int i = 0; i < 10; ++i) star += "f" + std::to_string(i) + " hub\n";
  star += "f0 seed\n";
  write(in, star);

  REQUIRE(run({"prune", "-i", in.string(), "-o", (dir.path() / "p10.txt").string(),
               "--min-in-degree", "10"}).code == 0);
  auto kept = lines_of(dir.path() / "p10.txt");
  CHECK(kept.size() == 10);
  for (const auto& l : kept) CHECK(l.ends_with(" hub"));

  REQUIRE(run({"prune", "-i", in.string(), "-o", (dir.path() / "p0.txt").string(),
               "--min-in-degree", "0"}).code == 0);
  std::string no_comments = star.substr(star.find('\n') + 1);
  CHECK(io::read_file(dir.path() / "p0.txt") == no_comments);

  write(dir.path() / "keep.txt", "seed\n");
  REQUIRE(run({"prune", "-i", in.string(), "-o", (dir.path() / "pk.txt").string(),
               "--keep", (dir.path() / "keep.txt").string()}).code == 0);
  auto protected_lines = lines_of(dir.path() / "pk.txt");
  CHECK(protected_lines.size() == 11);
  CHECK(protected_lines.back() == "f0 seed");

  write(dir.path() / "bad.txt", "a b\nc\n");
  const fs::path never = dir.path() / "never.txt";
  const Run bad = run({"prune", "-i", (dir.path() / "bad.txt").string(), "-o", never.string()});
  CHECK(bad.code == 2);
  CHECK(bad.err.find(":2") != std::string::npos);
  CHECK_FALSE(fs::exists(never));

  CHECK(run({"prune", "-i", (dir.path() / "missing.txt").string(), "-o", never.string()}).code ==
        1);
}

TEST_CASE("walk subcommand") {
  test::TempDir dir;
  const fs::path edges = dir.path() / "edges.txt";
  write(edges, ten_vertex_edges());
  const auto walk = [&](const std::string& name, std::vector<std::string> extra) {
    std::vector<std::string> args{"walk", "--edges", edges.string(), "-o",
                                  (dir.path() / name).string()};
    args.insert(args.end(), extra.begin(), extra.end());
    return run(args).code;
  };

  REQUIRE(walk("w.txt", {"--seed", "3"}) == 0);
  const auto lines = lines_of(dir.path() / "w.txt");
  CHECK(lines.size() == 10);
  for (const auto& l : lines) CHECK(tokens(l) == 80);

  REQUIRE(walk("w2.txt", {"--seed", "3"}) == 0);
  CHECK(io::read_file(dir.path() / "w.txt") == io::read_file(dir.path() / "w2.txt"));
  REQUIRE(walk("w3.txt", {"--seed", "4"}) == 0);
  CHECK(io::read_file(dir.path() / "w.txt") != io::read_file(dir.path() / "w3.txt"));

  for (int len : {40, 100}) {
    REQUIRE(walk("len.txt", {"--walk-length", std::to_string(len), "--walks-per-vertex", "2"}) ==
            0);
    const auto ls = lines_of(dir.path() / "len.txt");
    CHECK(ls.size() == 20);
    for (const auto& l : ls) CHECK(tokens(l) == static_cast<std::size_t>(len));
  }
  CHECK(walk("zero.txt", {"--walk-length", "0"}) == 2);

  SUBCASE("seed from the environment") {
    ::setenv("GRAPHFOLK_SEED", "3", 1);
    REQUIRE(walk("env.txt", {}) == 0);
    REQUIRE(walk("env_override.txt", {"--seed", "4"}) == 0);
    ::unsetenv("GRAPHFOLK_SEED");
    CHECK(io::read_file(dir.path() / "env.txt") == io::read_file(dir.path() / "w.txt"));
    CHECK(io::read_file(dir.path() / "env_override.txt") ==
          io::read_file(dir.path() / "w3.txt"));
  }

  SUBCASE("config file sits between flags and defaults") {
    const fs::path cfg = dir.path() / "walk.cfg";
    write(cfg, "# walk settings\nwalk-length = 7\nseed = 3\n");
    REQUIRE(walk("c1.txt", {"--config", cfg.string()}) == 0);
    for (const auto& l : lines_of(dir.path() / "c1.txt")) CHECK(tokens(l) == 7);
    REQUIRE(walk("c2.txt", {"--config", cfg.string(), "--walk-length", "9"}) == 0);
    for (const auto& l : lines_of(dir.path() / "c2.txt")) CHECK(tokens(l) == 9);

    write(cfg, "colour = blue\n");
    CHECK(walk("c3.txt", {"--config", cfg.string()}) == 2);
    write(cfg, "walk-length = many\n");
    CHECK(walk("c4.txt", {"--config", cfg.string()}) == 2);
  }
}

TEST_CASE("train subcommand") {
  test::TempDir dir;
  const fs::path edges = dir.path() / "edges.txt";
  const fs::path corpus = dir.path() / "walks.txt";
  write(edges, ten_vertex_edges());
  REQUIRE(run({"walk", "--edges", edges.string(), "-o", corpus.string(), "--walks-per-vertex",
               "5", "--walk-length", "20"}).code == 0);

  const fs::path emb = dir.path() / "emb.txt";
  const fs::path loss = dir.path() / "loss.csv";
  REQUIRE(run({"train", "--corpus", corpus.string(), "-o", emb.string(), "--epochs", "2",
               "--loss-log", loss.string()}).code == 0);
  const auto ls = lines_of(emb);
  CHECK(ls.front() == "10 32");
  CHECK(ls.size() == 11);
  CHECK(tokens(ls[1]) == 33);
  const auto loss_lines = lines_of(loss);
  CHECK(loss_lines.size() == 3);
  CHECK(loss_lines[0] == "epoch,mean_pair_loss,online_pair_loss");

  const fs::path init = dir.path() / "init.txt";
  REQUIRE(run({"train", "--corpus", corpus.string(), "-o", init.string(), "--epochs", "0",
               "--dim", "8"}).code == 0);
  const auto il = lines_of(init);
  CHECK(il.front() == "10 8");
  for (std::size_t i = 1; i < il.size(); ++i) {
    std::istringstream s(il[i]);
    std::string id;
    s >> id;
    for (double x; s >> x;) CHECK(std::abs(x) <= 0.5 / 8);
  }
  const fs::path init2 = dir.path() / "init2.txt";
  REQUIRE(run({"train", "--corpus", corpus.string(), "-o", init2.string(), "--epochs", "0",
               "--dim", "8"}).code == 0);
  CHECK(io::read_file(init) == io::read_file(init2));

  CHECK(run({"train", "--corpus", corpus.string(), "-o", emb.string(), "--lr", "0"}).code == 2);
}

TEST_CASE("synth and eval subcommands") {
  test::TempDir dir;
  const fs::path spec = dir.path() / "sbm.txt";
  write(spec,
        "block_sizes = 40, 40, 40\np_in = 0.3\np_out = 0.01\nclass_of_block = 1, 2, 3\n"
        "income_mean = 20000, 40000, 60000\nincome_std = 2000\nseed = 5\ntopics_dim = 4\n");
  const fs::path out = dir.path() / "synth";
  REQUIRE(run({"synth", "--spec", spec.string(), "--out-dir", out.string()}).code == 0);
  for (const char* f : {"edges.txt", "labels.csv", "seeds.txt", "topics.txt"}) {
    CHECK(fs::exists(out / f));
  }
  CHECK(lines_of(out / "labels.csv").front() == "id,occ_class,income");

  const fs::path walks = dir.path() / "walks.txt";
  const fs::path emb = dir.path() / "emb.txt";
  REQUIRE(run({"walk", "--edges", (out / "edges.txt").string(), "-o", walks.string(),
               "--walks-per-vertex", "5", "--walk-length", "30"}).code == 0);
  REQUIRE(run({"train", "--corpus", walks.string(), "-o", emb.string(), "--dim", "8",
               "--epochs", "2"}).code == 0);

  const std::vector<std::string> folds{"--outer-folds", "5", "--inner-folds", "3"};
  auto eval = [&](std::vector<std::string> args) {
    args.insert(args.begin(), {"eval", "--embeddings", emb.string(), "--labels",
                               (out / "labels.csv").string()});
    args.insert(args.end(), folds.begin(), folds.end());
    return run(args).code;
  };
  auto aggregate = [](const fs::path& p) {
    return nlohmann::json::parse(lines_of(p).back());
  };

  const fs::path occ = dir.path() / "occ";
  REQUIRE(eval({"--task", "occ", "-o", occ.string()}) == 0);
  auto a = aggregate(dir.path() / "occ.jsonl");
  CHECK(a["record"] == "aggregate");
  CHECK(a["accuracy"].get<double>() > 80.0);
  CHECK(a["misclassification_matrix"].size() == 9);
  CHECK(lines_of(dir.path() / "occ.jsonl").size() == 6);
  CHECK(fs::exists(dir.path() / "occ.txt"));

  const fs::path inc = dir.path() / "inc";
  REQUIRE(eval({"--task", "income", "-o", inc.string()}) == 0);
  a = aggregate(dir.path() / "inc.jsonl");
  CHECK(a.contains("mae"));
  CHECK(a.contains("rho"));
  CHECK(a["mae"].get<double>() < a["mae_mean_predictor"].get<double>());

  const fs::path both = dir.path() / "both";
  REQUIRE(eval({"--task", "occ", "--extra-features", (out / "topics.txt").string(), "-o",
                both.string()}) == 0);
  CHECK(fs::exists(dir.path() / "both.jsonl"));

  CHECK(eval({"--task", "occ", "--learner", "ridge", "-o", (dir.path() / "x").string()}) == 2);
  CHECK(eval({"--task", "occ", "--learner", "svm", "-o", (dir.path() / "x").string()}) == 2);
}
