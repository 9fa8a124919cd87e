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

#include "graphfolk/dataset.hpp"

#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "graphfolk/error.hpp"
#include "graphfolk/io.hpp"

namespace graphfolk::predict {

FeatureTable load_feature_table(const std::filesystem::path& path) {
  const std::string text = io::read_file(path);
  const auto lines = io::split_lines(text);
  const std::string src = path.string();
  std::size_t n = 0;
  while (n < lines.size() && io::trim(lines[n]).empty()) ++n;
  if (n == lines.size()) throw ParseError(src, 0, "missing \"<rows> <cols>\" header");
  const auto header = io::split_whitespace(lines[n]);
  long long rows = 0, cols = 0;
  if (header.size() != 2 || !io::parse_int(header[0], rows) ||
      !io::parse_int(header[1], cols) || rows < 0 || cols < 0) {
    throw ParseError(src, n + 1, "header must be \"<rows> <cols>\"");
  }
  FeatureTable table;
  table.ids.reserve(static_cast<std::size_t>(rows));
  table.values.resize(rows, cols);
  std::unordered_set<std::string_view> seen;
  for (++n; n < lines.size(); ++n) {
    const auto fields = io::split_whitespace(lines[n]);
    if (fields.empty()) continue;
    const auto r = static_cast<long long>(table.ids.size());
    if (r >= rows) throw ParseError(src, n + 1, "more rows than the header declares");
    if (static_cast<long long>(fields.size()) != cols + 1) {
      throw ParseError(src, n + 1,
                       "expected " + std::to_string(cols + 1) + " fields, found " +
                           std::to_string(fields.size()));
    }
    if (!seen.insert(fields[0]).second) {
      throw ParseError(src, n + 1, "duplicate id " + std::string(fields[0]));
    }
    for (long long c = 0; c < cols; ++c) {
      double x = 0.0;
      if (!io::parse_double(fields[static_cast<std::size_t>(c) + 1], x)) {
        throw ParseError(src, n + 1, "bad number in column " + std::to_string(c + 1));
      }
      table.values(r, c) = x;
    }
    table.ids.emplace_back(fields[0]);
  }
  if (static_cast<long long>(table.ids.size()) != rows) {
    throw ParseError(src, 0, "header declares " + std::to_string(rows) +
                                 " rows, found " + std::to_string(table.ids.size()));
  }
  return table;
}

void save_feature_table(const std::filesystem::path& path, const FeatureTable& table) {
  io::write_atomically(path, [&](std::ostream& out) {
    out << table.rows() << ' ' << table.cols() << '\n';
    for (std::size_t r = 0; r < table.rows(); ++r) {
      out << table.ids[r];
      for (Eigen::Index c = 0; c < table.values.cols(); ++c) {
        out << ' ' << io::format_double(table.values(static_cast<Eigen::Index>(r), c));
      }
      out << '\n';
    }
  });
}

FeatureTable concat_features(const FeatureTable& a, const FeatureTable& b) {
  if (b.cols() == 0) return a;
  if (a.cols() == 0 && a.rows() == 0) return b;
  std::unordered_map<std::string_view, Eigen::Index> b_index;
  for (std::size_t i = 0; i < b.rows(); ++i) {
    b_index.emplace(b.ids[i], static_cast<Eigen::Index>(i));
  }
  std::vector<std::string> missing;
  std::unordered_set<std::string_view> in_a(a.ids.begin(), a.ids.end());
  for (const auto& id : a.ids) {
    if (!b_index.contains(id)) missing.push_back(id);
  }
  for (const auto& id : b.ids) {
    if (!in_a.contains(id)) missing.push_back(id);
  }
  if (!missing.empty()) {
    std::string msg = "feature tables do not align; ids present in only one: ";
    for (std::size_t i = 0; i < missing.size() && i < 20; ++i) {
      msg += (i ? ", " : "") + missing[i];
    }
    if (missing.size() > 20) msg += ", ... (" + std::to_string(missing.size()) + " total)";
    throw DataError(msg);
  }
  FeatureTable out;
  out.ids = a.ids;
  out.values.resize(a.values.rows(), a.values.cols() + b.values.cols());
  out.values.leftCols(a.values.cols()) = a.values;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    out.values.row(r).rightCols(b.values.cols()) = b.values.row(b_index.at(a.ids[i]));
  }
  return out;
}

LabelTable load_labels(const std::filesystem::path& path) {
  const std::string text = io::read_file(path);
  const auto lines = io::split_lines(text);
  const std::string src = path.string();
  if (lines.empty() || io::trim(lines[0]) != "id,occ_class,income") {
    throw ParseError(src, 1, "header must be \"id,occ_class,income\"");
  }
  LabelTable labels;
  std::unordered_set<std::string_view> seen;
  for (std::size_t n = 1; n < lines.size(); ++n) {
    if (io::trim(lines[n]).empty()) continue;
    const auto fields = io::split_on(lines[n], ',');
    if (fields.size() != 3) {
      throw ParseError(src, n + 1, "expected 3 fields, found " + std::to_string(fields.size()));
    }
    LabelRow row;
    const auto id = io::trim(fields[0]);
    if (id.empty()) throw ParseError(src, n + 1, "empty id");
    if (!seen.insert(id).second) throw ParseError(src, n + 1, "duplicate id " + std::string(id));
    row.id = std::string(id);
    if (const auto cls = io::trim(fields[1]); !cls.empty()) {
      long long c = 0;
      if (!io::parse_int(cls, c) || c < 1 || c > kNumClasses) {
        throw ParseError(src, n + 1, "occ_class must be an integer in 1..9");
      }
      row.occ_class = static_cast<int>(c);
    }
    if (const auto inc = io::trim(fields[2]); !inc.empty()) {
      double v = 0.0;
      if (!io::parse_double(inc, v) || !(v > 0.0)) {
        throw ParseError(src, n + 1, "income must be a positive number");
      }
      row.income = v;
    }
    labels.push_back(std::move(row));
  }
  return labels;
}

void save_labels(const std::filesystem::path& path, const LabelTable& labels) {
  io::write_atomically(path, [&](std::ostream& out) {
    out << "id,occ_class,income\n";
    for (const LabelRow& row : labels) {
      out << row.id << ',';
      if (row.occ_class) out << *row.occ_class;
      out << ',';
      if (row.income) out << io::format_double(*row.income);
      out << '\n';
    }
  });
}

LabeledDataset join_labels(const FeatureTable& features, const LabelTable& labels,
                           Task task, JoinStats* stats) {
  std::unordered_map<std::string_view, const LabelRow*> by_id;
  for (const LabelRow& row : labels) by_id.emplace(row.id, &row);

  std::vector<Eigen::Index> rows;
  LabeledDataset data;
  JoinStats local;
  std::unordered_set<std::string_view> matched;
  for (std::size_t i = 0; i < features.rows(); ++i) {
    auto it = by_id.find(features.ids[i]);
    if (it == by_id.end()) {
      ++local.features_without_label;
      continue;
    }
    matched.insert(it->first);
    const LabelRow& row = *it->second;
    if (task == Task::kClassification) {
      if (!row.occ_class) continue;
      data.occ_class.push_back(*row.occ_class);
    } else {
      if (!row.income) continue;
      data.income.push_back(*row.income);
    }
    data.ids.push_back(features.ids[i]);
    rows.push_back(static_cast<Eigen::Index>(i));
  }
  local.labels_without_features = labels.size() - matched.size();
  data.features.resize(static_cast<Eigen::Index>(rows.size()), features.values.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    data.features.row(static_cast<Eigen::Index>(r)) = features.values.row(rows[r]);
  }
  if (stats) *stats = local;
  return data;
}

}  // namespace graphfolk::predict
