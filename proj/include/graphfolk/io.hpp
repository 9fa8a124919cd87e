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

// Small text-file helpers shared by every file format in the toolkit.

#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace graphfolk::io {

// Runs `writer` against a temporary sibling of `path` and renames it into
// place only if the writer returns normally. Nothing is left behind on error.
void write_atomically(const std::filesystem::path& path,
                      const std::function<void(std::ostream&)>& writer);

// Reads a whole file; throws IoError when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

// Splits on '\n', dropping a trailing '\r' from each line. A final empty line
// produced by a terminating newline is not returned.
std::vector<std::string_view> split_lines(std::string_view text);

// Splits on runs of spaces/tabs; empty fields are never produced.
std::vector<std::string_view> split_whitespace(std::string_view line);

// Splits on every occurrence of `delim`; empty fields are kept.
std::vector<std::string_view> split_on(std::string_view line, char delim);

std::string_view trim(std::string_view s);

// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

// Strict parsers: the whole field must be consumed.
bool parse_double(std::string_view text, double& out);
bool parse_int(std::string_view text, long long& out);

}  // namespace graphfolk::io
