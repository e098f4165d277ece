// Copyright 2026 The wordevo Authors.
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

#ifndef WORDEVO_IO_HPP_
#define WORDEVO_IO_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wordevo {

// Fatal problem with input data (missing file, corrupt lexicon, ...).
// The command-line front end maps it to exit status 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Calls fn(line, line_number) for every line of the stream. Line numbers
// start at 1; a trailing '\r' is kept (inputs are LF-only).
void for_each_line(std::istream& in,
                   const std::function<void(std::string_view, std::size_t)>& fn);

// Same for a file on disk; paths ending in ".gz" are decompressed on the fly.
void for_each_file_line(const std::filesystem::path& path,
                        const std::function<void(std::string_view, std::size_t)>& fn);

// Reads a whole (possibly gzipped) file.
std::string read_file(const std::filesystem::path& path);

// Writes through a sibling temp file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::vector<std::string_view> split(std::string_view text, char sep);

// Strict integer parsing; the whole field must be consumed.
bool parse_int(std::string_view field, std::int64_t& out);
bool parse_uint(std::string_view field, std::uint64_t& out);
bool parse_double(std::string_view field, double& out);

// Shortest decimal text that parses back to the same double.
std::string format_exact(double value);

// Fixed-point rendering, e.g. format_fixed(0.25, 6) == "0.250000".
std::string format_fixed(double value, int decimals);

// Comment lines start with '#'; blank lines are skipped too.
inline bool is_skippable(std::string_view line) {
  return line.empty() || line.front() == '#';
}

// Runs fn(i) for i in [0, n) on up to `workers` threads. Each index is
// visited exactly once, so writing to slot i of a preallocated vector gives
// results that do not depend on the worker count.
void parallel_for(std::size_t n, std::size_t workers,
                  const std::function<void(std::size_t)>& fn);

}  // namespace wordevo

#endif  // WORDEVO_IO_HPP_
