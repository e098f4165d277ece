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

#include "wordevo/io.hpp"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <fmt/format.h>

namespace wordevo {

namespace {

bool has_gz_extension(const std::filesystem::path& path) {
  return path.extension() == ".gz";
}

class GzFile {
 public:
  explicit GzFile(const std::filesystem::path& path)
      : file_(gzopen(path.c_str(), "rb")) {
    if (file_ == nullptr) {
      throw DataError(fmt::format("cannot open '{}'", path.string()));
    }
    gzbuffer(file_, 1 << 17);
  }
  ~GzFile() { gzclose(file_); }
  GzFile(const GzFile&) = delete;
  GzFile& operator=(const GzFile&) = delete;

  // False at end of input.
  bool getline(std::string& line) {
    line.clear();
    char buf[8192];
    while (gzgets(file_, buf, sizeof buf) != nullptr) {
      line.append(buf);
      if (!line.empty() && line.back() == '\n') {
        line.pop_back();
        return true;
      }
    }
    int err = 0;
    const char* msg = gzerror(file_, &err);
    if (err != Z_OK && err != Z_STREAM_END) {
      throw DataError(fmt::format("gzip read error: {}", msg));
    }
    return !line.empty();
  }

 private:
  gzFile file_;
};

}  // namespace

void for_each_line(std::istream& in,
                   const std::function<void(std::string_view, std::size_t)>& fn) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    fn(line, ++number);
  }
  if (in.bad()) throw DataError("read error");
}

void for_each_file_line(const std::filesystem::path& path,
                        const std::function<void(std::string_view, std::size_t)>& fn) {
  if (!std::filesystem::is_regular_file(path)) {
    throw DataError(fmt::format("no such file: '{}'", path.string()));
  }
  if (has_gz_extension(path)) {
    GzFile gz(path);
    std::string line;
    std::size_t number = 0;
    while (gz.getline(line)) fn(line, ++number);
    return;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
  for_each_line(in, fn);
}

std::string read_file(const std::filesystem::path& path) {
  std::string out;
  for_each_file_line(path, [&](std::string_view line, std::size_t) {
    out.append(line);
    out.push_back('\n');
  });
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError(fmt::format("cannot write '{}'", tmp.string()));
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw DataError(fmt::format("short write to '{}'", tmp.string()));
  }
  std::filesystem::rename(tmp, path);
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

bool parse_int(std::string_view field, std::int64_t& out) {
  if (field.empty()) return false;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc() && ptr == field.data() + field.size();
}

bool parse_uint(std::string_view field, std::uint64_t& out) {
  if (field.empty() || field.front() == '-') return false;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc() && ptr == field.data() + field.size();
}

bool parse_double(std::string_view field, double& out) {
  if (field.empty()) return false;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc() && ptr == field.data() + field.size();
}

std::string format_exact(double value) { return fmt::format("{}", value); }

std::string format_fixed(double value, int decimals) {
  return fmt::format("{:.{}f}", value, decimals);
}

void parallel_for(std::size_t n, std::size_t workers,
                  const std::function<void(std::size_t)>& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace wordevo
