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

#include "wordevo/corpus.hpp"

#include <algorithm>
#include <array>

#include <fmt/format.h>

#include "wordevo/io.hpp"

namespace wordevo {

namespace {

constexpr std::array<std::string_view, 12> kCorpusTags = {
    "NOUN", "VERB", "ADJ", "ADV", "PRON", "DET", "ADP", "NUM", "CONJ", "PRT", "X", "."};

constexpr std::size_t kMaxWarnings = 10;

void ingest_line(std::string_view line, std::size_t number, const VocabularyFilter& filter,
                 CorpusBuilder& builder, LoadReport& report) {
  if (line.empty()) return;
  ++report.rows_read;
  try {
    auto record = parse_ngram_row(line, number);
    if (filter.count(record.key) == 0) return;
    builder.add(record);
    ++report.rows_kept;
  } catch (const ParseError& e) {
    ++report.malformed;
    if (report.warnings.size() < kMaxWarnings) report.warnings.emplace_back(e.what());
  }
}

}  // namespace

bool is_corpus_tag(std::string_view tag) {
  return std::find(kCorpusTags.begin(), kCorpusTags.end(), tag) != kCorpusTags.end();
}

UnigramKey parse_unigram_key(std::string_view token) {
  auto cut = token.rfind('_');
  if (cut == std::string_view::npos || cut == 0) {
    throw std::invalid_argument(fmt::format("missing _POS suffix in '{}'", token));
  }
  auto pos = token.substr(cut + 1);
  if (!is_corpus_tag(pos)) {
    throw std::invalid_argument(fmt::format("unknown POS tag in '{}'", token));
  }
  return {std::string(token.substr(0, cut)), std::string(pos)};
}

ParseError::ParseError(std::size_t line_number, const std::string& what)
    : std::runtime_error(fmt::format("line {}: {}", line_number, what)),
      line_number_(line_number) {}

FrequencyRecord parse_ngram_row(std::string_view line, std::size_t line_number) {
  auto fields = split(line, '\t');
  if (fields.size() != 4) {
    throw ParseError(line_number, fmt::format("expected 4 tab-separated columns, got {}",
                                              fields.size()));
  }
  FrequencyRecord record;
  try {
    record.key = parse_unigram_key(fields[0]);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line_number, e.what());
  }
  std::int64_t year = 0;
  if (!parse_int(fields[1], year) || year < kFirstCorpusYear || year > kLastCorpusYear) {
    throw ParseError(line_number, fmt::format("bad year '{}'", fields[1]));
  }
  record.year = static_cast<int>(year);
  if (!parse_uint(fields[2], record.match_count)) {
    throw ParseError(line_number, fmt::format("bad match count '{}'", fields[2]));
  }
  if (!parse_uint(fields[3], record.volume_count)) {
    throw ParseError(line_number, fmt::format("bad volume count '{}'", fields[3]));
  }
  return record;
}

std::string format_ngram_row(const FrequencyRecord& r) {
  return fmt::format("{}\t{}\t{}\t{}", r.key.str(), r.year, r.match_count, r.volume_count);
}

const YearSeries& CorpusTable::series(const UnigramKey& key) const {
  static const YearSeries kEmpty;
  auto it = series_.find(key);
  return it == series_.end() ? kEmpty : it->second;
}

void CorpusBuilder::add(const FrequencyRecord& record) {
  auto& slot = rows_[record.key][record.year];
  slot.year = record.year;
  slot.match_count += record.match_count;
  slot.volume_count += record.volume_count;
}

void CorpusBuilder::merge(const CorpusBuilder& other) {
  for (const auto& [key, years] : other.rows_) {
    auto& mine = rows_[key];
    for (const auto& [year, counts] : years) {
      auto& slot = mine[year];
      slot.year = year;
      slot.match_count += counts.match_count;
      slot.volume_count += counts.volume_count;
    }
  }
}

CorpusTable CorpusBuilder::build() const {
  CorpusTable table;
  for (const auto& [key, years] : rows_) {
    auto& series = table.series_[key];
    series.reserve(years.size());
    for (const auto& [year, counts] : years) series.push_back(counts);
  }
  return table;
}

void LoadReport::merge(const LoadReport& other) {
  rows_read += other.rows_read;
  rows_kept += other.rows_kept;
  malformed += other.malformed;
  for (const auto& w : other.warnings) {
    if (warnings.size() >= kMaxWarnings) break;
    warnings.push_back(w);
  }
}

LoadResult load_unigram_series(std::istream& source, const VocabularyFilter& filter) {
  if (!source) throw DataError("unreadable unigram source");
  CorpusBuilder builder;
  LoadReport report;
  for_each_line(source, [&](std::string_view line, std::size_t number) {
    ingest_line(line, number, filter, builder, report);
  });
  return {builder.build(), std::move(report)};
}

LoadResult load_unigram_files(std::span<const std::filesystem::path> paths,
                              const VocabularyFilter& filter, std::size_t workers) {
  std::vector<CorpusBuilder> builders(paths.size());
  std::vector<LoadReport> reports(paths.size());
  parallel_for(paths.size(), workers, [&](std::size_t i) {
    for_each_file_line(paths[i], [&](std::string_view line, std::size_t number) {
      ingest_line(line, number, filter, builders[i], reports[i]);
    });
    for (auto& w : reports[i].warnings) w = paths[i].filename().string() + ": " + w;
  });
  CorpusBuilder merged;
  LoadReport report;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    merged.merge(builders[i]);
    report.merge(reports[i]);
  }
  return {merged.build(), std::move(report)};
}

void write_corpus(std::ostream& out, const CorpusTable& table) {
  for (const auto& [key, series] : table.all()) {
    for (const auto& yc : series) {
      out << format_ngram_row({key, yc.year, yc.match_count, yc.volume_count}) << '\n';
    }
  }
}

std::uint64_t period_count(const YearSeries& series, int center, int half_width) {
  const int lo = center - half_width;
  const int hi = center + half_width;
  auto it = std::lower_bound(series.begin(), series.end(), lo,
                             [](const YearCount& yc, int year) { return yc.year < year; });
  std::uint64_t total = 0;
  for (; it != series.end() && it->year <= hi; ++it) total += it->match_count;
  return total;
}

std::optional<int> birth_year(const YearSeries& series) {
  for (const auto& yc : series) {
    if (yc.match_count > 0) return yc.year;
  }
  return std::nullopt;
}

std::map<UnigramKey, int> birth_index(const CorpusTable& table) {
  std::map<UnigramKey, int> births;
  for (const auto& [key, series] : table.all()) {
    if (auto year = birth_year(series)) births.emplace(key, *year);
  }
  return births;
}

ShareTable synset_annual_shares(std::span<const YearSeries* const> members, int first_year,
                                int last_year) {
  if (members.size() < 2) throw std::invalid_argument("need at least two members");
  if (last_year < first_year) throw std::invalid_argument("empty year range");
  const auto n_years = static_cast<Eigen::Index>(last_year - first_year + 1);
  const auto n_members = static_cast<Eigen::Index>(members.size());

  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(n_years, n_members);
  for (Eigen::Index m = 0; m < n_members; ++m) {
    for (const auto& yc : *members[static_cast<std::size_t>(m)]) {
      if (yc.year < first_year || yc.year > last_year) continue;
      counts(yc.year - first_year, m) = static_cast<double>(yc.match_count);
    }
  }

  ShareTable table;
  table.years.resize(static_cast<std::size_t>(n_years));
  table.flagged.assign(static_cast<std::size_t>(n_years), false);
  table.shares = Eigen::MatrixXd::Zero(n_years, n_members);
  const Eigen::VectorXd totals = counts.rowwise().sum();
  for (Eigen::Index y = 0; y < n_years; ++y) {
    table.years[static_cast<std::size_t>(y)] = first_year + static_cast<int>(y);
    if (totals(y) == 0.0) {
      table.flagged[static_cast<std::size_t>(y)] = true;
      continue;
    }
    table.shares.row(y) = counts.row(y) / totals(y);
  }
  return table;
}

void write_shares_csv(std::ostream& out, std::span<const std::string> names,
                      const ShareTable& table) {
  out << "year";
  for (const auto& name : names) out << ',' << name;
  out << '\n';
  for (std::size_t y = 0; y < table.years.size(); ++y) {
    out << table.years[y];
    for (Eigen::Index m = 0; m < table.shares.cols(); ++m) {
      out << ',' << format_fixed(table.shares(static_cast<Eigen::Index>(y), m), 6);
    }
    out << '\n';
  }
}

}  // namespace wordevo
