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

#ifndef WORDEVO_CORPUS_HPP_
#define WORDEVO_CORPUS_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace wordevo {

// Earliest and latest years a unigram row may carry.
inline constexpr int kFirstCorpusYear = 1500;
inline constexpr int kLastCorpusYear = 2008;

// Part-of-speech tags the unigram files attach as a `_TAG` suffix.
bool is_corpus_tag(std::string_view tag);

struct UnigramKey {
  std::string lemma;
  std::string pos;

  std::string str() const { return lemma + "_" + pos; }
  auto operator<=>(const UnigramKey&) const = default;
};

// Parses "hunger_NOUN". Throws std::invalid_argument when the suffix is
// missing or not a known tag.
UnigramKey parse_unigram_key(std::string_view token);

struct FrequencyRecord {
  UnigramKey key;
  int year = 0;
  std::uint64_t match_count = 0;
  std::uint64_t volume_count = 0;

  bool operator==(const FrequencyRecord&) const = default;
};

// A single malformed row. Recoverable: loaders count and skip these.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line_number, const std::string& what);
  std::size_t line_number() const { return line_number_; }

 private:
  std::size_t line_number_;
};

// "rapt_ADJ\t1900\t1759\t1201" -> {(rapt, ADJ), 1900, 1759, 1201}.
FrequencyRecord parse_ngram_row(std::string_view line, std::size_t line_number = 0);
std::string format_ngram_row(const FrequencyRecord& record);

struct YearCount {
  int year = 0;
  std::uint64_t match_count = 0;
  std::uint64_t volume_count = 0;

  bool operator==(const YearCount&) const = default;
};

// Sorted by year, years strictly increasing.
using YearSeries = std::vector<YearCount>;

// Immutable per-word annual counts. Words that never appear have an
// implicit empty series.
class CorpusTable {
 public:
  CorpusTable() = default;

  const YearSeries& series(const UnigramKey& key) const;
  bool contains(const UnigramKey& key) const { return series_.count(key) > 0; }
  std::size_t size() const { return series_.size(); }
  bool empty() const { return series_.empty(); }
  const std::map<UnigramKey, YearSeries>& all() const { return series_; }

  bool operator==(const CorpusTable&) const = default;

 private:
  friend class CorpusBuilder;
  std::map<UnigramKey, YearSeries> series_;
};

// Accumulates rows; duplicate (key, year) rows are summed. Aggregation is
// integer addition, so the finished table does not depend on row order.
class CorpusBuilder {
 public:
  void add(const FrequencyRecord& record);
  void merge(const CorpusBuilder& other);
  CorpusTable build() const;

 private:
  std::map<UnigramKey, std::map<int, YearCount>> rows_;
};

struct LoadReport {
  std::size_t rows_read = 0;
  std::size_t rows_kept = 0;
  std::size_t malformed = 0;
  std::vector<std::string> warnings;  // first few malformed rows

  void merge(const LoadReport& other);
};

struct LoadResult {
  CorpusTable table;
  LoadReport report;
};

using VocabularyFilter = std::set<UnigramKey>;

// Keeps only rows whose key is in `filter`.
LoadResult load_unigram_series(std::istream& source, const VocabularyFilter& filter);

// Loads several shards (plain or .gz) on up to `workers` threads. The table
// is identical for any worker count.
LoadResult load_unigram_files(std::span<const std::filesystem::path> paths,
                              const VocabularyFilter& filter, std::size_t workers = 1);

// Writes the table back out in unigram-row form, sorted by key then year.
void write_corpus(std::ostream& out, const CorpusTable& table);

// Sum of match counts over [center - half_width, center + half_width].
std::uint64_t period_count(const YearSeries& series, int center, int half_width = 5);

// First year with a nonzero count; nullopt for an all-zero series.
std::optional<int> birth_year(const YearSeries& series);

// Birth year of every word in the table that has one.
std::map<UnigramKey, int> birth_index(const CorpusTable& table);

// Annual relative frequencies of a group of words. Row i of `shares`
// belongs to years[i]; a year where every member is zero is flagged and
// its row left at zero.
struct ShareTable {
  std::vector<int> years;
  Eigen::MatrixXd shares;
  std::vector<bool> flagged;
};

ShareTable synset_annual_shares(std::span<const YearSeries* const> members,
                                int first_year, int last_year);

// CSV `year,word1,word2,...` with six decimals.
void write_shares_csv(std::ostream& out, std::span<const std::string> names,
                      const ShareTable& table);

}  // namespace wordevo

#endif  // WORDEVO_CORPUS_HPP_
