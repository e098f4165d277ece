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

#ifndef WORDEVO_DATASET_HPP_
#define WORDEVO_DATASET_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "wordevo/corpus.hpp"
#include "wordevo/lexicon.hpp"

namespace wordevo {

// Three equally spaced sampling periods.
struct TimeWindow {
  int past = 0;
  int present = 0;
  int future = 0;

  // Throws std::invalid_argument unless past < present < future with equal
  // spacing.
  static TimeWindow make(int past, int present, int future);

  int cycle() const { return present - past; }
  std::string name() const;  // "1850_1900_1950"
  bool operator==(const TimeWindow&) const = default;
};

struct WindowPair {
  TimeWindow train;
  TimeWindow test;
  bool operator==(const WindowPair&) const = default;
};

struct ScheduleOptions {
  int anchor_year = 2000;
  int floor_year = 1800;
  int min_cycle = 30;
  int max_cycle = 60;
};

// anchor, anchor - cycle, ... down to the smallest value >= floor, in
// chronological order.
std::vector<int> sampling_periods(int cycle, const ScheduleOptions& options = {});

// Pair k trains on periods [k, k+1, k+2] and tests on [k+1, k+2, k+3].
// Throws std::invalid_argument for an out-of-range cycle or fewer than four
// periods.
std::vector<WindowPair> schedule_windows(int cycle, const ScheduleOptions& options = {});

struct MemberCounts {
  SenseId sense;
  std::uint64_t past = 0;
  std::uint64_t present = 0;
  std::uint64_t future = 0;
};

// One synset in one window, after the removal rules. Exactly one member
// leads the present and exactly one leads the future.
struct SynsetSnapshot {
  std::string synset_id;
  char pos = 'n';
  std::vector<MemberCounts> members;
  std::size_t present_leader = 0;
  std::size_t future_leader = 0;

  bool changed() const { return present_leader != future_leader; }
  std::vector<std::string> lemmas() const;
};

enum class RemovalReason { dead_word, tie };
std::string to_string(RemovalReason reason);

using SnapshotOutcome = std::variant<SynsetSnapshot, RemovalReason>;

SnapshotOutcome build_snapshot(const Synset& synset, const CorpusTable& corpus,
                               const TimeWindow& window, int half_width = 5);

// Index of the unique maximum, or nullopt when two or more members tie.
std::optional<std::size_t> unique_argmax(std::span<const std::uint64_t> values);

struct DatasetSummary {
  std::size_t synsets = 0;
  std::size_t words = 0;
  double words_per_synset = 0.0;
  double change_percent = 0.0;
};

struct Dataset {
  TimeWindow window;
  int half_width = 5;
  std::vector<SynsetSnapshot> snapshots;
  std::map<std::string, std::size_t> removal_log;

  DatasetSummary summary() const;
};

struct BuildOptions {
  int half_width = 5;
  std::size_t workers = 1;
};

Dataset build_dataset(std::span<const Synset> synsets, const CorpusTable& corpus,
                      const TimeWindow& window, const BuildOptions& options = {});

// Cumulative counts of leadership changes across consecutive periods.
// at_least[k-1] is the number of synsets with >= k changes.
struct ChangeHistogram {
  std::vector<int> periods;
  std::size_t synsets = 0;
  std::vector<std::size_t> at_least;

  double percent(std::size_t k) const;
};

// Leader of each period under the inherit-on-zero / keep-on-tie rules.
// Entries are nullopt until the synset is first attested.
std::vector<std::optional<std::size_t>> period_leaders(const Synset& synset,
                                                       const CorpusTable& corpus,
                                                       std::span<const int> periods,
                                                       int half_width = 5);

ChangeHistogram change_statistics(std::span<const Synset> synsets, const CorpusTable& corpus,
                                  std::span<const int> periods, int half_width = 5);

// `<stem>.tsv` holds synset_id, sense_id, past, present, future per word;
// `<stem>.json` holds window, summary and removal log.
void write_dataset(const std::filesystem::path& stem, const Dataset& dataset);
Dataset read_dataset(const std::filesystem::path& tsv_path);

nlohmann::json to_json(const DatasetSummary& summary);
nlohmann::json dataset_sidecar(const Dataset& dataset);

}  // namespace wordevo

#endif  // WORDEVO_DATASET_HPP_
