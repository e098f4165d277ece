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

#include "wordevo/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "wordevo/io.hpp"

namespace wordevo {

TimeWindow TimeWindow::make(int past, int present, int future) {
  if (!(past < present && present < future) || future - present != present - past) {
    throw std::invalid_argument(
        fmt::format("bad window {}/{}/{}: periods must be increasing and equally spaced", past,
                    present, future));
  }
  return {past, present, future};
}

std::string TimeWindow::name() const { return fmt::format("{}_{}_{}", past, present, future); }

std::vector<int> sampling_periods(int cycle, const ScheduleOptions& options) {
  if (cycle < 1) throw std::invalid_argument("cycle must be positive");
  std::vector<int> periods;
  for (int year = options.anchor_year; year >= options.floor_year; year -= cycle) {
    periods.push_back(year);
  }
  std::reverse(periods.begin(), periods.end());
  return periods;
}

std::vector<WindowPair> schedule_windows(int cycle, const ScheduleOptions& options) {
  if (cycle < options.min_cycle || cycle > options.max_cycle) {
    throw std::invalid_argument(fmt::format("cycle {} outside [{}, {}]", cycle,
                                            options.min_cycle, options.max_cycle));
  }
  const auto periods = sampling_periods(cycle, options);
  if (periods.size() < 4) {
    throw std::invalid_argument(fmt::format(
        "cycle {} yields {} periods; one train/test pair needs 4", cycle, periods.size()));
  }
  std::vector<WindowPair> pairs;
  for (std::size_t k = 0; k + 3 < periods.size(); ++k) {
    pairs.push_back({TimeWindow::make(periods[k], periods[k + 1], periods[k + 2]),
                     TimeWindow::make(periods[k + 1], periods[k + 2], periods[k + 3])});
  }
  return pairs;
}

std::vector<std::string> SynsetSnapshot::lemmas() const {
  std::vector<std::string> out;
  out.reserve(members.size());
  for (const auto& m : members) out.push_back(m.sense.lemma);
  return out;
}

std::string to_string(RemovalReason reason) {
  switch (reason) {
    case RemovalReason::dead_word: return "dead_word";
    case RemovalReason::tie: return "tie";
  }
  return "unknown";
}

std::optional<std::size_t> unique_argmax(std::span<const std::uint64_t> values) {
  if (values.empty()) return std::nullopt;
  std::size_t best = 0;
  bool tied = false;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) {
      best = i;
      tied = false;
    } else if (values[i] == values[best]) {
      tied = true;
    }
  }
  if (tied) return std::nullopt;
  return best;
}

namespace {

// Leaders for snapshots read back from disk or built fresh.
SnapshotOutcome finish_snapshot(SynsetSnapshot snap) {
  std::vector<std::uint64_t> present, future;
  for (const auto& m : snap.members) {
    if (m.present == 0) return RemovalReason::dead_word;
    present.push_back(m.present);
    future.push_back(m.future);
  }
  auto p = unique_argmax(present);
  auto f = unique_argmax(future);
  if (!p || !f) return RemovalReason::tie;
  snap.present_leader = *p;
  snap.future_leader = *f;
  return snap;
}

}  // namespace

SnapshotOutcome build_snapshot(const Synset& synset, const CorpusTable& corpus,
                               const TimeWindow& window, int half_width) {
  SynsetSnapshot snap;
  snap.synset_id = synset.id;
  snap.pos = synset.pos;
  for (const auto& sense : synset.members) {
    const auto& series = corpus.series(sense.corpus_key());
    snap.members.push_back({sense, period_count(series, window.past, half_width),
                            period_count(series, window.present, half_width),
                            period_count(series, window.future, half_width)});
  }
  return finish_snapshot(std::move(snap));
}

DatasetSummary Dataset::summary() const {
  DatasetSummary s;
  s.synsets = snapshots.size();
  std::size_t changed = 0;
  for (const auto& snap : snapshots) {
    s.words += snap.members.size();
    if (snap.changed()) ++changed;
  }
  if (s.synsets > 0) {
    s.words_per_synset = static_cast<double>(s.words) / static_cast<double>(s.synsets);
    s.change_percent = 100.0 * static_cast<double>(changed) / static_cast<double>(s.synsets);
  }
  return s;
}

Dataset build_dataset(std::span<const Synset> synsets, const CorpusTable& corpus,
                      const TimeWindow& window, const BuildOptions& options) {
  std::vector<std::optional<SnapshotOutcome>> outcomes(synsets.size());
  parallel_for(synsets.size(), options.workers, [&](std::size_t i) {
    outcomes[i] = build_snapshot(synsets[i], corpus, window, options.half_width);
  });
  Dataset dataset;
  dataset.window = window;
  dataset.half_width = options.half_width;
  for (auto& outcome : outcomes) {
    if (auto* snap = std::get_if<SynsetSnapshot>(&*outcome)) {
      dataset.snapshots.push_back(std::move(*snap));
    } else {
      ++dataset.removal_log[to_string(std::get<RemovalReason>(*outcome))];
    }
  }
  return dataset;
}

double ChangeHistogram::percent(std::size_t k) const {
  if (synsets == 0 || k == 0 || k > at_least.size()) return 0.0;
  return 100.0 * static_cast<double>(at_least[k - 1]) / static_cast<double>(synsets);
}

std::vector<std::optional<std::size_t>> period_leaders(const Synset& synset,
                                                       const CorpusTable& corpus,
                                                       std::span<const int> periods,
                                                       int half_width) {
  std::vector<std::optional<std::size_t>> leaders;
  std::optional<std::size_t> current;
  for (int period : periods) {
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;
    for (const auto& m : synset.members) {
      counts.push_back(period_count(corpus.series(m.corpus_key()), period, half_width));
      total += counts.back();
    }
    if (total > 0) {
      const auto top = *std::max_element(counts.begin(), counts.end());
      if (!(current && counts[*current] == top)) {
        std::optional<std::size_t> pick;
        for (std::size_t i = 0; i < counts.size(); ++i) {
          if (counts[i] != top) continue;
          if (!pick || synset.members[i].lemma < synset.members[*pick].lemma) pick = i;
        }
        current = pick;
      }
    }
    leaders.push_back(current);
  }
  return leaders;
}

ChangeHistogram change_statistics(std::span<const Synset> synsets, const CorpusTable& corpus,
                                  std::span<const int> periods, int half_width) {
  if (periods.size() < 2) throw std::invalid_argument("need at least two periods");
  ChangeHistogram hist;
  hist.periods.assign(periods.begin(), periods.end());
  hist.synsets = synsets.size();
  hist.at_least.assign(periods.size() - 1, 0);
  for (const auto& synset : synsets) {
    auto leaders = period_leaders(synset, corpus, periods, half_width);
    std::size_t changes = 0;
    for (std::size_t i = 1; i < leaders.size(); ++i) {
      if (leaders[i - 1] && leaders[i] && *leaders[i - 1] != *leaders[i]) ++changes;
    }
    for (std::size_t k = 1; k <= changes; ++k) ++hist.at_least[k - 1];
  }
  return hist;
}

nlohmann::json to_json(const DatasetSummary& s) {
  return {{"synsets", s.synsets},
          {"words", s.words},
          {"words_per_synset", s.words_per_synset},
          {"change_percent", s.change_percent}};
}

nlohmann::json dataset_sidecar(const Dataset& dataset) {
  nlohmann::json removal = nlohmann::json::object();
  for (const auto& [reason, count] : dataset.removal_log) removal[reason] = count;
  return {{"window",
           {{"past", dataset.window.past},
            {"present", dataset.window.present},
            {"future", dataset.window.future}}},
          {"half_width", dataset.half_width},
          {"summary", to_json(dataset.summary())},
          {"removal_log", removal}};
}

void write_dataset(const std::filesystem::path& stem, const Dataset& dataset) {
  std::ostringstream tsv;
  tsv << "synset_id\tsense_id\tpast\tpresent\tfuture\n";
  for (const auto& snap : dataset.snapshots) {
    for (const auto& m : snap.members) {
      tsv << snap.synset_id << '\t' << m.sense.str() << '\t' << m.past << '\t' << m.present
          << '\t' << m.future << '\n';
    }
  }
  auto tsv_path = stem;
  tsv_path += ".tsv";
  auto json_path = stem;
  json_path += ".json";
  write_file_atomic(tsv_path, tsv.str());
  write_file_atomic(json_path, dataset_sidecar(dataset).dump(2) + "\n");
}

Dataset read_dataset(const std::filesystem::path& tsv_path) {
  auto json_path = tsv_path;
  json_path.replace_extension(".json");
  Dataset dataset;
  try {
    auto meta = nlohmann::json::parse(read_file(json_path));
    const auto& w = meta.at("window");
    dataset.window = TimeWindow::make(w.at("past"), w.at("present"), w.at("future"));
    dataset.half_width = meta.value("half_width", 5);
    for (const auto& [reason, count] : meta.at("removal_log").items()) {
      dataset.removal_log[reason] = count.get<std::size_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(fmt::format("bad dataset sidecar '{}': {}", json_path.string(), e.what()));
  } catch (const std::invalid_argument& e) {
    throw DataError(fmt::format("bad dataset sidecar '{}': {}", json_path.string(), e.what()));
  }

  std::vector<SynsetSnapshot> pending;
  for_each_file_line(tsv_path, [&](std::string_view line, std::size_t number) {
    if (number == 1 || line.empty()) return;
    auto f = split(line, '\t');
    MemberCounts m;
    bool ok = f.size() == 5 && parse_uint(f[2], m.past) && parse_uint(f[3], m.present) &&
              parse_uint(f[4], m.future);
    try {
      if (ok) m.sense = SenseId::parse(f[1]);
    } catch (const std::invalid_argument&) {
      ok = false;
    }
    if (!ok) throw DataError(fmt::format("{}:{}: malformed dataset row", tsv_path.string(), number));
    if (pending.empty() || pending.back().synset_id != f[0]) {
      pending.push_back({std::string(f[0]), m.sense.pos, {}, 0, 0});
    }
    pending.back().members.push_back(std::move(m));
  });
  for (auto& snap : pending) {
    auto outcome = finish_snapshot(std::move(snap));
    if (auto* s = std::get_if<SynsetSnapshot>(&outcome)) {
      dataset.snapshots.push_back(std::move(*s));
    } else {
      throw DataError(fmt::format("{}: snapshot violates the {} rule", tsv_path.string(),
                                  to_string(std::get<RemovalReason>(outcome))));
    }
  }
  return dataset;
}

}  // namespace wordevo
