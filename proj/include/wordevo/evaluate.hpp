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

#ifndef WORDEVO_EVALUATE_HPP_
#define WORDEVO_EVALUATE_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wordevo/dataset.hpp"

namespace wordevo {

struct ScoredSense {
  SenseId sense;
  double probability = 0.0;
};

struct WinnerChoice {
  SenseId sense;
  bool tie = false;  // broken by the smallest sense id
};

// Highest probability wins; equal probabilities go to the lexicographically
// smallest sense id.
WinnerChoice predict_synset_winner(std::span<const ScoredSense> scores);

enum class Outcome { tp, fp, fn, tn };
std::string to_string(Outcome outcome);

// changed := future != present, right := predicted == future.
// (changed, right) -> tp, (stable, wrong) -> fp, (changed, wrong) -> fn,
// (stable, right) -> tn.
Outcome classify_outcome(const SenseId& present_leader, const SenseId& future_leader,
                         const SenseId& predicted);

struct ContingencyCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  void add(Outcome outcome);
  std::size_t total() const { return tp + fp + fn + tn; }
  bool operator==(const ContingencyCounts&) const = default;
};

struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f_score = 0.0;
  bool operator==(const Metrics&) const = default;
};

// Division by zero yields zero in all three ratios.
Metrics metrics(const ContingencyCounts& counts);

struct WilsonInterval {
  double low = 0.0;
  double high = 0.0;
  double half_width() const { return 0.5 * (high - low); }
};

// Two-sided standard-normal quantile; 1.959964 at 95%.
double normal_quantile(double confidence);

// Throws std::invalid_argument unless 0 <= successes <= n and n > 0.
WilsonInterval wilson_interval(std::size_t successes, std::size_t n, double confidence = 0.95);
// Same interval for a proportion that need not come from integer counts.
WilsonInterval wilson_interval(double proportion, std::size_t n, double confidence = 0.95);

struct SynsetOutcome {
  std::string synset_id;
  SenseId present_leader;
  SenseId future_leader;
  SenseId predicted;
  double predicted_probability = 0.0;
  Outcome outcome = Outcome::tn;
  bool tie = false;
};

struct Evaluation {
  ContingencyCounts counts;
  Metrics metrics;
  std::vector<SynsetOutcome> outcomes;
};

// Per-word win probabilities keyed by (synset_id, sense id).
using WordScores = std::map<std::pair<std::string, std::string>, double>;

// Scores every synset of the dataset; throws DataError when a word has no
// probability.
Evaluation evaluate(const Dataset& dataset, const WordScores& scores);

// Uniform [0, 1) draw derived from (seed, synset, sense) alone, so the
// value does not depend on visiting order.
double uniform_draw(std::uint64_t seed, std::string_view synset_id, std::string_view sense_id);

// Each word gets an independent uniform "probability".
Evaluation random_baseline(const Dataset& dataset, std::uint64_t seed);

struct BaselineSummary {
  std::vector<std::uint64_t> seeds;
  Metrics mean;
  Metrics stddev;  // sample standard deviation; zero for a single seed
};

BaselineSummary random_baseline(const Dataset& dataset, std::span<const std::uint64_t> seeds);

// Percentages rounded to one decimal, as in printed result tables.
double percent_1dp(double fraction);

nlohmann::json to_json(const ContingencyCounts& counts);
nlohmann::json to_json(const Metrics& m);
nlohmann::json evaluation_report(const Evaluation& evaluation, std::size_t n,
                                 double confidence = 0.95);
void write_outcomes_tsv(std::ostream& out, std::span<const SynsetOutcome> outcomes);

}  // namespace wordevo

#endif  // WORDEVO_EVALUATE_HPP_
