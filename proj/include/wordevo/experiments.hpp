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

#ifndef WORDEVO_EXPERIMENTS_HPP_
#define WORDEVO_EXPERIMENTS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wordevo/corpus.hpp"
#include "wordevo/dataset.hpp"
#include "wordevo/evaluate.hpp"
#include "wordevo/features.hpp"
#include "wordevo/lexicon.hpp"
#include "wordevo/model.hpp"

namespace wordevo {

struct InputPaths {
  std::vector<std::filesystem::path> corpus;
  std::filesystem::path lexicon;
  std::optional<std::filesystem::path> catvar;
  std::optional<std::filesystem::path> syllables;
};

// Everything a run needs, loaded once.
struct PipelineInputs {
  Lexicon lexicon;
  std::vector<Synset> eligible;
  CatVarClusters catvar;
  SyllableCounter syllables;
  CorpusTable corpus;
  BirthIndex births;
  LoadReport load_report;

  FeatureContext context() const { return {&catvar, &births, &syllables}; }
};

// Reads the lexicon first so that only the vocabulary of eligible synsets
// (and their categorial variations) is kept from the corpus.
PipelineInputs load_inputs(const InputPaths& paths, std::size_t workers = 1);

struct PipelineOptions {
  int half_width = 5;
  std::size_t workers = 1;
  std::uint64_t seed = 1;
  std::size_t random_runs = 10;
  FeatureMask mask = FeatureMask::all();

  std::vector<std::uint64_t> seeds() const;
};

// Datasets and feature vectors of one train/test pair.
struct PreparedPair {
  WindowPair windows;
  Dataset train;
  Dataset test;
  std::vector<FeatureVector> train_vectors;
  std::vector<FeatureVector> test_vectors;
};

PreparedPair prepare_pair(const WindowPair& windows, const PipelineInputs& inputs,
                          const PipelineOptions& options);

// Win probability of every test word.
WordScores score_words(const NaiveBayesModel& model, std::span<const FeatureVector> vectors,
                       std::size_t workers = 1);

struct NbcpResult {
  WindowPair windows;
  DatasetSummary train_summary;
  DatasetSummary test_summary;
  NaiveBayesModel model;
  Evaluation evaluation;
  BaselineSummary random;

  nlohmann::json report() const;
};

// Fits on the training window, where futures are visible, and evaluates
// on the test window. UnfittableError propagates.
NbcpResult run_nbcp(const PreparedPair& pair, const PipelineOptions& options);
NbcpResult run_nbcp(const WindowPair& windows, const PipelineInputs& inputs,
                    const PipelineOptions& options);

enum class AblationMode { drop_one, single_only };
std::string to_string(AblationMode mode);
AblationMode parse_ablation_mode(std::string_view text);

struct AblationSpec {
  AblationMode mode = AblationMode::drop_one;
  Feature feature = Feature::normalized_length;
};

struct AblationResult {
  AblationSpec spec;
  double reference_f = 0.0;  // all features (drop_one) or random (single_only)
  double variant_f = 0.0;
  double delta = 0.0;        // variant - reference
  WilsonInterval reference_interval;
  WilsonInterval variant_interval;
  bool significant = false;  // the two 95% intervals do not overlap
};

// Fits the variant mask on the pair; `reference_f` is F of the full model
// for drop_one and the mean random F for single_only.
AblationResult run_ablation(const AblationSpec& spec, const PreparedPair& pair,
                            double reference_f, const PipelineOptions& options);

// All eight features in one mode, with the reference computed once.
std::vector<AblationResult> run_ablation_suite(AblationMode mode, const PreparedPair& pair,
                                               const PipelineOptions& options);

nlohmann::json ablation_report(const WindowPair& windows, AblationMode mode,
                               std::span<const AblationResult> results);
void write_ablation_csv(std::ostream& out, std::span<const AblationResult> results);

struct SweepRow {
  int cycle = 0;
  std::size_t test_index = 0;
  int future_year = 0;
  double nbcp_f = 0.0;
  double random_f = 0.0;
  double percent_changed = 0.0;
  std::size_t synsets = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<NbcpResult> runs;  // parallel to rows
  std::vector<std::string> warnings;
};

// One row per cycle and test window, keyed by the future period.
// Unschedulable cycles and unfittable windows are skipped with a warning.
SweepResult run_cycle_sweep(std::span<const int> cycles, const PipelineInputs& inputs,
                            const PipelineOptions& options,
                            const ScheduleOptions& schedule = {});

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;
  bool significant = false;  // two-tailed, 95%
};

// Unpaired two-sample test without the equal-variance assumption. Throws
// std::invalid_argument when n1 or n2 is below 2 or a variance is negative.
WelchResult welch_t_test(double mean1, double var1, std::size_t n1, double mean2, double var2,
                         std::size_t n2);

struct InterpretationRow {
  std::string dimension;
  double loser_mean = 0.0;
  double winner_mean = 0.0;
  double difference = 0.0;  // winner - loser
  WelchResult test;
  bool tested = false;      // false when a class has fewer than two vectors
};

struct Interpretation {
  std::vector<InterpretationRow> scalar;
  std::vector<InterpretationRow> trigrams;  // by decreasing |difference|
};

// Per-class sample sizes come from the training vectors, which must carry
// classes and match the model's class counts.
Interpretation interpret_model(const NaiveBayesModel& model,
                               std::span<const FeatureVector> training_vectors,
                               std::size_t top_k = 12);

nlohmann::json to_json(const Interpretation& interpretation);
void write_interpretation_csv(std::ostream& out, std::span<const InterpretationRow> rows,
                              bool trigram_table);

// <root>/<experiment>/<cycle>/<window>
std::filesystem::path report_dir(const std::filesystem::path& root, std::string_view experiment,
                                 int cycle, std::string_view window);
// Pretty-printed JSON with a trailing newline, written atomically.
void write_json_atomic(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace wordevo

#endif  // WORDEVO_EXPERIMENTS_HPP_
