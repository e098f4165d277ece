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

#include "wordevo/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>
#include <fmt/format.h>

#include "wordevo/io.hpp"

namespace wordevo {

PipelineInputs load_inputs(const InputPaths& paths, std::size_t workers) {
  PipelineInputs in;
  in.lexicon = load_lexicon_file(paths.lexicon);
  in.eligible = eligible_synsets(in.lexicon);
  if (paths.catvar) in.catvar = load_catvar_file(*paths.catvar);
  if (paths.syllables) in.syllables = SyllableCounter::load_file(*paths.syllables);
  const auto vocabulary = corpus_vocabulary(in.eligible, &in.catvar);
  auto loaded = load_unigram_files(paths.corpus, vocabulary, workers);
  in.corpus = std::move(loaded.table);
  in.load_report = std::move(loaded.report);
  in.births = birth_index(in.corpus);
  return in;
}

std::vector<std::uint64_t> PipelineOptions::seeds() const {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < std::max<std::size_t>(random_runs, 1); ++i) out.push_back(seed + i);
  return out;
}

PreparedPair prepare_pair(const WindowPair& windows, const PipelineInputs& inputs,
                          const PipelineOptions& options) {
  PreparedPair p;
  p.windows = windows;
  const BuildOptions build{options.half_width, options.workers};
  p.train = build_dataset(inputs.eligible, inputs.corpus, windows.train, build);
  p.test = build_dataset(inputs.eligible, inputs.corpus, windows.test, build);
  const auto ctx = inputs.context();
  p.train_vectors = extract_features(p.train, ctx, options.workers, true);
  p.test_vectors = extract_features(p.test, ctx, options.workers, true);
  return p;
}

WordScores score_words(const NaiveBayesModel& model, std::span<const FeatureVector> vectors,
                       std::size_t workers) {
  std::vector<double> probs(vectors.size());
  parallel_for(vectors.size(), workers,
               [&](std::size_t i) { probs[i] = model.win_probability(vectors[i]); });
  WordScores scores;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    scores[{vectors[i].synset_id, vectors[i].sense.str()}] = probs[i];
  }
  return scores;
}

namespace {

nlohmann::json interval_json(const WilsonInterval& w) {
  return {{"low", percent_1dp(w.low)}, {"high", percent_1dp(w.high)}};
}

nlohmann::json baseline_json(const BaselineSummary& b, std::size_t n) {
  nlohmann::json j = {{"seeds", b.seeds},
                      {"mean_percent", to_json(b.mean)},
                      {"stddev_percent", to_json(b.stddev)}};
  if (n > 0) j["f_score_interval_percent"] = interval_json(wilson_interval(b.mean.f_score, n));
  return j;
}

double evaluate_mask(const PreparedPair& pair, FeatureMask mask, const PipelineOptions& options) {
  auto model = NaiveBayesModel::fit(pair.train_vectors, mask);
  return evaluate(pair.test, score_words(model, pair.test_vectors, options.workers)).metrics.f_score;
}

bool disjoint(const WilsonInterval& a, const WilsonInterval& b) {
  return a.high < b.low || b.high < a.low;
}

}  // namespace

nlohmann::json NbcpResult::report() const {
  nlohmann::json features = nlohmann::json::array();
  for (auto f : model.mask().features()) features.push_back(std::string(feature_name(f)));
  const auto n = test_summary.synsets;
  return {{"train_window", windows.train.name()},
          {"test_window", windows.test.name()},
          {"cycle", windows.test.cycle()},
          {"train", to_json(train_summary)},
          {"test", to_json(test_summary)},
          {"model",
           {{"features", features},
            {"class_count", {model.class_count(0), model.class_count(1)}},
            {"trigram_dimensions", model.trigram_index().size()}}},
          {"nbcp", evaluation_report(evaluation, n)},
          {"random", baseline_json(random, n)}};
}

NbcpResult run_nbcp(const PreparedPair& pair, const PipelineOptions& options) {
  NbcpResult r;
  r.windows = pair.windows;
  r.train_summary = pair.train.summary();
  r.test_summary = pair.test.summary();
  r.model = NaiveBayesModel::fit(pair.train_vectors, options.mask);
  r.evaluation = evaluate(pair.test, score_words(r.model, pair.test_vectors, options.workers));
  const auto seeds = options.seeds();
  r.random = random_baseline(pair.test, seeds);
  return r;
}

NbcpResult run_nbcp(const WindowPair& windows, const PipelineInputs& inputs,
                    const PipelineOptions& options) {
  return run_nbcp(prepare_pair(windows, inputs, options), options);
}

std::string to_string(AblationMode mode) {
  return mode == AblationMode::drop_one ? "drop_one" : "single_only";
}

AblationMode parse_ablation_mode(std::string_view text) {
  if (text == "drop_one") return AblationMode::drop_one;
  if (text == "single_only") return AblationMode::single_only;
  throw std::invalid_argument(fmt::format("unknown ablation mode '{}'", text));
}

AblationResult run_ablation(const AblationSpec& spec, const PreparedPair& pair,
                            double reference_f, const PipelineOptions& options) {
  AblationResult r;
  r.spec = spec;
  r.reference_f = reference_f;
  const auto mask = spec.mode == AblationMode::drop_one ? FeatureMask::all().without(spec.feature)
                                                        : FeatureMask::only(spec.feature);
  r.variant_f = evaluate_mask(pair, mask, options);
  r.delta = r.variant_f - r.reference_f;
  const auto n = pair.test.snapshots.size();
  if (n > 0) {
    r.reference_interval = wilson_interval(r.reference_f, n);
    r.variant_interval = wilson_interval(r.variant_f, n);
    r.significant = disjoint(r.reference_interval, r.variant_interval);
  }
  return r;
}

std::vector<AblationResult> run_ablation_suite(AblationMode mode, const PreparedPair& pair,
                                               const PipelineOptions& options) {
  double reference = 0.0;
  if (mode == AblationMode::drop_one) {
    reference = evaluate_mask(pair, FeatureMask::all(), options);
  } else {
    const auto seeds = options.seeds();
    reference = random_baseline(pair.test, seeds).mean.f_score;
  }
  std::vector<AblationResult> out;
  for (auto f : kAllFeatures) out.push_back(run_ablation({mode, f}, pair, reference, options));
  return out;
}

nlohmann::json ablation_report(const WindowPair& windows, AblationMode mode,
                               std::span<const AblationResult> results) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : results) {
    rows.push_back({{"feature", std::string(feature_name(r.spec.feature))},
                    {"reference_f_percent", percent_1dp(r.reference_f)},
                    {"variant_f_percent", percent_1dp(r.variant_f)},
                    {"delta_percent", std::round(r.delta * 10000.0) / 100.0},
                    {"reference_interval_percent", interval_json(r.reference_interval)},
                    {"variant_interval_percent", interval_json(r.variant_interval)},
                    {"significant", r.significant}});
  }
  return {{"train_window", windows.train.name()},
          {"test_window", windows.test.name()},
          {"mode", to_string(mode)},
          {"significance",
           "stand-in test: 95% Wilson intervals of the two F-scores do not overlap"},
          {"rows", rows}};
}

void write_ablation_csv(std::ostream& out, std::span<const AblationResult> results) {
  out << "feature,mode,reference_f,variant_f,delta,significant\n";
  for (const auto& r : results) {
    out << feature_name(r.spec.feature) << ',' << to_string(r.spec.mode) << ','
        << format_fixed(100.0 * r.reference_f, 2) << ',' << format_fixed(100.0 * r.variant_f, 2)
        << ',' << format_fixed(100.0 * r.delta, 2) << ',' << (r.significant ? 1 : 0) << '\n';
  }
}

SweepResult run_cycle_sweep(std::span<const int> cycles, const PipelineInputs& inputs,
                            const PipelineOptions& options, const ScheduleOptions& schedule) {
  SweepResult out;
  for (int cycle : cycles) {
    std::vector<WindowPair> pairs;
    try {
      pairs = schedule_windows(cycle, schedule);
    } catch (const std::invalid_argument& e) {
      out.warnings.push_back(fmt::format("cycle {} skipped: {}", cycle, e.what()));
      continue;
    }
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      try {
        auto run = run_nbcp(pairs[k], inputs, options);
        SweepRow row;
        row.cycle = cycle;
        row.test_index = k + 1;
        row.future_year = pairs[k].test.future;
        row.nbcp_f = run.evaluation.metrics.f_score;
        row.random_f = run.random.mean.f_score;
        row.percent_changed = run.test_summary.change_percent;
        row.synsets = run.test_summary.synsets;
        out.rows.push_back(row);
        out.runs.push_back(std::move(run));
      } catch (const UnfittableError& e) {
        out.warnings.push_back(
            fmt::format("cycle {} window {} skipped: {}", cycle, pairs[k].test.name(), e.what()));
      }
    }
  }
  return out;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "cycle,test,future,nbcp_f,random_f,percent_changed,synsets\n";
  for (const auto& r : rows) {
    out << r.cycle << ',' << r.test_index << ',' << r.future_year << ','
        << format_fixed(100.0 * r.nbcp_f, 1) << ',' << format_fixed(100.0 * r.random_f, 1) << ','
        << format_fixed(r.percent_changed, 1) << ',' << r.synsets << '\n';
  }
}

WelchResult welch_t_test(double mean1, double var1, std::size_t n1, double mean2, double var2,
                         std::size_t n2) {
  if (n1 < 2 || n2 < 2) throw std::invalid_argument("Welch test needs at least two samples each");
  if (var1 < 0.0 || var2 < 0.0) throw std::invalid_argument("negative variance");
  const double a = var1 / static_cast<double>(n1);
  const double b = var2 / static_cast<double>(n2);
  WelchResult r;
  if (a + b == 0.0) {
    r.df = static_cast<double>(n1 + n2 - 2);
    if (mean1 == mean2) return r;
    r.t = mean1 < mean2 ? -std::numeric_limits<double>::infinity()
                        : std::numeric_limits<double>::infinity();
    r.p = 0.0;
    r.significant = true;
    return r;
  }
  r.t = (mean1 - mean2) / std::sqrt(a + b);
  r.df = (a + b) * (a + b) /
         (a * a / static_cast<double>(n1 - 1) + b * b / static_cast<double>(n2 - 1));
  // Two-tailed Student tail: I_{df/(df+t^2)}(df/2, 1/2).
  r.p = boost::math::ibeta(r.df / 2.0, 0.5, r.df / (r.df + r.t * r.t));
  r.significant = r.p < 0.05;
  return r;
}

namespace {

InterpretationRow make_row(std::string dimension, const GaussianParams& loser,
                           const GaussianParams& winner, std::size_t n0, std::size_t n1) {
  InterpretationRow row;
  row.dimension = std::move(dimension);
  row.loser_mean = loser.mean;
  row.winner_mean = winner.mean;
  row.difference = winner.mean - loser.mean;
  if (n0 >= 2 && n1 >= 2) {
    row.test = welch_t_test(winner.mean, winner.variance, n1, loser.mean, loser.variance, n0);
    row.tested = true;
  }
  return row;
}

nlohmann::json row_json(const InterpretationRow& r, bool trigram) {
  nlohmann::json j = {{"dimension", r.dimension},
                      {"loser_mean", r.loser_mean},
                      {"winner_mean", r.winner_mean},
                      {"difference", r.difference}};
  if (trigram) j["suggests"] = r.difference > 0 ? "winner" : "loser";
  if (r.tested) {
    j["t"] = std::isfinite(r.test.t) ? nlohmann::json(r.test.t) : nlohmann::json(nullptr);
    j["df"] = r.test.df;
    j["p"] = r.test.p;
    j["significant"] = r.test.significant;
  } else {
    j["significant"] = false;
  }
  return j;
}

}  // namespace

Interpretation interpret_model(const NaiveBayesModel& model,
                               std::span<const FeatureVector> training_vectors,
                               std::size_t top_k) {
  std::array<std::size_t, 2> n{};
  for (const auto& v : training_vectors) {
    if (!v.target_class) throw DataError("training vectors must carry a class");
    ++n[static_cast<std::size_t>(*v.target_class)];
  }
  if (n[0] != model.class_count(0) || n[1] != model.class_count(1)) {
    throw DataError("training vectors do not match the model's class counts");
  }
  Interpretation out;
  const auto& scalars = model.scalar_features();
  for (std::size_t i = 0; i < scalars.size(); ++i) {
    out.scalar.push_back(make_row(std::string(feature_name(scalars[i])),
                                  model.scalar_params(i, 0), model.scalar_params(i, 1), n[0],
                                  n[1]));
  }
  const auto& index = model.trigram_index();
  std::vector<InterpretationRow> rows;
  rows.reserve(index.size());
  for (std::size_t d = 0; d < index.size(); ++d) {
    rows.push_back(
        make_row(index[d], model.trigram_params(d, 0), model.trigram_params(d, 1), n[0], n[1]));
  }
  std::sort(rows.begin(), rows.end(), [](const InterpretationRow& a, const InterpretationRow& b) {
    const double x = std::abs(a.difference), y = std::abs(b.difference);
    if (x != y) return x > y;
    return a.dimension < b.dimension;
  });
  if (rows.size() > top_k) rows.resize(top_k);
  out.trigrams = std::move(rows);
  return out;
}

nlohmann::json to_json(const Interpretation& interpretation) {
  nlohmann::json scalar = nlohmann::json::array();
  for (const auto& r : interpretation.scalar) scalar.push_back(row_json(r, false));
  nlohmann::json trigrams = nlohmann::json::array();
  for (const auto& r : interpretation.trigrams) trigrams.push_back(row_json(r, true));
  return {{"scalar", scalar}, {"trigrams", trigrams}};
}

void write_interpretation_csv(std::ostream& out, std::span<const InterpretationRow> rows,
                              bool trigram_table) {
  out << (trigram_table ? "trigram" : "feature") << ",loser_mean,winner_mean,difference,";
  out << (trigram_table ? "suggests," : "") << "significant\n";
  for (const auto& r : rows) {
    out << r.dimension << ',' << format_fixed(r.loser_mean, 4) << ','
        << format_fixed(r.winner_mean, 4) << ',' << format_fixed(r.difference, 4) << ',';
    if (trigram_table) out << (r.difference > 0 ? "winner," : "loser,");
    out << (r.tested && r.test.significant ? 1 : 0) << '\n';
  }
}

std::filesystem::path report_dir(const std::filesystem::path& root, std::string_view experiment,
                                 int cycle, std::string_view window) {
  return root / std::string(experiment) / std::to_string(cycle) / std::string(window);
}

void write_json_atomic(const std::filesystem::path& path, const nlohmann::json& j) {
  write_file_atomic(path, j.dump(2) + "\n");
}

}  // namespace wordevo
