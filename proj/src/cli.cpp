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

#include "wordevo/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "wordevo/experiments.hpp"
#include "wordevo/io.hpp"

namespace wordevo {

namespace fs = std::filesystem;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::vector<std::string> corpus;
  std::string lexicon;
  std::string catvar;
  std::string syllables;
  std::string out = "out";
  int cycle = 50;
  int half_width = 5;
  int anchor_year = 2000;
  int floor_year = 1800;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  std::size_t random_runs = 10;

  // Subcommand options.
  std::vector<int> cycles;
  std::string synset;
  std::string dataset;
  std::string features;
  std::string model;
  std::string predictions;
  std::size_t top_k = 12;
  std::size_t pair = 0;
  std::string years = "1800-2000";
  std::vector<std::string> exclude;
  std::string mode = "both";
};

void check_config(const RunConfig& c) {
  if (c.floor_year >= c.anchor_year) throw UsageError("--floor-year must be below --anchor-year");
  if (c.cycle < 1) throw UsageError("--cycle must be at least 1");
  if (c.half_width < 0) throw UsageError("--half-width must be non-negative");
  if (c.workers < 1) throw UsageError("--workers must be at least 1");
}

// Every path given on the command line or in the config must exist.
void check_paths(const RunConfig& c) {
  std::vector<std::pair<std::string, std::string>> given;
  for (const auto& p : c.corpus) given.emplace_back("--corpus", p);
  given.emplace_back("--lexicon", c.lexicon);
  given.emplace_back("--catvar", c.catvar);
  given.emplace_back("--syllables", c.syllables);
  given.emplace_back("--dataset", c.dataset);
  given.emplace_back("--features", c.features);
  given.emplace_back("--model", c.model);
  given.emplace_back("--predictions", c.predictions);
  for (const auto& [flag, path] : given) {
    if (!path.empty() && !fs::is_regular_file(path)) {
      throw DataError(fmt::format("{}: no such file '{}'", flag, path));
    }
  }
}

InputPaths input_paths(const RunConfig& c) {
  if (c.lexicon.empty()) throw UsageError("--lexicon is required");
  if (c.corpus.empty()) throw UsageError("at least one --corpus file is required");
  InputPaths p;
  for (const auto& s : c.corpus) p.corpus.emplace_back(s);
  p.lexicon = c.lexicon;
  if (!c.catvar.empty()) p.catvar = fs::path(c.catvar);
  if (!c.syllables.empty()) p.syllables = fs::path(c.syllables);
  return p;
}

ScheduleOptions schedule_options(const RunConfig& c) {
  ScheduleOptions s;
  s.anchor_year = c.anchor_year;
  s.floor_year = c.floor_year;
  return s;
}

std::vector<WindowPair> schedule(const RunConfig& c) {
  try {
    return schedule_windows(c.cycle, schedule_options(c));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

FeatureMask feature_mask(const RunConfig& c) {
  auto mask = FeatureMask::all();
  for (const auto& name : c.exclude) {
    try {
      mask = mask.without(parse_feature(name));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (mask.features().empty()) throw UsageError("--exclude removes every feature");
  return mask;
}

PipelineOptions pipeline_options(const RunConfig& c) {
  PipelineOptions o;
  o.half_width = c.half_width;
  o.workers = c.workers;
  o.seed = c.seed;
  o.random_runs = c.random_runs;
  o.mask = feature_mask(c);
  return o;
}

WindowPair selected_pair(const RunConfig& c) {
  auto pairs = schedule(c);
  if (c.pair >= pairs.size()) {
    throw UsageError(fmt::format("--pair {} out of range; cycle {} has {} pairs", c.pair, c.cycle,
                                 pairs.size()));
  }
  return pairs[c.pair];
}

template <typename Fn>
void write_text(const fs::path& path, Fn&& fn) {
  std::ostringstream s;
  fn(s);
  write_file_atomic(path, s.str());
}

void cmd_ingest(const RunConfig& c, std::ostream& out) {
  const auto paths = input_paths(c);
  auto inputs = load_inputs(paths, c.workers);
  const fs::path dir(c.out);
  write_text(dir / "corpus.tsv", [&](std::ostream& s) { write_corpus(s, inputs.corpus); });
  nlohmann::json report = {{"rows_read", inputs.load_report.rows_read},
                           {"rows_kept", inputs.load_report.rows_kept},
                           {"malformed", inputs.load_report.malformed},
                           {"warnings", inputs.load_report.warnings},
                           {"words", inputs.corpus.size()},
                           {"eligible_synsets", inputs.eligible.size()}};
  write_json_atomic(dir / "ingest.json", report);
  out << fmt::format("kept {} of {} rows for {} words\n", inputs.load_report.rows_kept,
                     inputs.load_report.rows_read, inputs.corpus.size());
}

void cmd_build_dataset(const RunConfig& c, std::ostream& out) {
  auto inputs = load_inputs(input_paths(c), c.workers);
  const auto pairs = schedule(c);
  std::vector<TimeWindow> windows;
  for (const auto& p : pairs) {
    for (const auto& w : {p.train, p.test}) {
      if (std::find(windows.begin(), windows.end(), w) == windows.end()) windows.push_back(w);
    }
  }
  const fs::path dir = fs::path(c.out) / "datasets" / std::to_string(c.cycle);
  for (const auto& w : windows) {
    auto ds = build_dataset(inputs.eligible, inputs.corpus, w,
                            BuildOptions{c.half_width, c.workers});
    write_dataset(dir / w.name(), ds);
    const auto s = ds.summary();
    out << fmt::format("{}: {} synsets, {} words, {:.1f}% changed\n", w.name(), s.synsets,
                       s.words, s.change_percent);
  }
  const auto periods = sampling_periods(c.cycle, schedule_options(c));
  const auto hist = change_statistics(inputs.eligible, inputs.corpus, periods, c.half_width);
  write_text(dir / "change_statistics.csv", [&](std::ostream& s) {
    s << "changes_at_least,synsets,percent\n";
    for (std::size_t k = 1; k <= hist.at_least.size(); ++k) {
      s << k << ',' << hist.at_least[k - 1] << ',' << format_fixed(hist.percent(k), 1) << '\n';
    }
  });
}

void cmd_extract_features(const RunConfig& c, std::ostream& out) {
  if (c.dataset.empty()) throw UsageError("--dataset is required");
  auto inputs = load_inputs(input_paths(c), c.workers);
  auto ds = read_dataset(c.dataset);
  auto vectors = extract_features(ds, inputs.context(), c.workers, true);
  const auto path = fs::path(c.out) / "features" / (ds.window.name() + ".tsv");
  write_text(path, [&](std::ostream& s) { write_features(s, vectors); });
  out << fmt::format("{} feature vectors -> {}\n", vectors.size(), path.string());
}

std::vector<FeatureVector> training_vectors(const RunConfig& c) {
  if (!c.features.empty()) return read_features_file(c.features);
  auto inputs = load_inputs(input_paths(c), c.workers);
  auto pair = selected_pair(c);
  auto ds = build_dataset(inputs.eligible, inputs.corpus, pair.train,
                          BuildOptions{c.half_width, c.workers});
  return extract_features(ds, inputs.context(), c.workers, true);
}

void cmd_train(const RunConfig& c, std::ostream& out) {
  const auto mask = feature_mask(c);
  auto vectors = training_vectors(c);
  auto model = NaiveBayesModel::fit(vectors, mask);
  const auto path = fs::path(c.out) / "model.json";
  write_json_atomic(path, model.to_json());
  out << fmt::format("fitted on {} losers and {} winners -> {}\n", model.class_count(0),
                     model.class_count(1), path.string());
}

NaiveBayesModel load_model(const std::string& path) {
  try {
    return NaiveBayesModel::from_json(nlohmann::json::parse(read_file(path)));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(fmt::format("{}: {}", path, e.what()));
  } catch (const std::invalid_argument& e) {
    throw DataError(fmt::format("{}: {}", path, e.what()));
  }
}

void cmd_predict(const RunConfig& c, std::ostream& out) {
  if (c.model.empty() || c.features.empty()) throw UsageError("--model and --features are required");
  auto model = load_model(c.model);
  auto vectors = read_features_file(c.features);
  std::vector<double> probs(vectors.size());
  parallel_for(vectors.size(), c.workers,
               [&](std::size_t i) { probs[i] = model.win_probability(vectors[i]); });
  const auto path = fs::path(c.out) / "predictions.tsv";
  write_text(path, [&](std::ostream& s) {
    s << "synset_id\tsense_id\tprobability\n";
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      s << vectors[i].synset_id << '\t' << vectors[i].sense.str() << '\t'
        << format_exact(probs[i]) << '\n';
    }
  });
  out << fmt::format("{} predictions -> {}\n", vectors.size(), path.string());
}

WordScores read_predictions(const std::string& path) {
  WordScores scores;
  for_each_file_line(path, [&](std::string_view line, std::size_t number) {
    if (number == 1 || line.empty()) return;
    auto f = split(line, '\t');
    double p = 0.0;
    if (f.size() != 3 || !parse_double(f[2], p)) {
      throw DataError(fmt::format("{} line {}: malformed prediction", path, number));
    }
    scores[{std::string(f[0]), std::string(f[1])}] = p;
  });
  return scores;
}

void write_nbcp_reports(const fs::path& dir, const NbcpResult& r) {
  write_json_atomic(dir / "report.json", r.report());
  write_text(dir / "outcomes.tsv",
             [&](std::ostream& s) { write_outcomes_tsv(s, r.evaluation.outcomes); });
  write_text(dir / "results.csv", [&](std::ostream& s) {
    s << "system,precision,recall,f_score\n";
    const auto& m = r.evaluation.metrics;
    s << "nbcp," << format_fixed(100 * m.precision, 1) << ',' << format_fixed(100 * m.recall, 1)
      << ',' << format_fixed(100 * m.f_score, 1) << '\n';
    const auto& b = r.random.mean;
    s << "random," << format_fixed(100 * b.precision, 1) << ',' << format_fixed(100 * b.recall, 1)
      << ',' << format_fixed(100 * b.f_score, 1) << '\n';
  });
}

void cmd_evaluate(const RunConfig& c, std::ostream& out) {
  if (!c.dataset.empty() || !c.predictions.empty()) {
    if (c.dataset.empty() || c.predictions.empty()) {
      throw UsageError("--dataset and --predictions go together");
    }
    auto ds = read_dataset(c.dataset);
    auto eval = evaluate(ds, read_predictions(c.predictions));
    PipelineOptions o = pipeline_options(c);
    const auto seeds = o.seeds();
    auto random = random_baseline(ds, seeds);
    auto report = evaluation_report(eval, ds.snapshots.size());
    report["window"] = ds.window.name();
    report["random"] = {{"seeds", random.seeds}, {"mean_percent", to_json(random.mean)}};
    const fs::path dir(c.out);
    write_json_atomic(dir / "evaluation.json", report);
    write_text(dir / "outcomes.tsv", [&](std::ostream& s) { write_outcomes_tsv(s, eval.outcomes); });
    out << fmt::format("F {:.1f} (random {:.1f})\n", 100 * eval.metrics.f_score,
                       100 * random.mean.f_score);
    return;
  }
  auto inputs = load_inputs(input_paths(c), c.workers);
  const auto options = pipeline_options(c);
  for (const auto& pair : schedule(c)) {
    auto r = run_nbcp(pair, inputs, options);
    write_nbcp_reports(report_dir(fs::path(c.out) / "reports", "nbcp", c.cycle, pair.test.name()),
                       r);
    out << fmt::format("{}: F {:.1f} (random {:.1f})\n", pair.test.name(),
                       100 * r.evaluation.metrics.f_score, 100 * r.random.mean.f_score);
  }
}

void cmd_ablate(const RunConfig& c, std::ostream& out) {
  std::vector<AblationMode> modes;
  if (c.mode == "both") {
    modes = {AblationMode::drop_one, AblationMode::single_only};
  } else {
    try {
      modes = {parse_ablation_mode(c.mode)};
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  auto inputs = load_inputs(input_paths(c), c.workers);
  const auto options = pipeline_options(c);
  for (const auto& pair : schedule(c)) {
    auto prepared = prepare_pair(pair, inputs, options);
    const auto dir = report_dir(fs::path(c.out) / "reports", "ablation", c.cycle, pair.test.name());
    nlohmann::json report = nlohmann::json::object();
    for (auto mode : modes) {
      auto results = run_ablation_suite(mode, prepared, options);
      report[to_string(mode)] = ablation_report(pair, mode, results);
      write_text(dir / (to_string(mode) + ".csv"),
                 [&](std::ostream& s) { write_ablation_csv(s, results); });
    }
    write_json_atomic(dir / "report.json", report);
    out << fmt::format("{}: ablation report -> {}\n", pair.test.name(), dir.string());
  }
}

void cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
  auto cycles = c.cycles.empty() ? std::vector<int>{30, 40, 50, 60} : c.cycles;
  auto inputs = load_inputs(input_paths(c), c.workers);
  auto result = run_cycle_sweep(cycles, inputs, pipeline_options(c), schedule_options(c));
  const auto reports = fs::path(c.out) / "reports";
  const auto root = reports / "sweep";
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const auto& run = result.runs[i];
    write_nbcp_reports(report_dir(reports, "sweep", result.rows[i].cycle, run.windows.test.name()),
                       run);
  }
  write_text(root / "sweep.csv", [&](std::ostream& s) { write_sweep_csv(s, result.rows); });
  write_json_atomic(root / "warnings.json", result.warnings);
  for (const auto& w : result.warnings) err << "warning: " << w << '\n';
  out << fmt::format("{} sweep rows -> {}\n", result.rows.size(), (root / "sweep.csv").string());
}

void write_interpretation(const fs::path& dir, const Interpretation& interp) {
  write_json_atomic(dir / "report.json", to_json(interp));
  write_text(dir / "scalar.csv",
             [&](std::ostream& s) { write_interpretation_csv(s, interp.scalar, false); });
  write_text(dir / "trigrams.csv",
             [&](std::ostream& s) { write_interpretation_csv(s, interp.trigrams, true); });
}

void cmd_interpret(const RunConfig& c, std::ostream& out) {
  fs::path dir;
  Interpretation interp;
  if (!c.model.empty()) {
    if (c.features.empty()) throw UsageError("--model needs the training --features");
    interp = interpret_model(load_model(c.model), read_features_file(c.features), c.top_k);
    dir = fs::path(c.out) / "interpretation";
  } else {
    const auto mask = feature_mask(c);
    auto vectors = training_vectors(c);
    auto model = NaiveBayesModel::fit(vectors, mask);
    interp = interpret_model(model, vectors, c.top_k);
    dir = report_dir(fs::path(c.out) / "reports", "interpret", c.cycle,
                     selected_pair(c).test.name());
  }
  write_interpretation(dir, interp);
  out << fmt::format("interpretation -> {}\n", dir.string());
}

std::pair<int, int> parse_years(const std::string& text) {
  auto f = split(text, '-');
  std::int64_t a = 0, b = 0;
  if (f.size() != 2 || !parse_int(f[0], a) || !parse_int(f[1], b) || a > b) {
    throw UsageError(fmt::format("--years expects FIRST-LAST, got '{}'", text));
  }
  return {static_cast<int>(a), static_cast<int>(b)};
}

void cmd_plot_data(const RunConfig& c, std::ostream& out) {
  if (c.synset.empty()) throw UsageError("--synset is required");
  const auto [first, last] = parse_years(c.years);
  const auto paths = input_paths(c);
  auto lexicon = load_lexicon_file(paths.lexicon);
  const Synset* synset = lexicon.find(c.synset);
  if (synset == nullptr) throw DataError(fmt::format("synset '{}' not in lexicon", c.synset));
  std::vector<Synset> one{*synset};
  auto loaded = load_unigram_files(paths.corpus, corpus_vocabulary(one), c.workers);
  std::vector<const YearSeries*> series;
  std::vector<std::string> names;
  for (const auto& m : synset->members) {
    series.push_back(&loaded.table.series(m.corpus_key()));
    names.push_back(m.lemma);
  }
  if (series.size() < 2) throw DataError(fmt::format("synset '{}' has one member", c.synset));
  auto shares = synset_annual_shares(series, first, last);
  const auto path = fs::path(c.out) / "plot" / (c.synset + ".csv");
  write_text(path, [&](std::ostream& s) { write_shares_csv(s, names, shares); });
  out << fmt::format("{} years -> {}\n", shares.years.size(), path.string());
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Predicts which synonym will lead its synset in the next period."};
  app.name("evocli");
  app.set_config("--config", "", "key = value file; command-line flags take precedence");
  app.require_subcommand(1, 1);

  RunConfig c;
  app.add_option("--corpus", c.corpus, "unigram TSV file, plain or .gz (repeatable)");
  app.add_option("--lexicon", c.lexicon, "synset TSV");
  app.add_option("--catvar", c.catvar, "categorial-variation clusters");
  app.add_option("--syllables", c.syllables, "syllable-count exceptions");
  app.add_option("--out", c.out, "output directory")->capture_default_str();
  app.add_option("--cycle", c.cycle, "years between periods")->capture_default_str();
  app.add_option("--half-width", c.half_width, "years on each side of a period center")
      ->capture_default_str();
  app.add_option("--anchor-year", c.anchor_year, "last period center")->capture_default_str();
  app.add_option("--floor-year", c.floor_year, "earliest allowed period center")->capture_default_str();
  app.add_option("--seed", c.seed, "random-baseline seed")->capture_default_str();
  app.add_option("--random-runs", c.random_runs, "random-baseline repetitions")
      ->capture_default_str();
  app.add_option("--workers", c.workers, "worker threads")->capture_default_str();

  auto* ingest = app.add_subcommand("ingest", "filter the corpus to the lexicon's vocabulary");
  auto* build = app.add_subcommand("build-dataset", "build every window of the schedule");
  auto* extract = app.add_subcommand("extract-features", "feature vectors of one dataset");
  extract->add_option("--dataset", c.dataset, "dataset TSV");
  auto* train = app.add_subcommand("train", "fit the naive Bayes model");
  train->add_option("--features", c.features, "training feature TSV");
  train->add_option("--pair", c.pair, "window pair index when building from the corpus");
  train->add_option("--exclude", c.exclude, "features to leave out")->delimiter(',');
  auto* predict = app.add_subcommand("predict", "win probabilities for a feature file");
  predict->add_option("--model", c.model);
  predict->add_option("--features", c.features);
  auto* evaluate_cmd = app.add_subcommand("evaluate", "score predictions or run every window");
  evaluate_cmd->add_option("--dataset", c.dataset);
  evaluate_cmd->add_option("--predictions", c.predictions);
  evaluate_cmd->add_option("--exclude", c.exclude)->delimiter(',');
  auto* ablate = app.add_subcommand("ablate", "feature ablation on every window");
  ablate->add_option("--mode", c.mode, "drop_one, single_only or both")->capture_default_str();
  auto* sweep = app.add_subcommand("sweep", "results across cycle lengths");
  sweep->add_option("--cycles", c.cycles, "comma-separated cycle lengths")->delimiter(',');
  sweep->add_option("--exclude", c.exclude)->delimiter(',');
  auto* interpret = app.add_subcommand("interpret", "per-class means and top trigrams");
  interpret->add_option("--model", c.model);
  interpret->add_option("--features", c.features);
  interpret->add_option("--pair", c.pair);
  interpret->add_option("--top-k", c.top_k)->capture_default_str();
  interpret->add_option("--exclude", c.exclude)->delimiter(',');
  auto* plot = app.add_subcommand("plot-data", "annual shares of one synset");
  plot->add_option("--synset", c.synset);
  plot->add_option("--years", c.years, "FIRST-LAST")->capture_default_str();
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::FileError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    check_config(c);
    check_paths(c);
    if (ingest->parsed()) cmd_ingest(c, out);
    else if (build->parsed()) cmd_build_dataset(c, out);
    else if (extract->parsed()) cmd_extract_features(c, out);
    else if (train->parsed()) cmd_train(c, out);
    else if (predict->parsed()) cmd_predict(c, out);
    else if (evaluate_cmd->parsed()) cmd_evaluate(c, out);
    else if (ablate->parsed()) cmd_ablate(c, out);
    else if (sweep->parsed()) cmd_sweep(c, out, err);
    else if (interpret->parsed()) cmd_interpret(c, out);
    else if (plot->parsed()) cmd_plot_data(c, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnfittableError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::runtime_error& e) {
    // DataError, ParseError, filesystem and JSON errors.
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace wordevo
