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

// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <fmt/format.h>

#include "support.hpp"
#include "wordevo/io.hpp"

using namespace wordevo;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

const FeatureVector* find_vector(const std::vector<FeatureVector>& vs, const std::string& lemma) {
  for (const auto& v : vs) {
    if (v.sense.lemma == lemma) return &v;
  }
  return nullptr;
}

Verdict reference_feature_vectors() {
  Verdict o;
  const auto start = Clock::now();
  auto inputs = load_inputs(wordevo::testing::rapture_paths());
  const auto test1 = schedule_windows(50)[0].test;
  auto ds = build_dataset(inputs.eligible, inputs.corpus, test1);
  auto vs = extract_features(ds, inputs.context());
  const double elapsed = seconds_since(start);
  const auto* r = find_vector(vs, "rapturous");
  const auto* e = find_vector(vs, "ecstatic");
  if (r == nullptr || e == nullptr) {
    o.require(false, "rapturous/ecstatic missing from the Test1 dataset");
    return o;
  }
  auto check = [&](const FeatureVector& v, double len, int syl, TrigramSet uniq, double shared,
                   int cv, double growth, double extrap, int age, int cls) {
    const auto& w = v.sense.lemma;
    o.require(near(v.normalized_length, len, 1e-9), w + " normalized_length");
    o.require(v.syllable_count == syl, w + " syllable_count");
    o.require(v.unique_ngrams == uniq, w + " unique_ngrams");
    o.require(near(v.shared_ngrams, shared, 0.001), w + " shared_ngrams");
    o.require(v.categorial_variations == cv, w + " categorial_variations");
    o.require(near(v.relative_growth, growth, 0.001), w + " relative_growth");
    o.require(near(v.linear_extrapolation, extrap, 0.001), w + " linear_extrapolation");
    o.require(v.present_age == age, w + " present_age");
    o.require(v.target_class == cls, w + " target_class");
  };
  check(*r, 0.900, 3, {"uro", "rou", "ous", "us|"}, 0.556, 3, -0.122, 0.119, 258, 0);
  check(*e, 0.800, 3, {"|ec", "ecs", "cst", "sta", "tat", "ati", "tic"}, 0.125, 2, 0.107, 0.449,
        213, 1);
  o.require(elapsed < 1.0, fmt::format("took {:.3f}s", elapsed));
  if (o.pass) o.detail = fmt::format("{:.3f}s", elapsed);
  return o;
}

// Eleven-year sums recomputed by hand from the fixture file.
std::map<std::string, std::map<int, std::uint64_t>> fixture_period_sums(
    const std::vector<int>& centers) {
  std::map<std::string, std::map<int, std::uint64_t>> sums;
  std::ifstream in(wordevo::testing::fixture("rapture/corpus.tsv"));
  std::string word;
  int year = 0;
  std::uint64_t match = 0, volume = 0;
  while (in >> word >> year >> match >> volume) {
    for (int c : centers) {
      if (year >= c - 5 && year <= c + 5) sums[word][c] += match;
    }
  }
  return sums;
}

Verdict relative_frequency_arithmetic() {
  Verdict o;
  // Published counts for the Test1 past (1850) and present (1900).
  const std::map<std::string, std::pair<double, double>> published = {
      {"rapturous", {8645, 15320}}, {"ecstatic", {5576, 21716}}, {"rapt", {5243, 18750}},
      {"enraptured", {4334, 7148}}, {"rhapsodic", {45, 696}}};
  double past_total = 0, present_total = 0;
  for (const auto& [w, c] : published) {
    past_total += c.first;
    present_total += c.second;
  }
  o.require(past_total == 23843, "past total");
  o.require(present_total == 63630, "present total");
  const double f1 = 5576.0 / 23843.0;
  const double f2 = 21716.0 / 63630.0;
  o.require(near(2 * f2 - f1, 0.449, 0.001), fmt::format("extrapolation {:.4f}", 2 * f2 - f1));
  const double r1 = 8645.0 / 23843.0, r2 = 15320.0 / 63630.0;
  o.require(near(2 * r2 - r1, 0.119, 0.001), "rapturous extrapolation");

  auto sums = fixture_period_sums({1850, 1900});
  for (const auto& [w, c] : published) {
    o.require(sums[w + "_ADJ"][1850] == c.first && sums[w + "_ADJ"][1900] == c.second,
              w + " fixture sums differ from the published counts");
  }
  if (o.pass) o.detail = fmt::format("f2(ecstatic) = {:.6f}, 2*f2-f1 = {:.4f}", f2, 2 * f2 - f1);
  return o;
}

Verdict metric_identities() {
  Verdict o;
  // precision 1581/3100 = 0.510, recall 1581/5100 = 0.310.
  ContingencyCounts c{1581, 1519, 3519, 0};
  auto m = metrics(c);
  o.require(near(m.precision, 0.510, 0.0005), "precision");
  o.require(near(m.recall, 0.310, 0.0005), "recall");
  o.require(near(m.f_score, 0.385, 0.001), fmt::format("F {:.4f}", m.f_score));
  auto never = metrics(ContingencyCounts{0, 0, 1200, 2284});
  o.require(never == Metrics{}, "never-change guesser is not (0,0,0)");
  if (o.pass) o.detail = fmt::format("F = {:.4f}", m.f_score);
  return o;
}

Verdict wilson_check() {
  Verdict o;
  auto w = wilson_interval(0.5, 3484);
  o.require(near(w.half_width(), 0.0166, 0.0005), fmt::format("half-width {:.5f}", w.half_width()));
  if (o.pass) o.detail = fmt::format("half-width {:.5f}", w.half_width());
  return o;
}

Verdict schedule_check() {
  Verdict o;
  auto p50 = schedule_windows(50);
  std::vector<WindowPair> expected = {
      {TimeWindow::make(1800, 1850, 1900), TimeWindow::make(1850, 1900, 1950)},
      {TimeWindow::make(1850, 1900, 1950), TimeWindow::make(1900, 1950, 2000)}};
  o.require(p50 == expected, "cycle 50 windows");
  std::vector<int> futures;
  for (const auto& p : schedule_windows(30)) futures.push_back(p.test.future);
  o.require(futures == std::vector<int>{1910, 1940, 1970, 2000}, "cycle 30 test futures");
  o.require(sampling_periods(60) == std::vector<int>{1820, 1880, 1940, 2000}, "cycle 60 periods");
  return o;
}

Verdict naive_bayes_oracle() {
  Verdict o;
  std::mt19937_64 rng(20180101);
  const auto start = Clock::now();
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    auto data = wordevo::testing::random_vectors(rng, 20);
    auto mask = wordevo::testing::random_mask(rng, 3);
    auto model = NaiveBayesModel::fit(data, mask);
    auto oracle = wordevo::testing::OracleModel::fit(data, mask);
    for (int c = 0; c < 2; ++c) {
      for (std::size_t i = 0; i < oracle.scalars.size(); ++i) {
        auto p = model.scalar_params(i, c);
        worst = std::max(worst, std::abs(p.mean - static_cast<double>(oracle.mean[c][i])));
        worst = std::max(worst, std::abs(p.variance - static_cast<double>(oracle.var[c][i])));
      }
      const std::size_t k = oracle.scalars.size();
      for (std::size_t d = 0; d < oracle.trigrams.size(); ++d) {
        auto p = model.trigram_params(d, c);
        worst = std::max(worst, std::abs(p.mean - static_cast<double>(oracle.mean[c][k + d])));
        worst = std::max(worst, std::abs(p.variance - static_cast<double>(oracle.var[c][k + d])));
      }
    }
    if (model.trigram_index() != oracle.trigrams) o.require(false, "trigram index");
    for (const auto& v : data) {
      worst = std::max(worst, std::abs(model.win_probability(v) -
                                       static_cast<double>(oracle.win_probability(v))));
    }
  }
  const double elapsed = seconds_since(start);
  o.require(worst <= 1e-9, fmt::format("max deviation {:.3g}", worst));
  o.require(elapsed < 10.0, fmt::format("took {:.2f}s", elapsed));
  if (o.pass) o.detail = fmt::format("1000 cases, max deviation {:.3g}, {:.2f}s", worst, elapsed);
  return o;
}

Verdict end_to_end() {
  Verdict o;
  const auto start = Clock::now();
  const auto pair = schedule_windows(50)[0];
  std::string first;
  double f = 0.0;
  for (std::size_t workers : {1, 2, 8, 1}) {
    auto inputs = load_inputs(wordevo::testing::synthetic_paths(), workers);
    PipelineOptions options;
    options.workers = workers;
    auto r = run_nbcp(pair, inputs, options);
    std::ostringstream outcomes;
    write_outcomes_tsv(outcomes, r.evaluation.outcomes);
    const auto bytes = r.report().dump(2) + "\n" + outcomes.str() + r.model.to_json().dump();
    f = r.evaluation.metrics.f_score;
    if (first.empty()) {
      first = bytes;
    } else {
      o.require(bytes == first, fmt::format("report differs with {} workers", workers));
    }
  }
  const double elapsed = seconds_since(start);
  o.require(f >= 0.95, fmt::format("F {:.3f}", f));
  o.require(elapsed < 30.0, fmt::format("took {:.2f}s", elapsed));
  if (o.pass) o.detail = fmt::format("F = {:.3f}, identical for 1/2/8 workers, {:.2f}s", f, elapsed);
  return o;
}

Verdict random_baseline_recall() {
  Verdict o;
  Dataset ds;
  ds.window = TimeWindow::make(1850, 1900, 1950);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 10000; ++i) {
    SynsetSnapshot s;
    s.synset_id = fmt::format("r{:05d}", i);
    s.pos = 'a';
    s.members = {{{"first", 'a', 1}, 1, 10, 10}, {{"second", 'a', 1}, 1, 5, 5}};
    s.present_leader = 0;
    s.future_leader = rng() % 2;
    ds.snapshots.push_back(std::move(s));
  }
  auto e = random_baseline(ds, 1);
  o.require(near(e.metrics.recall, 0.5, 0.02), fmt::format("recall {:.4f}", e.metrics.recall));
  if (o.pass) o.detail = fmt::format("recall {:.4f}", e.metrics.recall);
  return o;
}

Verdict interpretation_oracle() {
  Verdict o;
  auto inputs = load_inputs(wordevo::testing::synthetic_paths());
  PipelineOptions options;
  auto pair = prepare_pair(schedule_windows(50)[0], inputs, options);
  auto model = NaiveBayesModel::fit(pair.train_vectors);
  auto interp = interpret_model(model, pair.train_vectors, 12);
  double worst = 0.0;
  auto class_mean = [&](auto value, int cls) {
    double sum = 0, n = 0;
    for (const auto& v : pair.train_vectors) {
      if (*v.target_class != cls) continue;
      sum += value(v);
      n += 1;
    }
    return sum / n;
  };
  for (const auto& row : interp.scalar) {
    const auto f = parse_feature(row.dimension);
    auto value = [&](const FeatureVector& v) { return v.scalar(f); };
    const double diff = class_mean(value, 1) - class_mean(value, 0);
    worst = std::max(worst, std::abs(row.difference - diff));
  }
  for (const auto& row : interp.trigrams) {
    auto value = [&](const FeatureVector& v) {
      return std::count(v.unique_ngrams.begin(), v.unique_ngrams.end(), row.dimension) > 0 ? 1.0
                                                                                          : 0.0;
    };
    const double diff = class_mean(value, 1) - class_mean(value, 0);
    worst = std::max(worst, std::abs(row.difference - diff));
  }
  o.require(worst <= 1e-12, fmt::format("max deviation {:.3g}", worst));
  o.require(!interp.trigrams.empty() && interp.trigrams[0].dimension == "zzz" &&
                interp.trigrams[0].difference > 0,
            "zzz is not the top winner trigram");
  if (o.pass && !interp.trigrams.empty()) {
    o.detail = fmt::format("zzz first, difference {:+.4f}", interp.trigrams[0].difference);
  }
  return o;
}

Verdict share_sums() {
  Verdict o;
  auto p = wordevo::testing::rapture_paths();
  auto lex = load_lexicon_file(p.lexicon);
  const auto* s = lex.find("a00001");
  std::vector<Synset> one{*s};
  auto loaded = load_unigram_files(p.corpus, corpus_vocabulary(one));
  std::vector<const YearSeries*> series;
  for (const auto& m : s->members) series.push_back(&loaded.table.series(m.corpus_key()));
  auto table = synset_annual_shares(series, 1800, 2000);
  double worst = 0.0;
  std::size_t flagged = 0;
  for (Eigen::Index y = 0; y < table.shares.rows(); ++y) {
    if (table.flagged[static_cast<std::size_t>(y)]) {
      ++flagged;
      continue;
    }
    worst = std::max(worst, std::abs(table.shares.row(y).sum() - 1.0));
  }
  o.require(table.years.size() == 201, "expected 201 years");
  o.require(flagged == 0, fmt::format("{} all-zero years", flagged));
  o.require(worst <= 1e-12, fmt::format("max deviation {:.3g}", worst));
  if (o.pass) o.detail = fmt::format("201 rows, max |sum - 1| = {:.3g}", worst);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"published feature vectors for rapturous and ecstatic", reference_feature_vectors},
      {"relative-frequency arithmetic from raw counts", relative_frequency_arithmetic},
      {"metric identities", metric_identities},
      {"Wilson half-width at n=3484, p=0.5", wilson_check},
      {"window schedule", schedule_check},
      {"naive Bayes against a brute-force oracle", naive_bayes_oracle},
      {"end-to-end synthetic run", end_to_end},
      {"random-baseline recall on 10,000 two-word synsets", random_baseline_recall},
      {"interpretation against brute-force class means", interpretation_oracle},
      {"annual shares sum to one", share_sums},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": "
              << criteria[i].first;
    if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
    std::cout << '\n';
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size()
            << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
