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

#include "wordevo/evaluate.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>
#include <fmt/format.h>

#include "wordevo/io.hpp"

namespace wordevo {

WinnerChoice predict_synset_winner(std::span<const ScoredSense> scores) {
  if (scores.empty()) throw std::invalid_argument("no candidates");
  const ScoredSense* best = &scores[0];
  std::string best_id = best->sense.str();
  bool tie = false;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    const auto& s = scores[i];
    if (s.probability > best->probability) {
      best = &s;
      best_id = s.sense.str();
      tie = false;
    } else if (s.probability == best->probability) {
      tie = true;
      auto id = s.sense.str();
      if (id < best_id) {
        best = &s;
        best_id = std::move(id);
      }
    }
  }
  // A tie only matters if it involves the maximum.
  if (tie) {
    std::size_t at_max = 0;
    for (const auto& s : scores) at_max += s.probability == best->probability ? 1 : 0;
    tie = at_max > 1;
  }
  return {best->sense, tie};
}

std::string to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::tp: return "tp";
    case Outcome::fp: return "fp";
    case Outcome::fn: return "fn";
    case Outcome::tn: return "tn";
  }
  return "?";
}

Outcome classify_outcome(const SenseId& present_leader, const SenseId& future_leader,
                         const SenseId& predicted) {
  const bool changed = future_leader != present_leader;
  const bool right = predicted == future_leader;
  if (changed) return right ? Outcome::tp : Outcome::fn;
  return right ? Outcome::tn : Outcome::fp;
}

void ContingencyCounts::add(Outcome outcome) {
  switch (outcome) {
    case Outcome::tp: ++tp; break;
    case Outcome::fp: ++fp; break;
    case Outcome::fn: ++fn; break;
    case Outcome::tn: ++tn; break;
  }
}

namespace {

double ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

// splitmix64 finalizer.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::uint64_t h, std::string_view bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

Metrics metrics(const ContingencyCounts& c) {
  Metrics m;
  m.precision = ratio(static_cast<double>(c.tp), static_cast<double>(c.tp + c.fp));
  m.recall = ratio(static_cast<double>(c.tp), static_cast<double>(c.tp + c.fn));
  m.f_score = ratio(2.0 * m.precision * m.recall, m.precision + m.recall);
  return m;
}

double normal_quantile(double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument("confidence must lie in (0, 1)");
  }
  if (std::abs(confidence - 0.95) < 1e-12) return 1.959964;
  boost::math::normal standard;
  return boost::math::quantile(standard, 1.0 - (1.0 - confidence) / 2.0);
}

WilsonInterval wilson_interval(double p, std::size_t n, double confidence) {
  if (n == 0) throw std::invalid_argument("Wilson interval needs n > 0");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("proportion outside [0, 1]");
  const double z = normal_quantile(confidence);
  const double nn = static_cast<double>(n);
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

WilsonInterval wilson_interval(std::size_t successes, std::size_t n, double confidence) {
  if (n == 0) throw std::invalid_argument("Wilson interval needs n > 0");
  if (successes > n) throw std::invalid_argument("successes exceed trials");
  if (successes == 0 || successes == n) {
    // Exact endpoints at the boundary.
    auto w = wilson_interval(static_cast<double>(successes) / static_cast<double>(n), n,
                             confidence);
    if (successes == 0) w.low = 0.0;
    if (successes == n) w.high = 1.0;
    return w;
  }
  return wilson_interval(static_cast<double>(successes) / static_cast<double>(n), n, confidence);
}

Evaluation evaluate(const Dataset& dataset, const WordScores& scores) {
  Evaluation eval;
  for (const auto& snap : dataset.snapshots) {
    std::vector<ScoredSense> candidates;
    for (const auto& m : snap.members) {
      auto it = scores.find({snap.synset_id, m.sense.str()});
      if (it == scores.end()) {
        throw DataError(fmt::format("no probability for {} in synset {}", m.sense.str(),
                                    snap.synset_id));
      }
      candidates.push_back({m.sense, it->second});
    }
    auto choice = predict_synset_winner(candidates);
    SynsetOutcome o;
    o.synset_id = snap.synset_id;
    o.present_leader = snap.members[snap.present_leader].sense;
    o.future_leader = snap.members[snap.future_leader].sense;
    o.predicted = choice.sense;
    o.predicted_probability = scores.at({snap.synset_id, choice.sense.str()});
    o.outcome = classify_outcome(o.present_leader, o.future_leader, o.predicted);
    o.tie = choice.tie;
    eval.counts.add(o.outcome);
    eval.outcomes.push_back(std::move(o));
  }
  eval.metrics = metrics(eval.counts);
  return eval;
}

double uniform_draw(std::uint64_t seed, std::string_view synset_id, std::string_view sense_id) {
  std::uint64_t h = fnv1a(0xcbf29ce484222325ULL, synset_id);
  h = fnv1a(h, "\t");
  h = fnv1a(h, sense_id);
  const std::uint64_t bits = mix(mix(seed) ^ h);
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

Evaluation random_baseline(const Dataset& dataset, std::uint64_t seed) {
  WordScores scores;
  for (const auto& snap : dataset.snapshots) {
    for (const auto& m : snap.members) {
      auto id = m.sense.str();
      scores[{snap.synset_id, id}] = uniform_draw(seed, snap.synset_id, id);
    }
  }
  return evaluate(dataset, scores);
}

BaselineSummary random_baseline(const Dataset& dataset, std::span<const std::uint64_t> seeds) {
  if (seeds.empty()) throw std::invalid_argument("no seeds");
  BaselineSummary summary;
  summary.seeds.assign(seeds.begin(), seeds.end());
  std::vector<Metrics> runs;
  for (auto seed : seeds) runs.push_back(random_baseline(dataset, seed).metrics);
  const double n = static_cast<double>(runs.size());
  for (const auto& r : runs) {
    summary.mean.precision += r.precision / n;
    summary.mean.recall += r.recall / n;
    summary.mean.f_score += r.f_score / n;
  }
  if (runs.size() > 1) {
    for (const auto& r : runs) {
      summary.stddev.precision += std::pow(r.precision - summary.mean.precision, 2) / (n - 1);
      summary.stddev.recall += std::pow(r.recall - summary.mean.recall, 2) / (n - 1);
      summary.stddev.f_score += std::pow(r.f_score - summary.mean.f_score, 2) / (n - 1);
    }
    summary.stddev.precision = std::sqrt(summary.stddev.precision);
    summary.stddev.recall = std::sqrt(summary.stddev.recall);
    summary.stddev.f_score = std::sqrt(summary.stddev.f_score);
  }
  return summary;
}

double percent_1dp(double fraction) { return std::round(fraction * 1000.0) / 10.0; }

nlohmann::json to_json(const ContingencyCounts& c) {
  return {{"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn}, {"tn", c.tn}};
}

nlohmann::json to_json(const Metrics& m) {
  return {{"precision", percent_1dp(m.precision)},
          {"recall", percent_1dp(m.recall)},
          {"f_score", percent_1dp(m.f_score)}};
}

nlohmann::json evaluation_report(const Evaluation& evaluation, std::size_t n, double confidence) {
  nlohmann::json report = {{"synsets", n},
                           {"counts", to_json(evaluation.counts)},
                           {"metrics_percent", to_json(evaluation.metrics)}};
  std::size_t ties = 0;
  for (const auto& o : evaluation.outcomes) ties += o.tie ? 1 : 0;
  report["winner_ties"] = ties;
  if (n > 0) {
    auto w = wilson_interval(evaluation.metrics.f_score, n, confidence);
    report["f_score_interval_percent"] = {{"confidence", confidence},
                                          {"low", percent_1dp(w.low)},
                                          {"high", percent_1dp(w.high)}};
  }
  return report;
}

void write_outcomes_tsv(std::ostream& out, std::span<const SynsetOutcome> outcomes) {
  out << "synset_id\tpresent_leader\tfuture_leader\tpredicted\tprobability\toutcome\ttie\n";
  for (const auto& o : outcomes) {
    out << o.synset_id << '\t' << o.present_leader.str() << '\t' << o.future_leader.str() << '\t'
        << o.predicted.str() << '\t' << format_exact(o.predicted_probability) << '\t'
        << to_string(o.outcome) << '\t' << (o.tie ? 1 : 0) << '\n';
  }
}

}  // namespace wordevo
