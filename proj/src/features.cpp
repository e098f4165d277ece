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

#include "wordevo/features.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "wordevo/io.hpp"

namespace wordevo {

TrigramSet boundary_trigrams(std::string_view lemma) {
  const std::string marked = "|" + std::string(lemma) + "|";
  TrigramSet out;
  for (std::size_t i = 0; i + 3 <= marked.size(); ++i) {
    std::string tri = marked.substr(i, 3);
    if (std::find(out.begin(), out.end(), tri) == out.end()) out.push_back(std::move(tri));
  }
  return out;
}

TrigramPartition partition_trigrams(std::string_view lemma,
                                    std::span<const std::string> synset_lemmas) {
  std::set<std::string> others;
  for (const auto& other : synset_lemmas) {
    if (other == lemma) continue;
    for (auto& t : boundary_trigrams(other)) others.insert(std::move(t));
  }
  TrigramPartition part;
  const auto mine = boundary_trigrams(lemma);
  for (const auto& t : mine) {
    if (others.count(t) == 0) part.unique.push_back(t);
  }
  if (!mine.empty()) {
    part.shared_fraction = static_cast<double>(mine.size() - part.unique.size()) /
                           static_cast<double>(mine.size());
  }
  return part;
}

namespace {

bool is_plain_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

}  // namespace

int syllable_count(std::string_view w) {
  const std::size_t n = w.size();
  std::vector<bool> vowel(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (is_plain_vowel(w[i])) {
      vowel[i] = true;
    } else if (w[i] == 'y' && i > 0) {
      bool before = is_plain_vowel(w[i - 1]);
      bool after = i + 1 < n && is_plain_vowel(w[i + 1]);
      vowel[i] = !before && !after;
    }
  }
  int groups = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (vowel[i] && (i == 0 || !vowel[i - 1])) ++groups;
  }
  // Silent final e: "rapture" but not "table" or "free".
  if (n >= 2 && w[n - 1] == 'e' && !vowel[n - 2]) {
    bool consonant_le = n >= 3 && w[n - 2] == 'l' && !vowel[n - 3];
    if (!consonant_le) --groups;
  }
  return std::max(groups, 1);
}

SyllableCounter SyllableCounter::load(std::istream& source) {
  SyllableCounter counter;
  for_each_line(source, [&](std::string_view line, std::size_t number) {
    if (is_skippable(line)) return;
    auto f = split(line, '\t');
    std::int64_t count = 0;
    if (f.size() != 2 || f[0].empty() || !parse_int(f[1], count) || count < 1) {
      throw DataError(fmt::format("syllable exceptions line {}: expected lemma<TAB>count", number));
    }
    counter.exceptions_[std::string(f[0])] = static_cast<int>(count);
  });
  return counter;
}

SyllableCounter SyllableCounter::load_file(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  return load(in);
}

int SyllableCounter::count(std::string_view lemma) const {
  auto it = exceptions_.find(lemma);
  return it == exceptions_.end() ? syllable_count(lemma) : it->second;
}

std::vector<RelativeFrequency> relative_frequencies(const SynsetSnapshot& snapshot) {
  std::uint64_t past_total = 0, present_total = 0;
  for (const auto& m : snapshot.members) {
    past_total += m.past;
    present_total += m.present;
  }
  std::vector<RelativeFrequency> out;
  out.reserve(snapshot.members.size());
  for (const auto& m : snapshot.members) {
    RelativeFrequency rf;
    if (past_total > 0) rf.past = static_cast<double>(m.past) / static_cast<double>(past_total);
    if (present_total > 0) {
      rf.present = static_cast<double>(m.present) / static_cast<double>(present_total);
    }
    out.push_back(rf);
  }
  return out;
}

std::string_view feature_name(Feature f) {
  switch (f) {
    case Feature::normalized_length: return "normalized_length";
    case Feature::syllable_count: return "syllable_count";
    case Feature::unique_ngrams: return "unique_ngrams";
    case Feature::shared_ngrams: return "shared_ngrams";
    case Feature::categorial_variations: return "categorial_variations";
    case Feature::relative_growth: return "relative_growth";
    case Feature::linear_extrapolation: return "linear_extrapolation";
    case Feature::present_age: return "present_age";
  }
  return "?";
}

Feature parse_feature(std::string_view name) {
  for (auto f : kAllFeatures) {
    if (feature_name(f) == name) return f;
  }
  throw std::invalid_argument(fmt::format("unknown feature '{}'", name));
}

bool is_scalar(Feature f) { return f != Feature::unique_ngrams; }

FeatureMask FeatureMask::with(Feature f) const {
  auto bits = bits_;
  bits.set(static_cast<std::size_t>(f));
  return FeatureMask(bits);
}

FeatureMask FeatureMask::without(Feature f) const {
  auto bits = bits_;
  bits.reset(static_cast<std::size_t>(f));
  return FeatureMask(bits);
}

std::vector<Feature> FeatureMask::features() const {
  std::vector<Feature> out;
  for (auto f : kAllFeatures) {
    if (has(f)) out.push_back(f);
  }
  return out;
}

std::vector<Feature> FeatureMask::scalar_features() const {
  auto out = features();
  std::erase(out, Feature::unique_ngrams);
  return out;
}

double FeatureVector::scalar(Feature f) const {
  switch (f) {
    case Feature::normalized_length: return normalized_length;
    case Feature::syllable_count: return syllable_count;
    case Feature::shared_ngrams: return shared_ngrams;
    case Feature::categorial_variations: return categorial_variations;
    case Feature::relative_growth: return relative_growth;
    case Feature::linear_extrapolation: return linear_extrapolation;
    case Feature::present_age: return present_age;
    case Feature::unique_ngrams: break;
  }
  throw std::invalid_argument("unique_ngrams is not a scalar feature");
}

FeatureVector make_feature_vector(const SynsetSnapshot& snapshot, std::size_t member,
                                  const FeatureContext& context, const TimeWindow& window,
                                  bool with_class) {
  const auto& counts = snapshot.members.at(member);
  const auto& lemma = counts.sense.lemma;
  const auto lemmas = snapshot.lemmas();

  FeatureVector v;
  v.synset_id = snapshot.synset_id;
  v.sense = counts.sense;

  std::size_t longest = 0;
  for (const auto& l : lemmas) longest = std::max(longest, l.size());
  v.normalized_length = static_cast<double>(lemma.size()) / static_cast<double>(longest);

  v.syllable_count = context.syllables ? context.syllables->count(lemma) : syllable_count(lemma);

  auto part = partition_trigrams(lemma, lemmas);
  v.unique_ngrams = std::move(part.unique);
  v.shared_ngrams = part.shared_fraction;

  const auto key = counts.sense.corpus_key();
  if (context.catvar != nullptr && context.births != nullptr) {
    v.categorial_variations =
        categorial_variation_count(key, window.present, *context.catvar, *context.births);
  }

  const auto rf = relative_frequencies(snapshot)[member];
  v.relative_growth = rf.growth();
  v.linear_extrapolation = rf.extrapolation();

  if (context.births == nullptr) throw DataError("no birth years available");
  auto born = context.births->find(key);
  if (born == context.births->end()) {
    throw DataError(fmt::format("no birth year for '{}' although it occurs in the present",
                                key.str()));
  }
  // A word first attested inside the present's smoothing interval counts as
  // newborn rather than getting a negative age.
  v.present_age = std::max(0, window.present - born->second);

  if (with_class) v.target_class = member == snapshot.future_leader ? 1 : 0;
  return v;
}

std::vector<FeatureVector> extract_features(const Dataset& dataset, const FeatureContext& context,
                                            std::size_t workers, bool with_class) {
  std::vector<std::vector<FeatureVector>> per_snapshot(dataset.snapshots.size());
  parallel_for(dataset.snapshots.size(), workers, [&](std::size_t i) {
    const auto& snap = dataset.snapshots[i];
    for (std::size_t m = 0; m < snap.members.size(); ++m) {
      per_snapshot[i].push_back(make_feature_vector(snap, m, context, dataset.window, with_class));
    }
  });
  std::vector<FeatureVector> out;
  for (auto& group : per_snapshot) {
    for (auto& v : group) out.push_back(std::move(v));
  }
  return out;
}

namespace {

constexpr std::string_view kFeatureHeader =
    "synset_id\tsense_id\tnormalized_length\tsyllable_count\tshared_ngrams\t"
    "categorial_variations\trelative_growth\tlinear_extrapolation\tpresent_age\t"
    "target_class\tunique_ngrams";

}  // namespace

void write_features(std::ostream& out, std::span<const FeatureVector> vectors) {
  out << kFeatureHeader << '\n';
  for (const auto& v : vectors) {
    out << v.synset_id << '\t' << v.sense.str() << '\t' << format_exact(v.normalized_length)
        << '\t' << v.syllable_count << '\t' << format_exact(v.shared_ngrams) << '\t'
        << v.categorial_variations << '\t' << format_exact(v.relative_growth) << '\t'
        << format_exact(v.linear_extrapolation) << '\t' << v.present_age << '\t';
    if (v.target_class) {
      out << *v.target_class;
    } else {
      out << '?';
    }
    out << '\t';
    for (std::size_t i = 0; i < v.unique_ngrams.size(); ++i) {
      if (i > 0) out << ',';
      out << v.unique_ngrams[i];
    }
    out << '\n';
  }
}

std::vector<FeatureVector> read_features(std::istream& in) {
  std::vector<FeatureVector> out;
  for_each_line(in, [&](std::string_view line, std::size_t number) {
    if (number == 1) {
      if (line != kFeatureHeader) throw DataError("feature file: unexpected header");
      return;
    }
    if (line.empty()) return;
    auto f = split(line, '\t');
    auto fail = [&] { return DataError(fmt::format("feature file line {}: malformed", number)); };
    if (f.size() != 11) throw fail();
    FeatureVector v;
    v.synset_id = std::string(f[0]);
    try {
      v.sense = SenseId::parse(f[1]);
    } catch (const std::invalid_argument&) {
      throw fail();
    }
    std::int64_t syl = 0, cv = 0, age = 0, cls = 0;
    if (!parse_double(f[2], v.normalized_length) || !parse_int(f[3], syl) ||
        !parse_double(f[4], v.shared_ngrams) || !parse_int(f[5], cv) ||
        !parse_double(f[6], v.relative_growth) || !parse_double(f[7], v.linear_extrapolation) ||
        !parse_int(f[8], age)) {
      throw fail();
    }
    v.syllable_count = static_cast<int>(syl);
    v.categorial_variations = static_cast<int>(cv);
    v.present_age = static_cast<int>(age);
    if (f[9] != "?") {
      if (!parse_int(f[9], cls) || (cls != 0 && cls != 1)) throw fail();
      v.target_class = static_cast<int>(cls);
    }
    if (!f[10].empty()) {
      for (auto t : split(f[10], ',')) v.unique_ngrams.emplace_back(t);
    }
    out.push_back(std::move(v));
  });
  return out;
}

std::vector<FeatureVector> read_features_file(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  return read_features(in);
}

}  // namespace wordevo
