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

#ifndef WORDEVO_FEATURES_HPP_
#define WORDEVO_FEATURES_HPP_

#include <array>
#include <bitset>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wordevo/dataset.hpp"
#include "wordevo/lexicon.hpp"

namespace wordevo {

// Boundary-marked letter trigrams in first-occurrence order, no repeats.
using TrigramSet = std::vector<std::string>;

// Trigrams of "|" + lemma + "|". "ecstatic" -> |ec ecs cst sta tat ati tic ic|
TrigramSet boundary_trigrams(std::string_view lemma);

struct TrigramPartition {
  TrigramSet unique;             // not found in any other member
  double shared_fraction = 0.0;  // |shared| / |trigrams(lemma)|
};

TrigramPartition partition_trigrams(std::string_view lemma,
                                    std::span<const std::string> synset_lemmas);

// Vowel-group syllable heuristic. Vowels are a e i o u, plus y when it is
// neither word-initial nor next to another vowel. A final silent e (a
// consonant before it, and not consonant+"le") is dropped. Never below 1.
int syllable_count(std::string_view lemma);

// Heuristic plus per-lemma overrides read from `lemma<TAB>count` rows.
class SyllableCounter {
 public:
  SyllableCounter() = default;
  static SyllableCounter load(std::istream& source);
  static SyllableCounter load_file(const std::filesystem::path& path);

  int count(std::string_view lemma) const;
  void set_exception(std::string lemma, int count) { exceptions_[std::move(lemma)] = count; }

 private:
  std::map<std::string, int, std::less<>> exceptions_;
};

// f1, f2: a member's share of the synset's past and present counts.
struct RelativeFrequency {
  double past = 0.0;
  double present = 0.0;

  double growth() const { return present - past; }
  double extrapolation() const { return present + growth(); }
};

// Past shares are all zero when the synset has no past counts.
std::vector<RelativeFrequency> relative_frequencies(const SynsetSnapshot& snapshot);

enum class Feature : std::size_t {
  normalized_length = 0,
  syllable_count,
  unique_ngrams,
  shared_ngrams,
  categorial_variations,
  relative_growth,
  linear_extrapolation,
  present_age,
};

inline constexpr std::size_t kFeatureCount = 8;
inline constexpr std::array<Feature, kFeatureCount> kAllFeatures = {
    Feature::normalized_length,     Feature::syllable_count,  Feature::unique_ngrams,
    Feature::shared_ngrams,         Feature::categorial_variations,
    Feature::relative_growth,       Feature::linear_extrapolation,
    Feature::present_age};

std::string_view feature_name(Feature f);
// Throws std::invalid_argument for an unknown name.
Feature parse_feature(std::string_view name);
bool is_scalar(Feature f);

// Active features; the trigram vector counts as one.
class FeatureMask {
 public:
  static FeatureMask all() { return FeatureMask(std::bitset<kFeatureCount>().set()); }
  static FeatureMask none() { return FeatureMask({}); }
  static FeatureMask only(Feature f) { return none().with(f); }

  bool has(Feature f) const { return bits_.test(static_cast<std::size_t>(f)); }
  FeatureMask with(Feature f) const;
  FeatureMask without(Feature f) const;
  std::vector<Feature> features() const;
  std::vector<Feature> scalar_features() const;
  bool operator==(const FeatureMask&) const = default;

 private:
  explicit FeatureMask(std::bitset<kFeatureCount> bits) : bits_(bits) {}
  std::bitset<kFeatureCount> bits_;
};

struct FeatureVector {
  std::string synset_id;
  SenseId sense;
  double normalized_length = 0.0;
  int syllable_count = 1;
  TrigramSet unique_ngrams;
  double shared_ngrams = 0.0;
  int categorial_variations = 0;
  double relative_growth = 0.0;
  double linear_extrapolation = 0.0;
  int present_age = 0;
  std::optional<int> target_class;

  // Value of a scalar feature; throws for Feature::unique_ngrams.
  double scalar(Feature f) const;
  bool operator==(const FeatureVector&) const = default;
};

struct FeatureContext {
  const CatVarClusters* catvar = nullptr;  // null: no categorial variations
  const BirthIndex* births = nullptr;
  const SyllableCounter* syllables = nullptr;  // null: plain heuristic
};

// Throws DataError when the member has no birth year in `births`.
FeatureVector make_feature_vector(const SynsetSnapshot& snapshot, std::size_t member,
                                  const FeatureContext& context, const TimeWindow& window,
                                  bool with_class = true);

// Vectors for every member of every snapshot, in dataset order.
std::vector<FeatureVector> extract_features(const Dataset& dataset, const FeatureContext& context,
                                            std::size_t workers = 1, bool with_class = true);

// TSV with a header row; trigrams are the last column, comma-separated.
void write_features(std::ostream& out, std::span<const FeatureVector> vectors);
std::vector<FeatureVector> read_features(std::istream& in);
std::vector<FeatureVector> read_features_file(const std::filesystem::path& path);

}  // namespace wordevo

#endif  // WORDEVO_FEATURES_HPP_
