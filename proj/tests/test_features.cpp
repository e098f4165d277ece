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

#include <doctest.h>

#include <sstream>

#include "support.hpp"
#include "wordevo/features.hpp"
#include "wordevo/io.hpp"

using namespace wordevo;

TEST_CASE("boundary trigrams mark both ends") {
  CHECK(boundary_trigrams("rapt") == TrigramSet{"|ra", "rap", "apt", "pt|"});
  CHECK(boundary_trigrams("ab") == TrigramSet{"|ab", "ab|"});
  // Repeats count once.
  CHECK(boundary_trigrams("aaaa") == TrigramSet{"|aa", "aaa", "aa|"});
}

TEST_CASE("unique and shared trigrams within a synset") {
  std::vector<std::string> lemmas{"rapturous", "ecstatic", "rapt", "enraptured", "rhapsodic"};
  auto r = partition_trigrams("rapturous", lemmas);
  CHECK(r.unique == TrigramSet{"uro", "rou", "ous", "us|"});
  CHECK(r.shared_fraction == doctest::Approx(5.0 / 9.0));
  auto e = partition_trigrams("ecstatic", lemmas);
  CHECK(e.unique == TrigramSet{"|ec", "ecs", "cst", "sta", "tat", "ati", "tic"});
  CHECK(e.shared_fraction == doctest::Approx(1.0 / 8.0));
  std::vector<std::string> alone{"solo"};
  CHECK(partition_trigrams("solo", alone).shared_fraction == 0.0);
}

TEST_CASE("syllable heuristic") {
  CHECK(syllable_count("rapturous") == 3);
  CHECK(syllable_count("ecstatic") == 3);
  CHECK(syllable_count("rapt") == 1);
  CHECK(syllable_count("rhapsodic") == 3);
  CHECK(syllable_count("rapture") == 2);
  CHECK(syllable_count("table") == 2);
  CHECK(syllable_count("free") == 1);
  CHECK(syllable_count("happy") == 2);
  CHECK(syllable_count("yes") == 1);
  CHECK(syllable_count("the") == 1);
  CHECK(syllable_count("brr") == 1);
}

TEST_CASE("syllable exceptions override the heuristic") {
  std::istringstream in("# lemma\tcount\nenraptured\t3\n");
  auto counter = SyllableCounter::load(in);
  CHECK(counter.count("enraptured") == 3);
  CHECK(counter.count("rapt") == 1);
  std::istringstream bad("word\tzero\n");
  CHECK_THROWS_AS(SyllableCounter::load(bad), DataError);
}

TEST_CASE("feature masks") {
  auto all = FeatureMask::all();
  CHECK(all.features().size() == 8);
  CHECK(all.scalar_features().size() == 7);
  auto drop = all.without(Feature::unique_ngrams);
  CHECK_FALSE(drop.has(Feature::unique_ngrams));
  CHECK(FeatureMask::only(Feature::present_age).features() ==
        std::vector<Feature>{Feature::present_age});
  for (auto f : kAllFeatures) CHECK(parse_feature(feature_name(f)) == f);
  CHECK_THROWS(parse_feature("nope"));
}

TEST_CASE("relative frequencies and extrapolation") {
  RelativeFrequency rf{0.2, 0.5};
  CHECK(rf.growth() == doctest::Approx(0.3));
  CHECK(rf.extrapolation() == doctest::Approx(0.8));
}

TEST_CASE("feature files round-trip exactly") {
  auto inputs = load_inputs(wordevo::testing::rapture_paths());
  auto pairs = schedule_windows(50);
  auto ds = build_dataset(inputs.eligible, inputs.corpus, pairs[0].test);
  auto vectors = extract_features(ds, inputs.context());
  REQUIRE(!vectors.empty());
  std::ostringstream out;
  write_features(out, vectors);
  std::istringstream in(out.str());
  CHECK(read_features(in) == vectors);

  auto unlabeled = extract_features(ds, inputs.context(), 3, false);
  CHECK(!unlabeled[0].target_class.has_value());
  std::ostringstream out2;
  write_features(out2, unlabeled);
  CHECK(out2.str().find("\t?\t") != std::string::npos);

  std::istringstream bad("wrong header\n");
  CHECK_THROWS_AS(read_features(bad), DataError);
}

TEST_CASE("missing birth year is a data error") {
  auto inputs = load_inputs(wordevo::testing::rapture_paths());
  auto ds = build_dataset(inputs.eligible, inputs.corpus, schedule_windows(50)[0].test);
  BirthIndex none;
  FeatureContext ctx{&inputs.catvar, &none, nullptr};
  CHECK_THROWS_AS(extract_features(ds, ctx), DataError);
}
