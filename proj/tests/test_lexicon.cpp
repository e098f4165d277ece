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
#include "wordevo/io.hpp"
#include "wordevo/lexicon.hpp"

using namespace wordevo;

TEST_CASE("sense ids round-trip") {
  SenseId s{"rapt", 'a', 1};
  CHECK(s.str() == "rapt#a#1");
  CHECK(SenseId::parse("rapt#a#1") == s);
  CHECK(s.corpus_key() == UnigramKey{"rapt", "ADJ"});
  CHECK_THROWS(SenseId::parse("rapt#a"));
  CHECK_THROWS(SenseId::parse("rapt#q#1"));
}

TEST_CASE("part-of-speech mapping") {
  CHECK(corpus_tag('n') == "NOUN");
  CHECK(corpus_tag('v') == "VERB");
  CHECK(corpus_tag('a') == "ADJ");
  CHECK(corpus_tag('r') == "ADV");
  CHECK(normalize_lexicon_pos('s') == 'a');
}

TEST_CASE("eligible lemmas are three or more lowercase letters") {
  CHECK(is_eligible_lemma("rapt"));
  CHECK(is_eligible_lemma("sad"));
  CHECK_FALSE(is_eligible_lemma("up"));
  CHECK_FALSE(is_eligible_lemma("re-enter"));
  CHECK_FALSE(is_eligible_lemma("Rapt"));
  CHECK_FALSE(is_eligible_lemma("ice_cream"));
}

TEST_CASE("fixture lexicon: satellites fold into adjectives and drive monosemy") {
  auto lex = load_lexicon_file(wordevo::testing::fixture("rapture/lexicon.tsv"));
  CHECK(lex.synsets().size() == 6);
  CHECK(lex.sense_count("glad", 'a') == 2);
  CHECK(lex.is_monosemous("happy", 'a'));
  REQUIRE(lex.find("a00003") != nullptr);
  CHECK(lex.find("a00003")->pos == 'a');

  auto eligible = eligible_synsets(lex);
  std::vector<std::string> ids;
  for (const auto& s : eligible) ids.push_back(s.id);
  CHECK(ids == std::vector<std::string>{"a00001", "a00006"});
  for (const auto& s : eligible) {
    CHECK(s.members.size() >= 2);
    for (const auto& m : s.members) {
      CHECK(is_eligible_lemma(m.lemma));
      CHECK(lex.is_monosemous(m.lemma, m.pos));
    }
  }
}

TEST_CASE("sense numbers follow occurrence order") {
  std::istringstream in("x1\ta\tglad,happy\nx2\ts\tglad,gladsome\n");
  auto lex = load_lexicon(in);
  CHECK(lex.synsets()[0].members[0].sense_number == 1);
  CHECK(lex.synsets()[1].members[0].sense_number == 2);
}

TEST_CASE("malformed lexicons are rejected") {
  std::istringstream dup("x1\ta\tone,two\nx1\ta\tthree,four\n");
  CHECK_THROWS_AS(load_lexicon(dup), DataError);
  std::istringstream empty("x1\ta\t\n");
  CHECK_THROWS_AS(load_lexicon(empty), DataError);
  std::istringstream repeated("x1\ta\tone,one\n");
  CHECK_THROWS_AS(load_lexicon(repeated), DataError);
  CHECK_THROWS_AS(load_lexicon_file("/nonexistent/lexicon.tsv"), DataError);
}

TEST_CASE("categorial variations count related words born by the present") {
  std::istringstream in("a_ADJ,b_NOUN,c_VERB,d_ADV\n");
  auto clusters = load_catvar(in);
  BirthIndex births{{{"a", "ADJ"}, 1700}, {{"b", "NOUN"}, 1750}, {{"c", "VERB"}, 1950},
                    {{"d", "ADV"}, 1960}};
  // Cluster of four with two members born after the present.
  CHECK(categorial_variation_count({"a", "ADJ"}, 1900, clusters, births) == 1);
  CHECK(categorial_variation_count({"a", "ADJ"}, 2000, clusters, births) == 3);
  CHECK(categorial_variation_count({"zzz", "ADJ"}, 2000, clusters, births) == 0);
  births.erase({"b", "NOUN"});
  CHECK(categorial_variation_count({"a", "ADJ"}, 1900, clusters, births) == 0);

  std::istringstream bad("a_ADJ,b\n");
  CHECK_THROWS_AS(load_catvar(bad), DataError);
  std::istringstream twice("a_ADJ,b_NOUN\nb_NOUN,c_VERB\n");
  CHECK_THROWS_AS(load_catvar(twice), DataError);
}

TEST_CASE("corpus vocabulary covers members and their clusters") {
  auto lex = load_lexicon_file(wordevo::testing::fixture("rapture/lexicon.tsv"));
  auto clusters = load_catvar_file(wordevo::testing::fixture("rapture/catvar.tsv"));
  auto eligible = eligible_synsets(lex);
  auto vocab = corpus_vocabulary(eligible, &clusters);
  CHECK(vocab.count({"rapturous", "ADJ"}) == 1);
  CHECK(vocab.count({"rapturously", "ADV"}) == 1);
  CHECK(vocab.count({"hunger", "NOUN"}) == 0);
  CHECK(vocab.count({"glad", "ADJ"}) == 0);
}
