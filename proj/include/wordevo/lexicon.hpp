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

#ifndef WORDEVO_LEXICON_HPP_
#define WORDEVO_LEXICON_HPP_

#include <compare>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wordevo/corpus.hpp"

namespace wordevo {

// Lexicon part of speech: 'n', 'v', 'a' or 'r'. Adjective satellites ('s')
// are folded into 'a' on load.
bool is_lexicon_pos(char pos);
char normalize_lexicon_pos(char pos);

// Fixed mapping between lexicon and corpus tags: n->NOUN, v->VERB, a->ADJ,
// r->ADV.
std::string corpus_tag(char lexicon_pos);

// A word sense, rendered lemma#pos#k (e.g. rapt#a#1).
struct SenseId {
  std::string lemma;
  char pos = 'n';
  int sense_number = 1;

  std::string str() const;
  static SenseId parse(std::string_view text);
  UnigramKey corpus_key() const { return {lemma, corpus_tag(pos)}; }

  auto operator<=>(const SenseId&) const = default;
};

struct Synset {
  std::string id;
  char pos = 'n';
  std::vector<SenseId> members;

  std::vector<std::string> lemmas() const;
};

// The complete sense inventory for the parts of speech it covers.
class Lexicon {
 public:
  const std::vector<Synset>& synsets() const { return synsets_; }
  // Number of synsets of this part of speech that contain the lemma.
  int sense_count(const std::string& lemma, char pos) const;
  bool is_monosemous(const std::string& lemma, char pos) const {
    return sense_count(lemma, pos) == 1;
  }
  const Synset* find(std::string_view synset_id) const;

 private:
  friend Lexicon load_lexicon(std::istream& source);
  std::vector<Synset> synsets_;
  std::map<std::pair<std::string, char>, int> sense_count_;
  std::map<std::string, std::size_t, std::less<>> by_id_;
};

// TSV rows `synset_id<TAB>pos<TAB>lemma1,lemma2,...`; '#' lines are
// comments. Throws DataError on duplicate ids or empty member lists.
Lexicon load_lexicon(std::istream& source);
Lexicon load_lexicon_file(const std::filesystem::path& path);

// Only lowercase ASCII letters, at least three of them.
bool is_eligible_lemma(std::string_view lemma);

// Synsets with >= 2 members, every member eligible and monosemous.
std::vector<Synset> eligible_synsets(const Lexicon& lexicon);

// Groups of derivationally related words; a word is in at most one group.
class CatVarClusters {
 public:
  const std::vector<std::vector<UnigramKey>>& clusters() const { return clusters_; }
  // Cluster containing the word, or nullptr.
  const std::vector<UnigramKey>* cluster_of(const UnigramKey& word) const;

 private:
  friend CatVarClusters load_catvar(std::istream& source);
  std::vector<std::vector<UnigramKey>> clusters_;
  std::map<UnigramKey, std::size_t> index_;
};

// One cluster per line: comma-separated `lemma_POS` tokens.
CatVarClusters load_catvar(std::istream& source);
CatVarClusters load_catvar_file(const std::filesystem::path& path);

using BirthIndex = std::map<UnigramKey, int>;

// Other members of the word's cluster born no later than `present`.
// Members without a known birth year do not count.
int categorial_variation_count(const UnigramKey& word, int present,
                               const CatVarClusters& clusters, const BirthIndex& births);

// Corpus keys needed to process the synsets: their members plus every
// member of any categorial-variation cluster one of them belongs to.
VocabularyFilter corpus_vocabulary(std::span<const Synset> synsets,
                                   const CatVarClusters* clusters = nullptr);

}  // namespace wordevo

#endif  // WORDEVO_LEXICON_HPP_
