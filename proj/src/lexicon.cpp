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

#include "wordevo/lexicon.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "wordevo/io.hpp"

namespace wordevo {

bool is_lexicon_pos(char pos) {
  return pos == 'n' || pos == 'v' || pos == 'a' || pos == 'r';
}

char normalize_lexicon_pos(char pos) { return pos == 's' ? 'a' : pos; }

std::string corpus_tag(char lexicon_pos) {
  switch (normalize_lexicon_pos(lexicon_pos)) {
    case 'n': return "NOUN";
    case 'v': return "VERB";
    case 'a': return "ADJ";
    case 'r': return "ADV";
  }
  throw std::invalid_argument(fmt::format("unknown lexicon pos '{}'", lexicon_pos));
}

std::string SenseId::str() const { return fmt::format("{}#{}#{}", lemma, pos, sense_number); }

SenseId SenseId::parse(std::string_view text) {
  auto parts = split(text, '#');
  std::int64_t k = 0;
  if (parts.size() != 3 || parts[0].empty() || parts[1].size() != 1 ||
      !is_lexicon_pos(parts[1][0]) || !parse_int(parts[2], k) || k < 1) {
    throw std::invalid_argument(fmt::format("bad sense id '{}'", text));
  }
  return {std::string(parts[0]), parts[1][0], static_cast<int>(k)};
}

std::vector<std::string> Synset::lemmas() const {
  std::vector<std::string> out;
  out.reserve(members.size());
  for (const auto& m : members) out.push_back(m.lemma);
  return out;
}

int Lexicon::sense_count(const std::string& lemma, char pos) const {
  auto it = sense_count_.find({lemma, normalize_lexicon_pos(pos)});
  return it == sense_count_.end() ? 0 : it->second;
}

const Synset* Lexicon::find(std::string_view synset_id) const {
  auto it = by_id_.find(synset_id);
  return it == by_id_.end() ? nullptr : &synsets_[it->second];
}

Lexicon load_lexicon(std::istream& source) {
  Lexicon lex;
  for_each_line(source, [&](std::string_view line, std::size_t number) {
    if (is_skippable(line)) return;
    auto fields = split(line, '\t');
    if (fields.size() != 3 || fields[0].empty() || fields[1].size() != 1) {
      throw DataError(fmt::format("lexicon line {}: expected id<TAB>pos<TAB>lemmas", number));
    }
    const char pos = normalize_lexicon_pos(fields[1][0]);
    if (!is_lexicon_pos(pos)) {
      throw DataError(fmt::format("lexicon line {}: unknown pos '{}'", number, fields[1]));
    }
    Synset synset{std::string(fields[0]), pos, {}};
    if (lex.by_id_.count(synset.id) != 0) {
      throw DataError(fmt::format("lexicon line {}: duplicate synset id '{}'", number,
                                  synset.id));
    }
    std::set<std::string_view> seen;
    for (auto lemma : split(fields[2], ',')) {
      if (lemma.empty()) continue;
      if (!seen.insert(lemma).second) {
        throw DataError(fmt::format("lexicon line {}: lemma '{}' repeated", number, lemma));
      }
      int& count = lex.sense_count_[{std::string(lemma), pos}];
      ++count;
      synset.members.push_back({std::string(lemma), pos, count});
    }
    if (synset.members.empty()) {
      throw DataError(fmt::format("lexicon line {}: synset '{}' has no members", number,
                                  synset.id));
    }
    lex.by_id_.emplace(synset.id, lex.synsets_.size());
    lex.synsets_.push_back(std::move(synset));
  });
  return lex;
}

Lexicon load_lexicon_file(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  return load_lexicon(in);
}

bool is_eligible_lemma(std::string_view lemma) {
  return lemma.size() >= 3 &&
         std::all_of(lemma.begin(), lemma.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

std::vector<Synset> eligible_synsets(const Lexicon& lexicon) {
  std::vector<Synset> out;
  for (const auto& synset : lexicon.synsets()) {
    if (synset.members.size() < 2) continue;
    bool keep = std::all_of(synset.members.begin(), synset.members.end(), [&](const SenseId& m) {
      return is_eligible_lemma(m.lemma) && lexicon.is_monosemous(m.lemma, m.pos);
    });
    if (keep) out.push_back(synset);
  }
  return out;
}

const std::vector<UnigramKey>* CatVarClusters::cluster_of(const UnigramKey& word) const {
  auto it = index_.find(word);
  return it == index_.end() ? nullptr : &clusters_[it->second];
}

CatVarClusters load_catvar(std::istream& source) {
  CatVarClusters cv;
  for_each_line(source, [&](std::string_view line, std::size_t number) {
    if (is_skippable(line)) return;
    std::vector<UnigramKey> cluster;
    for (auto token : split(line, ',')) {
      UnigramKey key;
      try {
        key = parse_unigram_key(token);
      } catch (const std::invalid_argument& e) {
        throw DataError(fmt::format("catvar line {}: {}", number, e.what()));
      }
      if (cv.index_.count(key) != 0 ||
          std::find(cluster.begin(), cluster.end(), key) != cluster.end()) {
        throw DataError(
            fmt::format("catvar line {}: '{}' already belongs to a cluster", number, key.str()));
      }
      cluster.push_back(std::move(key));
    }
    for (const auto& key : cluster) cv.index_.emplace(key, cv.clusters_.size());
    cv.clusters_.push_back(std::move(cluster));
  });
  return cv;
}

CatVarClusters load_catvar_file(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  return load_catvar(in);
}

int categorial_variation_count(const UnigramKey& word, int present,
                               const CatVarClusters& clusters, const BirthIndex& births) {
  const auto* cluster = clusters.cluster_of(word);
  if (cluster == nullptr) return 0;
  int count = 0;
  for (const auto& other : *cluster) {
    if (other == word) continue;
    auto it = births.find(other);
    if (it != births.end() && it->second <= present) ++count;
  }
  return count;
}

VocabularyFilter corpus_vocabulary(std::span<const Synset> synsets,
                                   const CatVarClusters* clusters) {
  VocabularyFilter vocab;
  for (const auto& synset : synsets) {
    for (const auto& member : synset.members) {
      auto key = member.corpus_key();
      if (clusters != nullptr) {
        if (const auto* cluster = clusters->cluster_of(key)) {
          vocab.insert(cluster->begin(), cluster->end());
        }
      }
      vocab.insert(std::move(key));
    }
  }
  return vocab;
}

}  // namespace wordevo
