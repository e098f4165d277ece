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

#include "wordevo/model.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <fmt/format.h>

namespace wordevo {

namespace {

constexpr const char* kModelFormat = "wordevo-naive-bayes/1";

// Log-odds contribution of one dimension at value x, added as separate
// summands so that large floored terms cancel exactly.
void add_dimension(CompensatedSum& acc, double m0, double v0, double m1, double v1, double x) {
  acc.add(0.5 * std::log(v0 / v1));
  const double d1 = x - m1;
  const double d0 = x - m0;
  acc.add(-(d1 * d1) / (2.0 * v1));
  acc.add((d0 * d0) / (2.0 * v0));
}

// Moves a binary dimension from x = 0 to x = 1.
void flip_dimension(CompensatedSum& acc, double m0, double v0, double m1, double v1) {
  acc.add(m1 * m1 / (2.0 * v1));
  acc.add(-((1.0 - m1) * (1.0 - m1)) / (2.0 * v1));
  acc.add(-(m0 * m0) / (2.0 * v0));
  acc.add((1.0 - m0) * (1.0 - m0) / (2.0 * v0));
}

nlohmann::json params_json(const GaussianParams& p) {
  return {{"mean", p.mean}, {"variance", p.variance}, {"n", p.sample_count}};
}

}  // namespace

NaiveBayesModel NaiveBayesModel::fit(std::span<const FeatureVector> training, FeatureMask mask,
                                     double variance_floor) {
  std::vector<std::size_t> order(training.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = training[a];
    const auto& y = training[b];
    if (x.synset_id != y.synset_id) return x.synset_id < y.synset_id;
    return x.sense < y.sense;
  });

  NaiveBayesModel model;
  model.mask_ = mask;
  model.variance_floor_ = variance_floor;
  std::array<std::vector<std::size_t>, 2> by_class;
  for (auto i : order) {
    const auto& cls = training[i].target_class;
    if (!cls) {
      throw UnfittableError(fmt::format("training vector {} has no class", training[i].sense.str()));
    }
    by_class[static_cast<std::size_t>(*cls)].push_back(i);
  }
  for (int c = 0; c < 2; ++c) {
    if (by_class[static_cast<std::size_t>(c)].empty()) {
      throw UnfittableError(fmt::format("no training vectors of class {}", c));
    }
  }
  const double total = static_cast<double>(training.size());
  for (std::size_t c = 0; c < 2; ++c) {
    model.count_[c] = by_class[c].size();
    model.prior_[c] = (static_cast<double>(model.count_[c]) + 1.0) / (total + 2.0);
  }

  model.scalar_features_ = mask.scalar_features();
  const auto k = static_cast<Eigen::Index>(model.scalar_features_.size());
  for (std::size_t c = 0; c < 2; ++c) {
    const auto n = static_cast<Eigen::Index>(by_class[c].size());
    Eigen::MatrixXd x(n, k);
    for (Eigen::Index r = 0; r < n; ++r) {
      const auto& v = training[by_class[c][static_cast<std::size_t>(r)]];
      for (Eigen::Index j = 0; j < k; ++j) {
        x(r, j) = v.scalar(model.scalar_features_[static_cast<std::size_t>(j)]);
      }
    }
    Eigen::VectorXd mean = x.colwise().mean().transpose();
    Eigen::VectorXd var = Eigen::VectorXd::Constant(k, variance_floor);
    if (n > 1) {
      var = (x.rowwise() - mean.transpose()).array().square().colwise().sum().transpose() /
            static_cast<double>(n - 1);
      var = var.cwiseMax(variance_floor);
    }
    model.scalar_mean_[c] = std::move(mean);
    model.scalar_var_[c] = std::move(var);
  }

  if (mask.has(Feature::unique_ngrams)) {
    std::map<std::string, std::array<std::size_t, 2>> counts;
    for (std::size_t c = 0; c < 2; ++c) {
      for (auto i : by_class[c]) {
        for (const auto& t : training[i].unique_ngrams) ++counts[t][c];
      }
    }
    const auto dims = static_cast<Eigen::Index>(counts.size());
    for (std::size_t c = 0; c < 2; ++c) {
      model.trigram_mean_[c].resize(dims);
      model.trigram_var_[c].resize(dims);
    }
    Eigen::Index d = 0;
    for (const auto& [trigram, kc] : counts) {
      model.trigrams_.push_back(trigram);
      for (std::size_t c = 0; c < 2; ++c) {
        const double n = static_cast<double>(model.count_[c]);
        const double hits = static_cast<double>(kc[c]);
        model.trigram_mean_[c](d) = hits / n;
        // Unbiased variance of a 0/1 sample with `hits` ones.
        double var = n > 1 ? hits * (n - hits) / (n * (n - 1.0)) : variance_floor;
        model.trigram_var_[c](d) = std::max(var, variance_floor);
      }
      ++d;
    }
  } else {
    for (std::size_t c = 0; c < 2; ++c) {
      model.trigram_mean_[c].resize(0);
      model.trigram_var_[c].resize(0);
    }
  }
  model.finalize();
  return model;
}

void NaiveBayesModel::finalize() {
  trigram_pos_.clear();
  trigram_identical_.assign(trigrams_.size(), false);
  absent_ = {};
  for (std::size_t d = 0; d < trigrams_.size(); ++d) {
    trigram_pos_.emplace(trigrams_[d], d);
    const auto i = static_cast<Eigen::Index>(d);
    const double m0 = trigram_mean_[0](i), v0 = trigram_var_[0](i);
    const double m1 = trigram_mean_[1](i), v1 = trigram_var_[1](i);
    trigram_identical_[d] = m0 == m1 && v0 == v1;
    add_dimension(absent_[static_cast<std::size_t>(ScoreMode::full)], m0, v0, m1, v1, 0.0);
    if (!trigram_identical_[d]) {
      add_dimension(absent_[static_cast<std::size_t>(ScoreMode::skip_identical)], m0, v0, m1, v1,
                    0.0);
    }
  }
}

double NaiveBayesModel::log_odds(const FeatureVector& v, ScoreMode mode) const {
  CompensatedSum acc = absent_[static_cast<std::size_t>(mode)];
  acc.add(std::log(prior_[1]));
  acc.add(-std::log(prior_[0]));
  for (std::size_t j = 0; j < scalar_features_.size(); ++j) {
    const auto i = static_cast<Eigen::Index>(j);
    const double m0 = scalar_mean_[0](i), v0 = scalar_var_[0](i);
    const double m1 = scalar_mean_[1](i), v1 = scalar_var_[1](i);
    if (mode == ScoreMode::skip_identical && m0 == m1 && v0 == v1) continue;
    add_dimension(acc, m0, v0, m1, v1, v.scalar(scalar_features_[j]));
  }
  if (!trigrams_.empty()) {
    for (const auto& t : v.unique_ngrams) {
      auto it = trigram_pos_.find(t);
      if (it == trigram_pos_.end()) continue;  // outside the trained space
      if (mode == ScoreMode::skip_identical && trigram_identical_[it->second]) continue;
      const auto i = static_cast<Eigen::Index>(it->second);
      flip_dimension(acc, trigram_mean_[0](i), trigram_var_[0](i), trigram_mean_[1](i),
                     trigram_var_[1](i));
    }
  }
  return acc.value();
}

double NaiveBayesModel::win_probability(const FeatureVector& v, ScoreMode mode) const {
  const double z = log_odds(v, mode);
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

GaussianParams NaiveBayesModel::scalar_params(std::size_t i, int cls) const {
  const auto c = static_cast<std::size_t>(cls);
  const auto j = static_cast<Eigen::Index>(i);
  return {scalar_mean_.at(c)(j), scalar_var_.at(c)(j), count_.at(c)};
}

GaussianParams NaiveBayesModel::trigram_params(std::size_t d, int cls) const {
  const auto c = static_cast<std::size_t>(cls);
  const auto j = static_cast<Eigen::Index>(d);
  return {trigram_mean_.at(c)(j), trigram_var_.at(c)(j), count_.at(c)};
}

nlohmann::json NaiveBayesModel::to_json() const {
  nlohmann::json features = nlohmann::json::array();
  for (auto f : mask_.features()) features.push_back(std::string(feature_name(f)));
  nlohmann::json scalar = nlohmann::json::array();
  for (std::size_t i = 0; i < scalar_features_.size(); ++i) {
    scalar.push_back({{"feature", std::string(feature_name(scalar_features_[i]))},
                      {"loser", params_json(scalar_params(i, 0))},
                      {"winner", params_json(scalar_params(i, 1))}});
  }
  nlohmann::json trigrams = nlohmann::json::array();
  for (std::size_t d = 0; d < trigrams_.size(); ++d) {
    trigrams.push_back({{"trigram", trigrams_[d]},
                        {"loser", params_json(trigram_params(d, 0))},
                        {"winner", params_json(trigram_params(d, 1))}});
  }
  return {{"format", kModelFormat},
          {"variance_floor", variance_floor_},
          {"features", features},
          {"class_count", {count_[0], count_[1]}},
          {"prior", {prior_[0], prior_[1]}},
          {"scalar", scalar},
          {"trigrams", trigrams}};
}

NaiveBayesModel NaiveBayesModel::from_json(const nlohmann::json& j) {
  if (j.at("format") != kModelFormat) throw std::invalid_argument("not a naive Bayes model file");
  NaiveBayesModel model;
  model.variance_floor_ = j.at("variance_floor");
  auto mask = FeatureMask::none();
  for (const auto& name : j.at("features")) mask = mask.with(parse_feature(name.get<std::string>()));
  model.mask_ = mask;
  for (std::size_t c = 0; c < 2; ++c) {
    model.count_[c] = j.at("class_count").at(c);
    model.prior_[c] = j.at("prior").at(c);
  }
  const auto& scalar = j.at("scalar");
  const auto k = static_cast<Eigen::Index>(scalar.size());
  for (std::size_t c = 0; c < 2; ++c) {
    model.scalar_mean_[c].resize(k);
    model.scalar_var_[c].resize(k);
  }
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto& row = scalar.at(static_cast<std::size_t>(i));
    model.scalar_features_.push_back(parse_feature(row.at("feature").get<std::string>()));
    for (std::size_t c = 0; c < 2; ++c) {
      const auto& p = row.at(c == 0 ? "loser" : "winner");
      model.scalar_mean_[c](i) = p.at("mean");
      model.scalar_var_[c](i) = p.at("variance");
    }
  }
  if (model.scalar_features_ != mask.scalar_features()) {
    throw std::invalid_argument("scalar features do not match the feature list");
  }
  const auto& trigrams = j.at("trigrams");
  const auto dims = static_cast<Eigen::Index>(trigrams.size());
  for (std::size_t c = 0; c < 2; ++c) {
    model.trigram_mean_[c].resize(dims);
    model.trigram_var_[c].resize(dims);
  }
  for (Eigen::Index d = 0; d < dims; ++d) {
    const auto& row = trigrams.at(static_cast<std::size_t>(d));
    model.trigrams_.push_back(row.at("trigram"));
    for (std::size_t c = 0; c < 2; ++c) {
      const auto& p = row.at(c == 0 ? "loser" : "winner");
      model.trigram_mean_[c](d) = p.at("mean");
      model.trigram_var_[c](d) = p.at("variance");
    }
  }
  model.finalize();
  return model;
}

bool NaiveBayesModel::operator==(const NaiveBayesModel& o) const {
  auto same = [](const std::array<Eigen::VectorXd, 2>& a, const std::array<Eigen::VectorXd, 2>& b) {
    for (std::size_t c = 0; c < 2; ++c) {
      if (a[c].size() != b[c].size() || a[c] != b[c]) return false;
    }
    return true;
  };
  return mask_ == o.mask_ && variance_floor_ == o.variance_floor_ && count_ == o.count_ &&
         prior_ == o.prior_ && scalar_features_ == o.scalar_features_ &&
         same(scalar_mean_, o.scalar_mean_) && same(scalar_var_, o.scalar_var_) &&
         trigrams_ == o.trigrams_ && same(trigram_mean_, o.trigram_mean_) &&
         same(trigram_var_, o.trigram_var_);
}

}  // namespace wordevo
