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

#ifndef WORDEVO_MODEL_HPP_
#define WORDEVO_MODEL_HPP_

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "wordevo/features.hpp"

namespace wordevo {

inline constexpr double kVarianceFloor = 1e-9;

struct GaussianParams {
  double mean = 0.0;
  double variance = 1.0;
  std::size_t sample_count = 0;

  bool operator==(const GaussianParams&) const = default;
};

template <typename Scalar>
Scalar gaussian_log_pdf(Scalar mean, Scalar variance, Scalar x) {
  const Scalar d = x - mean;
  return Scalar(-0.5) * std::log(Scalar(2) * std::numbers::pi_v<Scalar> * variance) -
         d * d / (Scalar(2) * variance);
}

inline double gaussian_log_pdf(const GaussianParams& p, double x) {
  return gaussian_log_pdf(p.mean, p.variance, x);
}

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

// Thrown when a class has no training vectors.
class UnfittableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ScoreMode {
  full,             // every dimension contributes
  skip_identical,   // dimensions with equal class Gaussians are left out
};

// Gaussian naive Bayes over winner (class 1) / loser (class 0). Every scalar
// feature and every trigram dimension gets one Gaussian per class.
class NaiveBayesModel {
 public:
  // Priors are add-one smoothed, variances are unbiased and floored.
  // Vectors are put in canonical (synset, sense) order first, so any
  // permutation of the input yields bit-identical parameters.
  static NaiveBayesModel fit(std::span<const FeatureVector> training,
                             FeatureMask mask = FeatureMask::all(),
                             double variance_floor = kVarianceFloor);

  // P(winner | features), with the two class scores normalized per word.
  double win_probability(const FeatureVector& v, ScoreMode mode = ScoreMode::full) const;
  double log_odds(const FeatureVector& v, ScoreMode mode = ScoreMode::full) const;

  FeatureMask mask() const { return mask_; }
  double variance_floor() const { return variance_floor_; }
  double prior(int cls) const { return prior_.at(static_cast<std::size_t>(cls)); }
  std::size_t class_count(int cls) const { return count_.at(static_cast<std::size_t>(cls)); }

  const std::vector<Feature>& scalar_features() const { return scalar_features_; }
  GaussianParams scalar_params(std::size_t i, int cls) const;

  const std::vector<std::string>& trigram_index() const { return trigrams_; }
  GaussianParams trigram_params(std::size_t d, int cls) const;

  nlohmann::json to_json() const;
  static NaiveBayesModel from_json(const nlohmann::json& j);

  bool operator==(const NaiveBayesModel& other) const;

 private:
  void finalize();

  FeatureMask mask_ = FeatureMask::all();
  double variance_floor_ = kVarianceFloor;
  std::array<std::size_t, 2> count_{};
  std::array<double, 2> prior_{0.5, 0.5};

  std::vector<Feature> scalar_features_;
  std::array<Eigen::VectorXd, 2> scalar_mean_;
  std::array<Eigen::VectorXd, 2> scalar_var_;

  std::vector<std::string> trigrams_;  // sorted
  std::array<Eigen::VectorXd, 2> trigram_mean_;
  std::array<Eigen::VectorXd, 2> trigram_var_;

  // Derived on fit/load.
  std::unordered_map<std::string, std::size_t> trigram_pos_;
  std::vector<bool> trigram_identical_;
  // Log-odds contribution of every trigram dimension at x = 0, indexed by
  // ScoreMode.
  std::array<CompensatedSum, 2> absent_{};
};

}  // namespace wordevo

#endif  // WORDEVO_MODEL_HPP_
