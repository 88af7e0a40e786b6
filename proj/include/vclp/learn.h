/*
 * Copyright 2026 The VCLP Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef VCLP_LEARN_H_
#define VCLP_LEARN_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "vclp/table.h"

namespace vclp {

struct BoostParams {
  std::uint32_t trees = 200;
  double learning_rate = 0.025;
  double subsample = 0.5;
  std::uint32_t max_tree_depth = 3;
  std::uint32_t bags = 5;
  // Negatives drawn per positive in every bag.
  double ratio = 10.0;
  std::uint64_t seed = 1;

  // Throws std::invalid_argument when a field is out of range.
  void Validate() const;

  // 200 trees x 5 bags, shrinkage scaled to keep trees * rate constant.
  static BoostParams Desk() { return {}; }
  // 1000 trees, rate 0.005, subsample 0.5, 10 bags.
  static BoostParams Full();
};

struct TreeNode {
  // -1 marks a leaf.
  std::int32_t feature = -1;
  // Rows with x[feature] <= threshold descend left.
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  double value = 0.0;

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

class RegressionTree {
 public:
  RegressionTree() = default;
  explicit RegressionTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {}

  double Predict(std::span<const double> x) const;
  const std::vector<TreeNode>& nodes() const { return nodes_; }

  friend bool operator==(const RegressionTree&, const RegressionTree&) = default;

 private:
  std::vector<TreeNode> nodes_;
};

// Additive logistic model: init + learning_rate * sum of tree outputs.
struct BoostedModel {
  double init = 0.0;
  double learning_rate = 0.0;
  std::vector<RegressionTree> trees;

  double RawScore(std::span<const double> x) const;

  friend bool operator==(const BoostedModel&, const BoostedModel&) = default;
};

// Mean of bagged boosted models. Immutable once fit.
class Ensemble {
 public:
  Ensemble() = default;
  Ensemble(std::size_t feature_count, std::vector<BoostedModel> bags)
      : feature_count_(feature_count), bags_(std::move(bags)) {}

  std::size_t feature_count() const { return feature_count_; }
  const std::vector<BoostedModel>& bags() const { return bags_; }

  // Throws std::invalid_argument on a width mismatch and std::logic_error
  // for an empty ensemble.
  double Score(std::span<const double> x) const;
  std::vector<double> Score(const FeatureTable& table) const;

  // Text dump; numbers use shortest round-trip notation so Load(Save(m))
  // reproduces m bit for bit.
  void Save(std::ostream& out) const;
  // Throws DataError on malformed input.
  static Ensemble Load(std::istream& in);

  friend bool operator==(const Ensemble&, const Ensemble&) = default;

 private:
  std::size_t feature_count_ = 0;
  std::vector<BoostedModel> bags_;
};

// Stochastic gradient boosting with logistic loss on the rows listed in
// `rows` (a multiset of indices into `x`). Every round fits a least-squares
// tree of depth <= max_tree_depth to the residuals y - p on a random
// `subsample` share of the rows, drawn without replacement. When
// `fit_scores` is given it receives the final raw score of every entry of
// `rows`. Throws UntrainableError for single-class input.
BoostedModel FitBoosted(const FeatureTable& x, std::span<const std::uint8_t> labels,
                        std::span<const std::size_t> rows, const BoostParams& params,
                        std::uint64_t seed, std::vector<double>* fit_scores = nullptr);
BoostedModel FitBoosted(const FeatureTable& x, std::span<const std::uint8_t> labels,
                        const BoostParams& params, std::uint64_t seed,
                        std::vector<double>* fit_scores = nullptr);

// One boosted model per bag, each fit on its own Undersample() draw. Bags
// run on up to `jobs` threads; the result does not depend on `jobs`.
Ensemble FitBagged(const FeatureTable& x, std::span<const std::uint8_t> labels,
                   const BoostParams& params, std::size_t jobs = 1);

// Seeds used for bag `bag`: the resample seed and the subsample seed.
std::uint64_t BagSampleSeed(std::uint64_t seed, std::uint32_t bag);
std::uint64_t BagBoostSeed(std::uint64_t seed, std::uint32_t bag);

}  // namespace vclp

#endif  // VCLP_LEARN_H_
