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

#include "vclp/learn.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <limits>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "vclp/errors.h"
#include "vclp/parallel.h"
#include "vclp/random.h"
#include "vclp/sampling.h"

namespace vclp {
namespace {

constexpr double kMinGain = 1e-12;

// Training rows in column-major order with per-feature presorted indices,
// built once per boosted model. `codes` replace each value by its rank among
// the column's distinct values, so comparisons on codes match comparisons on
// values.
struct ColumnData {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;
  std::vector<std::uint32_t> order;
  std::vector<std::uint32_t> codes;
  std::vector<double> distinct;

  double at(std::size_t f, std::size_t i) const { return values[f * rows + i]; }
  std::uint32_t code(std::size_t f, std::size_t i) const { return codes[f * rows + i]; }
  double decode(std::size_t f, std::uint32_t c) const { return distinct[f * rows + c]; }
};

ColumnData Gather(const FeatureTable& x, std::span<const std::size_t> rows) {
  ColumnData data;
  data.rows = rows.size();
  data.cols = x.cols();
  data.values.resize(data.rows * data.cols);
  for (std::size_t i = 0; i < data.rows; ++i) {
    const auto row = x.Row(rows[i]);
    for (std::size_t f = 0; f < data.cols; ++f) data.values[f * data.rows + i] = row[f];
  }
  data.order.resize(data.rows * data.cols);
  for (std::size_t f = 0; f < data.cols; ++f) {
    auto begin = data.order.begin() + static_cast<std::ptrdiff_t>(f * data.rows);
    auto end = begin + static_cast<std::ptrdiff_t>(data.rows);
    std::iota(begin, end, 0u);
    const double* column = data.values.data() + f * data.rows;
    std::stable_sort(begin, end, [column](std::uint32_t a, std::uint32_t b) {
      return column[a] < column[b];
    });
  }
  data.codes.resize(data.rows * data.cols);
  data.distinct.resize(data.rows * data.cols);
  for (std::size_t f = 0; f < data.cols; ++f) {
    const std::uint32_t* order = data.order.data() + f * data.rows;
    std::uint32_t next = 0;
    for (std::size_t j = 0; j < data.rows; ++j) {
      const double v = data.at(f, order[j]);
      if (next == 0 || v > data.decode(f, next - 1)) data.distinct[f * data.rows + next++] = v;
      data.codes[f * data.rows + order[j]] = next - 1;
    }
  }
  return data;
}

double PredictColumn(const std::vector<TreeNode>& nodes, const ColumnData& data,
                     std::size_t i) {
  std::size_t k = 0;
  while (nodes[k].feature >= 0) {
    k = data.at(static_cast<std::size_t>(nodes[k].feature), i) <= nodes[k].threshold
            ? static_cast<std::size_t>(nodes[k].left)
            : static_cast<std::size_t>(nodes[k].right);
  }
  return nodes[k].value;
}

// One sampled row as seen from a feature's presorted order.
struct SampleEntry {
  std::uint32_t code;
  std::uint32_t row;
};

// Per-feature sorted lists restricted to the round's subsample, laid out as
// `cols` runs of `size` entries. Within a run, the rows of each tree node
// occupy one contiguous segment, still sorted by value.
struct SampleLists {
  std::size_t size = 0;
  std::vector<SampleEntry> entries;
  std::vector<SampleEntry> spill;

  SampleEntry* Feature(std::size_t f) { return entries.data() + f * size; }
};

void BuildSampleLists(const ColumnData& data, std::span<const std::int32_t> node_of,
                      std::size_t sample_size, SampleLists& lists) {
  lists.size = sample_size;
  // One spare slot: the branch-free fill below may write one past a run.
  lists.entries.resize(data.cols * sample_size + 1);
  lists.spill.resize(sample_size + 1);
  for (std::size_t f = 0; f < data.cols; ++f) {
    const std::uint32_t* order = data.order.data() + f * data.rows;
    const std::uint32_t* codes = data.codes.data() + f * data.rows;
    SampleEntry* out = lists.Feature(f);
    std::size_t n = 0;
    for (std::size_t j = 0; j < data.rows; ++j) {
      const std::uint32_t i = order[j];
      out[n] = {codes[i], i};
      n += node_of[i] >= 0;
    }
  }
}

struct SplitChoice {
  double gain = kMinGain;
  std::int32_t feature = -1;
  std::uint32_t code = 0;
};

// Scans one node's sorted segment for the best threshold on feature `f`.
// Strict improvement keeps the lowest feature, then the lowest threshold.
void ScanSegment(const SampleEntry* begin, std::size_t count, double sum,
                 std::span<const double> residual, std::span<const double> inverse,
                 std::int32_t f, SplitChoice& best) {
  const double parent = sum * sum * inverse[count];
  double left = 0.0;
  // No code exceeds the initial mark, so the first row never splits.
  std::uint32_t last = std::numeric_limits<std::uint32_t>::max();
  for (std::size_t j = 0; j < count; ++j) {
    const SampleEntry e = begin[j];
    if (e.code > last) {
      const double right = sum - left;
      const double gain =
          left * left * inverse[j] + right * right * inverse[count - j] - parent;
      if (gain > best.gain) {
        best.gain = gain;
        best.feature = f;
        best.code = last;
      }
    }
    left += residual[e.row];
    last = e.code;
  }
}

// Level-wise exact greedy least-squares tree over the sampled rows.
// `node_of[i]` is -1 for rows outside the subsample and 0 for the rest; it
// ends holding each sampled row's leaf.
std::vector<TreeNode> GrowTree(const ColumnData& data, std::span<const double> residual,
                               SampleLists& lists, std::vector<std::int32_t>& node_of,
                               std::uint32_t max_depth) {
  struct Segment {
    std::size_t begin = 0;
    std::size_t count = 0;
    double sum = 0.0;
  };
  std::vector<TreeNode> nodes(1);
  std::vector<Segment> segments(1);
  segments[0].count = lists.size;
  {
    const SampleEntry* rows = lists.Feature(0);
    for (std::size_t j = 0; j < lists.size; ++j) segments[0].sum += residual[rows[j].row];
  }
  // Reciprocals replace the divisions in the scan.
  std::vector<double> inverse(lists.size + 1, 0.0);
  for (std::size_t n = 1; n <= lists.size; ++n) inverse[n] = 1.0 / static_cast<double>(n);

  std::vector<std::int32_t> level{0};
  std::vector<SplitChoice> best;
  for (std::uint32_t depth = 0; depth < max_depth && !level.empty(); ++depth) {
    best.assign(level.size(), SplitChoice{});
    for (std::size_t f = 0; f < data.cols; ++f) {
      const SampleEntry* run = lists.Feature(f);
      for (std::size_t n = 0; n < level.size(); ++n) {
        const Segment& seg = segments[level[n]];
        if (seg.count < 2) continue;
        ScanSegment(run + seg.begin, seg.count, seg.sum, residual, inverse,
                    static_cast<std::int32_t>(f), best[n]);
      }
    }

    std::vector<std::int32_t> next;
    for (std::size_t n = 0; n < level.size(); ++n) {
      if (best[n].feature < 0) continue;
      const std::int32_t k = level[n];
      TreeNode& node = nodes[k];
      node.feature = best[n].feature;
      node.threshold = data.decode(static_cast<std::size_t>(best[n].feature), best[n].code);
      node.left = static_cast<std::int32_t>(nodes.size());
      node.right = node.left + 1;
      nodes.resize(nodes.size() + 2);
      segments.resize(nodes.size());
      next.push_back(nodes[k].left);
      next.push_back(nodes[k].right);

      // Route the node's rows, then split its segment in every run.
      const Segment parent = segments[k];
      Segment& left = segments[nodes[k].left];
      Segment& right = segments[nodes[k].right];
      const std::size_t f = static_cast<std::size_t>(nodes[k].feature);
      const std::uint32_t cut = best[n].code;
      const SampleEntry* rows = lists.Feature(0) + parent.begin;
      for (std::size_t j = 0; j < parent.count; ++j) {
        const bool goes_left = data.code(f, rows[j].row) <= cut;
        node_of[rows[j].row] = goes_left ? nodes[k].left : nodes[k].right;
        (goes_left ? left : right).sum += residual[rows[j].row];
        left.count += goes_left;
      }
      left.begin = parent.begin;
      right.begin = parent.begin + left.count;
      right.count = parent.count - left.count;
      const std::int32_t left_id = nodes[k].left;
      if (depth + 1 == max_depth) continue;
      for (std::size_t g = 0; g < data.cols; ++g) {
        SampleEntry* seg = lists.Feature(g) + parent.begin;
        SampleEntry* spill = lists.spill.data();
        std::size_t nl = 0, nr = 0;
        for (std::size_t j = 0; j < parent.count; ++j) {
          const bool goes_left = node_of[seg[j].row] == left_id;
          seg[nl] = seg[j];
          spill[nr] = seg[j];
          nl += goes_left;
          nr += !goes_left;
        }
        std::copy(spill, spill + nr, seg + nl);
      }
    }
    level = std::move(next);
  }

  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (nodes[k].feature < 0 && segments[k].count > 0) {
      nodes[k].value = segments[k].sum * inverse[segments[k].count];
    }
  }
  return nodes;
}

void WriteNumber(std::ostream& out, double v) { out << FormatNumber(v); }

std::string NextToken(std::istream& in) {
  std::string token;
  if (!(in >> token)) throw DataError("model dump ended unexpectedly");
  return token;
}

void Expect(std::istream& in, const std::string& keyword) {
  const std::string token = NextToken(in);
  if (token != keyword) {
    throw DataError("model dump: expected '" + keyword + "', found '" + token + "'");
  }
}

template <typename T>
T ParseToken(std::istream& in) {
  const std::string token = NextToken(in);
  T value{};
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw DataError("model dump: bad number '" + token + "'");
  }
  return value;
}

}  // namespace

void BoostParams::Validate() const {
  if (trees < 1) throw std::invalid_argument("trees must be >= 1");
  if (!(learning_rate >= 0.0 && learning_rate <= 1.0)) {
    throw std::invalid_argument("learning_rate must lie in [0, 1]");
  }
  if (!(subsample > 0.0 && subsample <= 1.0)) {
    throw std::invalid_argument("subsample must lie in (0, 1]");
  }
  if (max_tree_depth < 1 || max_tree_depth > 16) {
    throw std::invalid_argument("max_tree_depth must lie in [1, 16]");
  }
  if (bags < 1) throw std::invalid_argument("bags must be >= 1");
  if (!(ratio > 0.0)) throw std::invalid_argument("ratio must be positive");
}

BoostParams BoostParams::Full() {
  BoostParams p;
  p.trees = 1000;
  p.learning_rate = 0.005;
  p.subsample = 0.5;
  p.bags = 10;
  return p;
}

double RegressionTree::Predict(std::span<const double> x) const {
  std::size_t k = 0;
  while (nodes_[k].feature >= 0) {
    k = x[static_cast<std::size_t>(nodes_[k].feature)] <= nodes_[k].threshold
            ? static_cast<std::size_t>(nodes_[k].left)
            : static_cast<std::size_t>(nodes_[k].right);
  }
  return nodes_[k].value;
}

double BoostedModel::RawScore(std::span<const double> x) const {
  double score = init;
  for (const auto& tree : trees) score += learning_rate * tree.Predict(x);
  return score;
}

double Ensemble::Score(std::span<const double> x) const {
  if (bags_.empty()) throw std::logic_error("scoring with an empty ensemble");
  if (x.size() != feature_count_) {
    throw std::invalid_argument("feature vector has " + std::to_string(x.size()) +
                                " columns, model expects " +
                                std::to_string(feature_count_));
  }
  double total = 0.0;
  for (const auto& bag : bags_) total += bag.RawScore(x);
  return total / static_cast<double>(bags_.size());
}

namespace {

// A tree re-laid as a complete binary tree of fixed depth, so a row descends
// without data-dependent branches. Leaves above the full depth become
// internal nodes that always go left.
struct CompleteTree {
  std::uint32_t depth = 0;
  std::vector<std::uint32_t> feature;
  std::vector<double> threshold;
  std::vector<double> leaf;
};

std::uint32_t TreeDepth(const std::vector<TreeNode>& nodes, std::size_t k) {
  if (nodes[k].feature < 0) return 0;
  return 1 + std::max(TreeDepth(nodes, static_cast<std::size_t>(nodes[k].left)),
                      TreeDepth(nodes, static_cast<std::size_t>(nodes[k].right)));
}

CompleteTree Complete(const std::vector<TreeNode>& nodes, std::uint32_t depth) {
  CompleteTree t;
  t.depth = depth;
  const std::size_t internal = (std::size_t{1} << depth) - 1;
  t.feature.assign(internal, 0);
  t.threshold.assign(internal, std::numeric_limits<double>::infinity());
  t.leaf.assign(internal + 1, 0.0);
  auto fill = [&](auto&& self, std::size_t src, std::size_t dst, std::uint32_t d) -> void {
    const TreeNode& n = nodes[src];
    if (d == depth) {
      t.leaf[dst - internal] = n.value;
      return;
    }
    if (n.feature < 0) {
      self(self, src, 2 * dst + 1, d + 1);
      return;
    }
    t.feature[dst] = static_cast<std::uint32_t>(n.feature);
    t.threshold[dst] = n.threshold;
    self(self, static_cast<std::size_t>(n.left), 2 * dst + 1, d + 1);
    self(self, static_cast<std::size_t>(n.right), 2 * dst + 2, d + 1);
  };
  fill(fill, 0, 0, 0);
  return t;
}

}  // namespace

std::vector<double> Ensemble::Score(const FeatureTable& table) const {
  if (bags_.empty()) throw std::logic_error("scoring with an empty ensemble");
  if (table.cols() != feature_count_) {
    throw std::invalid_argument("feature table has " + std::to_string(table.cols()) +
                                " columns, model expects " +
                                std::to_string(feature_count_));
  }
  constexpr std::uint32_t kMaxCompleteDepth = 10;
  // Blocks of rows stay cache resident while every tree walks them; sums
  // follow the same order as Score(row), so results are bit-identical.
  constexpr std::size_t kBlock = 64;
  const std::size_t n = table.rows();
  std::vector<double> scores(n, 0.0);
  std::array<double, kBlock> bag_score;
  for (const auto& bag : bags_) {
    std::vector<CompleteTree> complete;
    bool flat = true;
    for (const auto& tree : bag.trees) {
      const std::uint32_t depth = TreeDepth(tree.nodes(), 0);
      if (depth > kMaxCompleteDepth) {
        flat = false;
        break;
      }
      complete.push_back(Complete(tree.nodes(), depth));
    }
    for (std::size_t start = 0; start < n; start += kBlock) {
      const std::size_t end = std::min(n, start + kBlock);
      std::fill(bag_score.begin(), bag_score.end(), bag.init);
      for (std::size_t t = 0; t < bag.trees.size(); ++t) {
        for (std::size_t i = start; i < end; ++i) {
          const auto row = table.Row(i);
          double value;
          if (flat) {
            const CompleteTree& tree = complete[t];
            std::size_t k = 0;
            for (std::uint32_t d = 0; d < tree.depth; ++d) {
              k = 2 * k + 2 - (row[tree.feature[k]] <= tree.threshold[k]);
            }
            value = tree.leaf[k - ((std::size_t{1} << tree.depth) - 1)];
          } else {
            value = bag.trees[t].Predict(row);
          }
          bag_score[i - start] += bag.learning_rate * value;
        }
      }
      for (std::size_t i = start; i < end; ++i) scores[i] += bag_score[i - start];
    }
  }
  for (auto& v : scores) v /= static_cast<double>(bags_.size());
  return scores;
}

void Ensemble::Save(std::ostream& out) const {
  out << "vclp-ensemble 1\n";
  out << "features " << feature_count_ << "\n";
  out << "bags " << bags_.size() << "\n";
  for (std::size_t b = 0; b < bags_.size(); ++b) {
    const auto& bag = bags_[b];
    out << "bag " << b << " init ";
    WriteNumber(out, bag.init);
    out << " learning_rate ";
    WriteNumber(out, bag.learning_rate);
    out << " trees " << bag.trees.size() << "\n";
    for (std::size_t t = 0; t < bag.trees.size(); ++t) {
      const auto& nodes = bag.trees[t].nodes();
      out << "tree " << t << " nodes " << nodes.size() << "\n";
      for (const auto& n : nodes) {
        out << n.feature << ' ';
        WriteNumber(out, n.threshold);
        out << ' ' << n.left << ' ' << n.right << ' ';
        WriteNumber(out, n.value);
        out << '\n';
      }
    }
  }
  out << "end\n";
}

Ensemble Ensemble::Load(std::istream& in) {
  Expect(in, "vclp-ensemble");
  if (ParseToken<int>(in) != 1) throw DataError("unsupported model dump version");
  Expect(in, "features");
  const auto features = ParseToken<std::size_t>(in);
  Expect(in, "bags");
  const auto bag_count = ParseToken<std::size_t>(in);
  std::vector<BoostedModel> bags(bag_count);
  for (std::size_t b = 0; b < bag_count; ++b) {
    Expect(in, "bag");
    if (ParseToken<std::size_t>(in) != b) throw DataError("model dump: bag out of order");
    Expect(in, "init");
    bags[b].init = ParseToken<double>(in);
    Expect(in, "learning_rate");
    bags[b].learning_rate = ParseToken<double>(in);
    Expect(in, "trees");
    const auto tree_count = ParseToken<std::size_t>(in);
    for (std::size_t t = 0; t < tree_count; ++t) {
      Expect(in, "tree");
      if (ParseToken<std::size_t>(in) != t) throw DataError("model dump: tree out of order");
      Expect(in, "nodes");
      const auto node_count = ParseToken<std::size_t>(in);
      if (node_count == 0) throw DataError("model dump: empty tree");
      std::vector<TreeNode> nodes(node_count);
      for (auto& n : nodes) {
        n.feature = ParseToken<std::int32_t>(in);
        n.threshold = ParseToken<double>(in);
        n.left = ParseToken<std::int32_t>(in);
        n.right = ParseToken<std::int32_t>(in);
        n.value = ParseToken<double>(in);
      }
      for (std::size_t k = 0; k < node_count; ++k) {
        const auto& n = nodes[k];
        if (n.feature < 0) continue;
        const auto size = static_cast<std::int32_t>(node_count);
        if (static_cast<std::size_t>(n.feature) >= features || n.left <= static_cast<std::int32_t>(k) ||
            n.right <= static_cast<std::int32_t>(k) || n.left >= size || n.right >= size) {
          throw DataError("model dump: invalid node record");
        }
      }
      bags[b].trees.emplace_back(std::move(nodes));
    }
  }
  Expect(in, "end");
  return Ensemble(features, std::move(bags));
}

BoostedModel FitBoosted(const FeatureTable& x, std::span<const std::uint8_t> labels,
                        std::span<const std::size_t> rows, const BoostParams& params,
                        std::uint64_t seed, std::vector<double>* fit_scores) {
  params.Validate();
  if (labels.size() != x.rows()) throw std::invalid_argument("label count mismatch");
  const std::size_t m = rows.size();
  std::size_t positives = 0;
  for (std::size_t r : rows) positives += labels[r] != 0;
  if (positives == 0 || positives == m) {
    throw UntrainableError("boosting needs both classes in the training rows");
  }

  const ColumnData data = Gather(x, rows);
  std::vector<double> target(m);
  for (std::size_t i = 0; i < m; ++i) target[i] = labels[rows[i]] != 0 ? 1.0 : 0.0;

  BoostedModel model;
  model.init = std::log(static_cast<double>(positives) / static_cast<double>(m - positives));
  model.learning_rate = params.learning_rate;
  model.trees.reserve(params.trees);

  std::vector<double> score(m, model.init);
  std::vector<double> residual(m);
  std::vector<std::int32_t> node_of(m);
  std::vector<std::uint32_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0u);
  const std::size_t sample_size = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::floor(params.subsample * static_cast<double>(m))), 1, m);
  Rng rng(seed);
  SampleLists lists;

  for (std::uint32_t round = 0; round < params.trees; ++round) {
    for (std::size_t i = 0; i < m; ++i) {
      residual[i] = target[i] - 1.0 / (1.0 + std::exp(-score[i]));
    }
    if (sample_size < m) {
      for (std::size_t k = 0; k < sample_size; ++k) {
        std::swap(perm[k], perm[k + UniformIndex(rng, m - k)]);
      }
      std::fill(node_of.begin(), node_of.end(), -1);
      for (std::size_t k = 0; k < sample_size; ++k) node_of[perm[k]] = 0;
    } else {
      std::fill(node_of.begin(), node_of.end(), 0);
    }

    BuildSampleLists(data, node_of, sample_size, lists);
    std::vector<TreeNode> nodes =
        GrowTree(data, residual, lists, node_of, params.max_tree_depth);
    for (std::size_t i = 0; i < m; ++i) {
      score[i] += model.learning_rate * PredictColumn(nodes, data, i);
    }
    model.trees.emplace_back(std::move(nodes));
  }
  if (fit_scores != nullptr) *fit_scores = std::move(score);
  return model;
}

BoostedModel FitBoosted(const FeatureTable& x, std::span<const std::uint8_t> labels,
                        const BoostParams& params, std::uint64_t seed,
                        std::vector<double>* fit_scores) {
  std::vector<std::size_t> rows(x.rows());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return FitBoosted(x, labels, rows, params, seed, fit_scores);
}

std::uint64_t BagSampleSeed(std::uint64_t seed, std::uint32_t bag) {
  return MixSeed(seed, 2 * static_cast<std::uint64_t>(bag));
}

std::uint64_t BagBoostSeed(std::uint64_t seed, std::uint32_t bag) {
  return MixSeed(seed, 2 * static_cast<std::uint64_t>(bag) + 1);
}

Ensemble FitBagged(const FeatureTable& x, std::span<const std::uint8_t> labels,
                   const BoostParams& params, std::size_t jobs) {
  params.Validate();
  std::vector<BoostedModel> bags(params.bags);
  ParallelFor(params.bags, jobs, [&](std::size_t b) {
    const auto bag = static_cast<std::uint32_t>(b);
    const auto rows = Undersample(labels, params.ratio, BagSampleSeed(params.seed, bag));
    bags[b] = FitBoosted(x, labels, rows, params, BagBoostSeed(params.seed, bag));
  });
  return Ensemble(x.cols(), std::move(bags));
}

}  // namespace vclp
