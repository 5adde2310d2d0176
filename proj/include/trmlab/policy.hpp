#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "trmlab/problem.hpp"

namespace trmlab {

// Full conditional token distributions over a context tree, one length-V row
// per context, row-major.  Log-probabilities are cached at construction;
// they are the numerical foundation every divergence and every importance
// ratio is computed from, so the chain-rule and direct routes to the same
// quantity consume identical log values.
//
// `from_logits` is the canonical constructor (softmax rows, full support,
// both KL directions finite).  `from_rows` admits explicit rows including
// zeros; callers of that path get -inf log-probs and must cope with
// infinite KL where absolute continuity fails.
class TabularPolicy {
 public:
  static TabularPolicy from_logits(TreePtr tree, std::vector<double> logits);
  static TabularPolicy from_rows(TreePtr tree, std::vector<double> rows);

  const ContextTree& tree() const { return *tree_; }
  const TreePtr& tree_ptr() const { return tree_; }
  int vocab_size() const { return tree_->vocab_size(); }
  int horizon() const { return tree_->horizon(); }

  std::span<const double> row(std::size_t node) const {
    return {probs_.data() + node * static_cast<std::size_t>(vocab_size()),
            static_cast<std::size_t>(vocab_size())};
  }
  std::span<const double> log_row(std::size_t node) const {
    return {log_probs_.data() + node * static_cast<std::size_t>(vocab_size()),
            static_cast<std::size_t>(vocab_size())};
  }
  const std::vector<double>& table() const { return probs_; }
  const std::vector<double>& log_table() const { return log_probs_; }

  bool has_logits() const { return logits_.has_value(); }
  const std::vector<double>& logits() const { return *logits_; }

  double prob(std::size_t node, int token) const {
    return probs_[node * static_cast<std::size_t>(vocab_size()) + token];
  }
  double log_prob(std::size_t node, int token) const {
    return log_probs_[node * static_cast<std::size_t>(vocab_size()) + token];
  }

  bool full_support() const { return full_support_; }

 private:
  TabularPolicy() = default;

  TreePtr tree_;
  std::vector<double> probs_;
  std::vector<double> log_probs_;
  std::optional<std::vector<double>> logits_;
  bool full_support_ = true;
};

// Policy where every row is uniform.
TabularPolicy uniform_policy(TreePtr tree);

// Logits i.i.d. normal with standard deviation `scale`, rows = softmax.
// scale == 0 yields the uniform policy.  Deterministic in (tree, scale, seed).
TabularPolicy random_softmax_policy(TreePtr tree, double scale, std::uint64_t seed);

// Reward R(x, y) in [0, 1] for every complete trajectory, plus a baseline b.
struct RewardTable {
  std::vector<double> values;  // indexed by global leaf id
  double baseline = 0.0;

  void validate(const ContextTree& tree) const;
};

RewardTable random_rewards(const ContextTree& tree, std::uint64_t seed);
RewardTable constant_rewards(const ContextTree& tree, double value);

// Product of the T conditional probabilities along the trajectory.
double trajectory_probability(const TabularPolicy& policy, const Trajectory& traj);

// Visitation distribution d_t over depth-t contexts (t in 1..T), in node
// order restricted to that depth (prompt-major).  d_1 equals P(x).
std::vector<double> context_visitation(const TabularPolicy& policy, int t);

// Visitation mass for every node (all depths), indexed by node id.
std::vector<double> visitation_all(const TabularPolicy& policy);

// log d for every node; -inf where the mass is zero.
std::vector<double> log_visitation_all(const TabularPolicy& policy);

// Probability of every complete trajectory, indexed by global leaf id.
std::vector<double> leaf_distribution(const TabularPolicy& policy);

// log P(leaf) as the exact sum of cached per-step log-probabilities.
std::vector<double> leaf_log_distribution(const TabularPolicy& policy);

// i.i.d. ancestral samples; bit-deterministic in (policy, n, seed), and
// sample i depends only on (seed, i).
std::vector<Trajectory> sample_trajectories(const TabularPolicy& policy, std::size_t n,
                                            std::uint64_t seed);

void check_same_tree(const TabularPolicy& a, const TabularPolicy& b);

}  // namespace trmlab
