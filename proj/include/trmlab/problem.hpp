#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace trmlab {

struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TreeMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Prompt set with its distribution P(x).
struct PromptSet {
  std::vector<std::string> ids;
  std::vector<double> probs;

  std::size_t size() const { return ids.size(); }

  // Single prompt with probability 1.
  static PromptSet single(std::string id = "prompt0") {
    return PromptSet{{std::move(id)}, {1.0}};
  }
};

std::uint64_t default_trajectory_budget();  // TRMLAB_MAX_TRAJECTORIES or 10^7

// Vocabulary size, horizon and prompt distribution of one enumeration
// problem.  `validate` enforces the probability simplex and the enumeration
// budget (prompts * V^T complete trajectories).
struct ProblemShape {
  int vocab_size = 2;
  int horizon = 1;
  PromptSet prompts = PromptSet::single();
  std::uint64_t max_trajectories = default_trajectory_budget();

  void validate() const;
  std::uint64_t leaves_per_prompt() const;  // V^T, validated against budget
  std::uint64_t total_leaves() const;
};

// Complete enumeration of contexts (x, y_<t) for t = 1..T.
//
// Node order is the serialization contract: prompt-major, depth-major,
// lexicographic prefix within a depth.  Per prompt, depth t holds V^(t-1)
// contexts; a context's children live at consecutive offsets in the next
// depth block, so parent/child hops are index arithmetic.  Leaves (complete
// trajectories) are ordered prompt-major then lexicographic in y_1..y_T.
class ContextTree {
 public:
  static std::shared_ptr<const ContextTree> build(const ProblemShape& shape);

  const ProblemShape& shape() const { return shape_; }
  int vocab_size() const { return shape_.vocab_size; }
  int horizon() const { return shape_.horizon; }
  std::size_t num_prompts() const { return shape_.prompts.size(); }

  std::size_t num_nodes() const { return depth_.size(); }
  std::size_t nodes_per_prompt() const { return nodes_per_prompt_; }
  std::uint64_t num_leaves() const { return num_leaves_; }
  std::uint64_t leaves_per_prompt() const { return leaves_per_prompt_; }

  int depth(std::size_t node) const { return depth_[node]; }
  std::int64_t parent(std::size_t node) const { return parent_[node]; }
  int edge_token(std::size_t node) const { return edge_token_[node]; }
  int prompt_of(std::size_t node) const { return prompt_of_[node]; }

  // First node of the depth-t block for a prompt (t in 1..T).
  std::size_t depth_block_begin(int prompt, int t) const {
    return static_cast<std::size_t>(prompt) * nodes_per_prompt_ + depth_offset_[t - 1];
  }
  std::size_t depth_block_size(int t) const { return depth_size_[t - 1]; }

  // Child reached from `node` by `token`; node must have depth < T.
  std::size_t child(std::size_t node, int token) const;

  // Context visited at step t (1..T) on the way to leaf `leaf_index` of
  // `prompt` (leaf_index in [0, V^T)).
  std::size_t context_at(int prompt, std::uint64_t leaf_index, int t) const;

  // Token emitted at step t (1..T) on the way to leaf `leaf_index`.
  int token_at(std::uint64_t leaf_index, int t) const;

  std::uint64_t leaf_id(int prompt, std::uint64_t leaf_index) const {
    return static_cast<std::uint64_t>(prompt) * leaves_per_prompt_ + leaf_index;
  }

  bool same_shape(const ContextTree& other) const;

 private:
  explicit ContextTree(const ProblemShape& shape);

  ProblemShape shape_;
  std::size_t nodes_per_prompt_ = 0;
  std::uint64_t leaves_per_prompt_ = 0;
  std::uint64_t num_leaves_ = 0;
  std::vector<std::uint64_t> depth_offset_;  // per depth, offset within a prompt block
  std::vector<std::uint64_t> depth_size_;    // per depth, V^(t-1)
  std::vector<std::uint64_t> pow_v_;         // V^0 .. V^T
  std::vector<std::int32_t> depth_;
  std::vector<std::int64_t> parent_;
  std::vector<std::int32_t> edge_token_;
  std::vector<std::int32_t> prompt_of_;
};

using TreePtr = std::shared_ptr<const ContextTree>;

TreePtr build_context_tree(const ProblemShape& shape);

// One complete trajectory: prompt, tokens y_1..y_T and the visited contexts.
struct Trajectory {
  int prompt = 0;
  std::vector<std::int32_t> tokens;
  std::vector<std::int64_t> context_ids;
  std::uint64_t leaf_id = 0;

  static Trajectory from_leaf(const ContextTree& tree, int prompt, std::uint64_t leaf_index);
};

}  // namespace trmlab
