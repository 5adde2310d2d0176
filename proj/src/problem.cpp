#include "trmlab/problem.hpp"

#include <cmath>
#include <cstdlib>

#include "trmlab/tolerances.hpp"

namespace trmlab {

std::uint64_t default_trajectory_budget() {
  static const std::uint64_t budget = [] {
    const char* env = std::getenv("TRMLAB_MAX_TRAJECTORIES");
    if (env != nullptr) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && v > 0) return static_cast<std::uint64_t>(v);
    }
    return static_cast<std::uint64_t>(10'000'000);
  }();
  return budget;
}

void ProblemShape::validate() const {
  if (vocab_size < 2) throw std::invalid_argument("vocab_size must be >= 2");
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (prompts.size() == 0) throw std::invalid_argument("at least one prompt required");
  if (prompts.ids.size() != prompts.probs.size())
    throw std::invalid_argument("prompt ids/probs size mismatch");
  double total = 0.0;
  for (double p : prompts.probs) {
    if (p < 0.0) throw std::invalid_argument("prompt probabilities must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > tol::kRowSum)
    throw std::invalid_argument("prompt probabilities must sum to 1");
  total_leaves();  // throws BudgetError when out of budget
}

std::uint64_t ProblemShape::leaves_per_prompt() const {
  std::uint64_t acc = 1;
  for (int t = 0; t < horizon; ++t) {
    if (acc > max_trajectories / static_cast<std::uint64_t>(vocab_size) + 1)
      throw BudgetError("enumeration budget exceeded: V^T = " + std::to_string(vocab_size) +
                        "^" + std::to_string(horizon) + " > " +
                        std::to_string(max_trajectories));
    acc *= static_cast<std::uint64_t>(vocab_size);
  }
  return acc;
}

std::uint64_t ProblemShape::total_leaves() const {
  const std::uint64_t per_prompt = leaves_per_prompt();
  const std::uint64_t total = per_prompt * prompts.size();
  if (per_prompt != 0 && total / per_prompt != prompts.size())
    throw BudgetError("enumeration budget exceeded: leaf count overflows");
  if (total > max_trajectories)
    throw BudgetError("enumeration budget exceeded: " + std::to_string(prompts.size()) +
                      " * " + std::to_string(vocab_size) + "^" + std::to_string(horizon) +
                      " = " + std::to_string(total) + " > " +
                      std::to_string(max_trajectories));
  return total;
}

ContextTree::ContextTree(const ProblemShape& shape) : shape_(shape) {
  shape_.validate();
  const int V = shape_.vocab_size;
  const int T = shape_.horizon;
  const std::size_t P = shape_.prompts.size();

  pow_v_.resize(static_cast<std::size_t>(T) + 1);
  pow_v_[0] = 1;
  for (int t = 1; t <= T; ++t) pow_v_[t] = pow_v_[t - 1] * static_cast<std::uint64_t>(V);
  leaves_per_prompt_ = pow_v_[T];
  num_leaves_ = leaves_per_prompt_ * P;

  depth_offset_.resize(T);
  depth_size_.resize(T);
  std::uint64_t offset = 0;
  for (int t = 1; t <= T; ++t) {
    depth_offset_[t - 1] = offset;
    depth_size_[t - 1] = pow_v_[t - 1];
    offset += pow_v_[t - 1];
  }
  nodes_per_prompt_ = offset;

  const std::size_t total_nodes = nodes_per_prompt_ * P;
  depth_.resize(total_nodes);
  parent_.resize(total_nodes);
  edge_token_.resize(total_nodes);
  prompt_of_.resize(total_nodes);

  for (std::size_t p = 0; p < P; ++p) {
    const std::size_t base = p * nodes_per_prompt_;
    for (int t = 1; t <= T; ++t) {
      const std::size_t block = base + depth_offset_[t - 1];
      const std::uint64_t count = depth_size_[t - 1];
      for (std::uint64_t k = 0; k < count; ++k) {
        const std::size_t node = block + k;
        depth_[node] = t;
        prompt_of_[node] = static_cast<std::int32_t>(p);
        if (t == 1) {
          parent_[node] = -1;
          edge_token_[node] = -1;
        } else {
          parent_[node] = static_cast<std::int64_t>(base + depth_offset_[t - 2] + k / V);
          edge_token_[node] = static_cast<std::int32_t>(k % V);
        }
      }
    }
  }
}

std::shared_ptr<const ContextTree> ContextTree::build(const ProblemShape& shape) {
  return std::shared_ptr<const ContextTree>(new ContextTree(shape));
}

TreePtr build_context_tree(const ProblemShape& shape) { return ContextTree::build(shape); }

std::size_t ContextTree::child(std::size_t node, int token) const {
  const int t = depth_[node];
  const std::size_t base =
      static_cast<std::size_t>(prompt_of_[node]) * nodes_per_prompt_;
  const std::uint64_t within = node - base - depth_offset_[t - 1];
  return base + depth_offset_[t] + within * static_cast<std::uint64_t>(shape_.vocab_size) +
         static_cast<std::uint64_t>(token);
}

std::size_t ContextTree::context_at(int prompt, std::uint64_t leaf_index, int t) const {
  // The depth-t context is addressed by the length-(t-1) prefix of the leaf,
  // i.e. the leading base-V digits.
  const std::uint64_t prefix = leaf_index / pow_v_[shape_.horizon - (t - 1)];
  return static_cast<std::size_t>(prompt) * nodes_per_prompt_ + depth_offset_[t - 1] + prefix;
}

int ContextTree::token_at(std::uint64_t leaf_index, int t) const {
  return static_cast<int>((leaf_index / pow_v_[shape_.horizon - t]) %
                          static_cast<std::uint64_t>(shape_.vocab_size));
}

bool ContextTree::same_shape(const ContextTree& other) const {
  if (this == &other) return true;
  return shape_.vocab_size == other.shape_.vocab_size &&
         shape_.horizon == other.shape_.horizon &&
         shape_.prompts.ids == other.shape_.prompts.ids &&
         shape_.prompts.probs == other.shape_.prompts.probs;
}

Trajectory Trajectory::from_leaf(const ContextTree& tree, int prompt,
                                 std::uint64_t leaf_index) {
  Trajectory traj;
  traj.prompt = prompt;
  const int T = tree.horizon();
  traj.tokens.resize(T);
  traj.context_ids.resize(T);
  for (int t = 1; t <= T; ++t) {
    traj.tokens[t - 1] = tree.token_at(leaf_index, t);
    traj.context_ids[t - 1] = static_cast<std::int64_t>(tree.context_at(prompt, leaf_index, t));
  }
  traj.leaf_id = tree.leaf_id(prompt, leaf_index);
  return traj;
}

}  // namespace trmlab
