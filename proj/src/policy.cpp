#include "trmlab/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "trmlab/kernels.hpp"
#include "trmlab/rng.hpp"
#include "trmlab/tolerances.hpp"

namespace trmlab {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

TabularPolicy TabularPolicy::from_logits(TreePtr tree, std::vector<double> logits) {
  const std::size_t n = tree->num_nodes() * static_cast<std::size_t>(tree->vocab_size());
  if (logits.size() != n) throw std::invalid_argument("logit table size mismatch");

  TabularPolicy p;
  p.tree_ = std::move(tree);
  p.probs_.resize(n);
  p.log_probs_.resize(n);
  const int V = p.tree_->vocab_size();
  for (std::size_t node = 0; node < p.tree_->num_nodes(); ++node) {
    const double* z = logits.data() + node * V;
    double m = z[0];
    for (int v = 1; v < V; ++v) m = std::max(m, z[v]);
    double denom = 0.0;
    for (int v = 0; v < V; ++v) denom += std::exp(z[v] - m);
    const double log_denom = std::log(denom);
    for (int v = 0; v < V; ++v) {
      const double lp = z[v] - m - log_denom;
      p.log_probs_[node * V + v] = lp;
      p.probs_[node * V + v] = std::exp(lp);
    }
  }
  p.logits_ = std::move(logits);
  p.full_support_ = true;
  return p;
}

TabularPolicy TabularPolicy::from_rows(TreePtr tree, std::vector<double> rows) {
  const std::size_t n = tree->num_nodes() * static_cast<std::size_t>(tree->vocab_size());
  if (rows.size() != n) throw std::invalid_argument("probability table size mismatch");

  TabularPolicy p;
  p.tree_ = std::move(tree);
  const int V = p.tree_->vocab_size();
  for (std::size_t node = 0; node < p.tree_->num_nodes(); ++node) {
    double sum = 0.0;
    for (int v = 0; v < V; ++v) {
      const double x = rows[node * V + v];
      if (!(x >= 0.0)) throw std::invalid_argument("row entries must be nonnegative");
      sum += x;
    }
    if (std::abs(sum - 1.0) > tol::kRowSum)
      throw std::invalid_argument("row must sum to 1 within 1e-12");
  }
  p.log_probs_.resize(n);
  p.full_support_ = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i] == 0.0) {
      p.log_probs_[i] = kNegInf;
      p.full_support_ = false;
    } else {
      p.log_probs_[i] = std::log(rows[i]);
    }
  }
  p.probs_ = std::move(rows);
  return p;
}

TabularPolicy uniform_policy(TreePtr tree) {
  const std::size_t n = tree->num_nodes() * static_cast<std::size_t>(tree->vocab_size());
  return TabularPolicy::from_logits(std::move(tree), std::vector<double>(n, 0.0));
}

TabularPolicy random_softmax_policy(TreePtr tree, double scale, std::uint64_t seed) {
  if (scale < 0.0) throw std::invalid_argument("scale must be >= 0");
  const std::size_t nodes = tree->num_nodes();
  const int V = tree->vocab_size();
  std::vector<double> logits(nodes * static_cast<std::size_t>(V));
  // One stream per context so the table is independent of traversal order.
  for (std::size_t node = 0; node < nodes; ++node) {
    rng::Stream stream(rng::derive(seed, node));
    for (int v = 0; v < V; ++v) logits[node * V + v] = scale * stream.normal();
  }
  return TabularPolicy::from_logits(std::move(tree), std::move(logits));
}

void RewardTable::validate(const ContextTree& tree) const {
  if (values.size() != tree.num_leaves())
    throw std::invalid_argument("reward table size mismatch");
  for (double r : values) {
    if (!(r >= 0.0 && r <= 1.0))
      throw std::invalid_argument("rewards must lie in [0, 1]");
  }
}

RewardTable random_rewards(const ContextTree& tree, std::uint64_t seed) {
  RewardTable rt;
  rt.values.resize(tree.num_leaves());
  for (std::size_t i = 0; i < rt.values.size(); ++i) {
    rng::Stream stream(rng::derive(seed, i));
    rt.values[i] = stream.uniform01();
  }
  return rt;
}

RewardTable constant_rewards(const ContextTree& tree, double value) {
  RewardTable rt;
  rt.values.assign(tree.num_leaves(), value);
  return rt;
}

void check_same_tree(const TabularPolicy& a, const TabularPolicy& b) {
  if (!a.tree().same_shape(b.tree()))
    throw TreeMismatchError("policies live on different context trees");
}

double trajectory_probability(const TabularPolicy& policy, const Trajectory& traj) {
  const ContextTree& tree = policy.tree();
  if (traj.tokens.size() != static_cast<std::size_t>(tree.horizon()) ||
      traj.prompt < 0 || traj.prompt >= static_cast<int>(tree.num_prompts()))
    throw TreeMismatchError("trajectory does not belong to this tree");
  double p = 1.0;
  for (int t = 1; t <= tree.horizon(); ++t) {
    const auto node = static_cast<std::size_t>(traj.context_ids[t - 1]);
    if (node >= tree.num_nodes() || tree.depth(node) != t)
      throw TreeMismatchError("trajectory context ids do not trace a root-to-leaf path");
    p *= policy.prob(node, traj.tokens[t - 1]);
  }
  return p;
}

std::vector<double> visitation_all(const TabularPolicy& policy) {
  const ContextTree& tree = policy.tree();
  const int V = tree.vocab_size();
  std::vector<double> d(tree.num_nodes(), 0.0);
  for (int p = 0; p < static_cast<int>(tree.num_prompts()); ++p) {
    d[tree.depth_block_begin(p, 1)] = tree.shape().prompts.probs[p];
    for (int t = 1; t < tree.horizon(); ++t) {
      const std::size_t begin = tree.depth_block_begin(p, t);
      const std::size_t count = tree.depth_block_size(t);
      for (std::size_t k = 0; k < count; ++k) {
        const std::size_t node = begin + k;
        const double mass = d[node];
        if (mass == 0.0) continue;
        const std::size_t child0 = tree.child(node, 0);
        for (int v = 0; v < V; ++v) d[child0 + v] = mass * policy.prob(node, v);
      }
    }
  }
  return d;
}

std::vector<double> log_visitation_all(const TabularPolicy& policy) {
  const ContextTree& tree = policy.tree();
  const int V = tree.vocab_size();
  std::vector<double> ld(tree.num_nodes(), kNegInf);
  for (int p = 0; p < static_cast<int>(tree.num_prompts()); ++p) {
    const double prompt_prob = tree.shape().prompts.probs[p];
    ld[tree.depth_block_begin(p, 1)] =
        prompt_prob == 0.0 ? kNegInf : std::log(prompt_prob);
    for (int t = 1; t < tree.horizon(); ++t) {
      const std::size_t begin = tree.depth_block_begin(p, t);
      const std::size_t count = tree.depth_block_size(t);
      for (std::size_t k = 0; k < count; ++k) {
        const std::size_t node = begin + k;
        if (ld[node] == kNegInf) continue;
        const std::size_t child0 = tree.child(node, 0);
        for (int v = 0; v < V; ++v) ld[child0 + v] = ld[node] + policy.log_prob(node, v);
      }
    }
  }
  return ld;
}

std::vector<double> context_visitation(const TabularPolicy& policy, int t) {
  const ContextTree& tree = policy.tree();
  if (t < 1 || t > tree.horizon())
    throw std::out_of_range("step index out of range 1..T");
  const std::vector<double> d = visitation_all(policy);
  std::vector<double> out;
  out.reserve(tree.num_prompts() * tree.depth_block_size(t));
  for (int p = 0; p < static_cast<int>(tree.num_prompts()); ++p) {
    const std::size_t begin = tree.depth_block_begin(p, t);
    out.insert(out.end(), d.begin() + begin, d.begin() + begin + tree.depth_block_size(t));
  }
  return out;
}

std::vector<double> leaf_distribution(const TabularPolicy& policy) {
  const ContextTree& tree = policy.tree();
  const int V = tree.vocab_size();
  const std::vector<double> d = visitation_all(policy);
  std::vector<double> leaves(tree.num_leaves());
  for (int p = 0; p < static_cast<int>(tree.num_prompts()); ++p) {
    const std::size_t begin = tree.depth_block_begin(p, tree.horizon());
    const std::size_t count = tree.depth_block_size(tree.horizon());
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t node = begin + k;
      const std::uint64_t leaf0 = tree.leaf_id(p, k * static_cast<std::uint64_t>(V));
      for (int v = 0; v < V; ++v) leaves[leaf0 + v] = d[node] * policy.prob(node, v);
    }
  }
  return leaves;
}

std::vector<double> leaf_log_distribution(const TabularPolicy& policy) {
  const ContextTree& tree = policy.tree();
  const int V = tree.vocab_size();
  const std::vector<double> ld = log_visitation_all(policy);
  std::vector<double> leaves(tree.num_leaves());
  for (int p = 0; p < static_cast<int>(tree.num_prompts()); ++p) {
    const std::size_t begin = tree.depth_block_begin(p, tree.horizon());
    const std::size_t count = tree.depth_block_size(tree.horizon());
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t node = begin + k;
      const std::uint64_t leaf0 = tree.leaf_id(p, k * static_cast<std::uint64_t>(V));
      for (int v = 0; v < V; ++v) leaves[leaf0 + v] = ld[node] + policy.log_prob(node, v);
    }
  }
  return leaves;
}

std::vector<Trajectory> sample_trajectories(const TabularPolicy& policy, std::size_t n,
                                            std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample count must be >= 1");
  const ContextTree& tree = policy.tree();
  const int V = tree.vocab_size();
  const int T = tree.horizon();
  const auto& prompt_probs = tree.shape().prompts.probs;

  std::vector<Trajectory> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    rng::Stream stream(rng::derive(seed, i));
    // Inverse-CDF draw for the prompt, then one per step.
    int prompt = 0;
    {
      double u = stream.uniform01();
      double acc = 0.0;
      for (std::size_t p = 0; p < prompt_probs.size(); ++p) {
        acc += prompt_probs[p];
        if (u < acc || p + 1 == prompt_probs.size()) {
          prompt = static_cast<int>(p);
          break;
        }
      }
    }
    Trajectory traj;
    traj.prompt = prompt;
    traj.tokens.resize(T);
    traj.context_ids.resize(T);
    std::size_t node = tree.depth_block_begin(prompt, 1);
    std::uint64_t leaf_index = 0;
    for (int t = 1; t <= T; ++t) {
      traj.context_ids[t - 1] = static_cast<std::int64_t>(node);
      const double u = stream.uniform01();
      double acc = 0.0;
      int tok = V - 1;
      for (int v = 0; v < V; ++v) {
        acc += policy.prob(node, v);
        if (u < acc) {
          tok = v;
          break;
        }
      }
      traj.tokens[t - 1] = tok;
      leaf_index = leaf_index * static_cast<std::uint64_t>(V) + static_cast<std::uint64_t>(tok);
      if (t < T) node = tree.child(node, tok);
    }
    traj.leaf_id = tree.leaf_id(prompt, leaf_index);
    out.push_back(std::move(traj));
  }
  return out;
}

}  // namespace trmlab
