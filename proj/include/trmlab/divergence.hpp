#pragma once

#include <span>
#include <vector>

#include "trmlab/policy.hpp"

namespace trmlab {

// Token-level total variation: (1/2) sum_v |p(v) - q(v)|.  Symmetric, in [0,1].
double tv_token(std::span<const double> p, std::span<const double> q);

// Token-level KL(p_roll || p_theta), natural log.  Returns +inf where
// absolute continuity fails (p > 0 on a token with q == 0); never throws
// for that case.
double kl_token(std::span<const double> p_roll, std::span<const double> p_theta);

// Pinsker's inequality evaluated in both KL directions.
struct PinskerGap {
  double tv = 0.0;
  double tv_sq = 0.0;
  double kl_half_fwd = 0.0;  // KL(p||q)/2
  double kl_half_rev = 0.0;  // KL(q||p)/2
  double gap_fwd = 0.0;      // kl_half_fwd - tv_sq, >= 0 up to rounding
  double gap_rev = 0.0;
};
PinskerGap pinsker_gap(std::span<const double> p, std::span<const double> q);

// Every divergence quantity for a policy pair, computed exactly.
//
// seq_kl is reported twice: via the chain rule (visitation-weighted sum of
// per-context KLs) and directly between the two leaf distributions.  The two
// are the same mathematical object; the report keeps both so the equality
// stays observable.
struct DivergenceReport {
  std::vector<double> per_context_tv;       // indexed by node id
  std::vector<double> per_context_kl;       // KL(roll||theta) per context
  std::vector<double> per_context_kl_rev;   // KL(theta||roll) per context
  double tv_tok_max = 0.0;
  double kl_tok_max = 0.0;       // max over all contexts, forward direction
  double kl_tok_max_rev = 0.0;
  std::vector<double> marginal_kl;  // KL(d_t^roll || d_t^theta), index t-1
  double seq_kl = 0.0;              // primary value (chain route)
  double seq_kl_chain = 0.0;
  double seq_kl_direct = 0.0;
  bool kl_finite = true;       // forward direction finite at every context
  bool kl_rev_finite = true;

  int horizon() const { return static_cast<int>(marginal_kl.size()); }
};

DivergenceReport divergence_report(const TabularPolicy& roll, const TabularPolicy& theta);

// Total variation between the step-t context marginals of the two policies,
// for t = 1..T.  Used by the simulation-lemma checks.
std::vector<double> marginal_tv(const TabularPolicy& roll, const TabularPolicy& theta);

}  // namespace trmlab
