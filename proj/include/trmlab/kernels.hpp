#pragma once

#include <cstddef>
#include <string>

// Arithmetic inner loops, factored out of the math modules.
//
// Every reduction the lab leans on (expectations over leaf arrays, KL/TV
// sums over probability tables, gradient accumulation) funnels through this
// table of function pointers.  Two implementations exist: a scalar reference
// and an AVX2 variant.  The active table is selected once at startup from
// CPU capabilities; TRMLAB_KERNELS=scalar|avx2 overrides the choice.  The
// two variants are equivalence-tested against each other; they may differ
// only by reduction-order rounding.
//
// Conventions: entries of `w` equal to zero contribute exactly zero to
// kl_weighted_diff, even when the matching log-prob is -inf (0 * log 0 = 0).
// Infinities otherwise propagate as IEEE dictates.

namespace trmlab::kernels {

struct Ops {
  // sum_i x[i]
  double (*sum)(const double* x, std::size_t n);
  // sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // max_i x[i]; -inf for n == 0
  double (*max)(const double* x, std::size_t n);
  // sum_i |x[i] - y[i]|
  double (*abs_diff_sum)(const double* x, const double* y, std::size_t n);
  // sum_i w[i] * (lp[i] - lq[i]), with w[i] == 0 contributing 0
  double (*kl_weighted_diff)(const double* w, const double* lp, const double* lq, std::size_t n);
  // sum_i (p[i] - q[i]) * w[i]
  double (*diff_dot)(const double* p, const double* q, const double* w, std::size_t n);
  // y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  const char* name;
};

const Ops& scalar_ops();

#if TRMLAB_WITH_AVX2
const Ops& avx2_ops();
#endif

// Runtime-selected table (CPU detection + env override, decided once).
const Ops& active();
std::string active_name();

}  // namespace trmlab::kernels
