#include "trmlab/kernels.hpp"

#if TRMLAB_WITH_AVX2

#include <immintrin.h>

#include <limits>

namespace trmlab::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_max_sd(lo, swapped));
}

double sum_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double total = hsum(acc);
  for (; i < n; ++i) total += x[i];
  return total;
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
  double total = hsum(acc);
  for (; i < n; ++i) total += x[i] * y[i];
  return total;
}

double max_avx2(const double* x, std::size_t n) {
  double m = -std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  if (n >= 4) {
    __m256d acc = _mm256_set1_pd(m);
    for (; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, _mm256_loadu_pd(x + i));
    m = hmax(acc);
  }
  for (; i < n; ++i) {
    if (x[i] > m) m = x[i];
  }
  return m;
}

double abs_diff_sum_avx2(const double* x, const double* y, std::size_t n) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign_mask, d));
  }
  double total = hsum(acc);
  for (; i < n; ++i) {
    const double d = x[i] - y[i];
    total += d < 0.0 ? -d : d;
  }
  return total;
}

double kl_weighted_diff_avx2(const double* w, const double* lp, const double* lq,
                             std::size_t n) {
  // Lanes with w == 0 must contribute exactly 0 even when lp/lq are -inf,
  // so the product is blended out before accumulation.
  const __m256d zero = _mm256_setzero_pd();
  __m256d acc = zero;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d wv = _mm256_loadu_pd(w + i);
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(lp + i), _mm256_loadu_pd(lq + i));
    __m256d term = _mm256_mul_pd(wv, d);
    __m256d live = _mm256_cmp_pd(wv, zero, _CMP_NEQ_OQ);
    acc = _mm256_add_pd(acc, _mm256_and_pd(term, live));
  }
  double total = hsum(acc);
  for (; i < n; ++i) {
    if (w[i] != 0.0) total += w[i] * (lp[i] - lq[i]);
  }
  return total;
}

double diff_dot_avx2(const double* p, const double* q, const double* w, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(p + i), _mm256_loadu_pd(q + i));
    acc = _mm256_fmadd_pd(d, _mm256_loadu_pd(w + i), acc);
  }
  double total = hsum(acc);
  for (; i < n; ++i) total += (p[i] - q[i]) * w[i];
  return total;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d yv = _mm256_loadu_pd(y + i);
    yv = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), yv);
    _mm256_storeu_pd(y + i, yv);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops ops{sum_avx2,        dot_avx2,      max_avx2, abs_diff_sum_avx2,
                       kl_weighted_diff_avx2, diff_dot_avx2, axpy_avx2, "avx2"};
  return ops;
}

}  // namespace trmlab::kernels

#endif  // TRMLAB_WITH_AVX2
