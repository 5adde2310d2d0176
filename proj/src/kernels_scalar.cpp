#include "trmlab/kernels.hpp"

#include <limits>

namespace trmlab::kernels {
namespace {

double sum_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double max_scalar(const double* x, std::size_t n) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] > m) m = x[i];
  }
  return m;
}

double abs_diff_sum_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - y[i];
    acc += d < 0.0 ? -d : d;
  }
  return acc;
}

double kl_weighted_diff_scalar(const double* w, const double* lp, const double* lq,
                               std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i] != 0.0) acc += w[i] * (lp[i] - lq[i]);
  }
  return acc;
}

double diff_dot_scalar(const double* p, const double* q, const double* w, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += (p[i] - q[i]) * w[i];
  return acc;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{sum_scalar,        dot_scalar,      max_scalar, abs_diff_sum_scalar,
                       kl_weighted_diff_scalar, diff_dot_scalar, axpy_scalar, "scalar"};
  return ops;
}

}  // namespace trmlab::kernels
