#include "trmlab/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace trmlab::kernels {
namespace {

const Ops* select() {
  const char* env = std::getenv("TRMLAB_KERNELS");
  if (env != nullptr) {
    if (std::strcmp(env, "scalar") == 0) return &scalar_ops();
#if TRMLAB_WITH_AVX2
    if (std::strcmp(env, "avx2") == 0) {
      if (!__builtin_cpu_supports("avx2"))
        throw std::runtime_error("TRMLAB_KERNELS=avx2 but the CPU lacks AVX2");
      return &avx2_ops();
    }
#endif
    throw std::runtime_error(std::string("unknown TRMLAB_KERNELS value: ") + env);
  }
#if TRMLAB_WITH_AVX2
  if (__builtin_cpu_supports("avx2")) return &avx2_ops();
#endif
  return &scalar_ops();
}

}  // namespace

const Ops& active() {
  static const Ops* chosen = select();
  return *chosen;
}

std::string active_name() { return active().name; }

}  // namespace trmlab::kernels
