#include <cstdlib>
#include <cstring>

#include "mim/kernels.hpp"

namespace mim::kernels {
namespace {

Backend* forced_backend() {
  static Backend backend;
  static bool forced = false;
  static bool env_checked = false;
  if (!env_checked) {
    env_checked = true;
    if (const char* env = std::getenv("MIM_KERNELS")) {
      if (std::strcmp(env, "scalar") == 0) {
        backend = Backend::kScalar;
        forced = true;
      } else if (std::strcmp(env, "avx2") == 0) {
        backend = Backend::kAvx2;
        forced = true;
      }
    }
  }
  return forced ? &backend : nullptr;
}

bool& force_flag() {
  static bool f = false;
  return f;
}

Backend& force_value() {
  static Backend b = Backend::kScalar;
  return b;
}

}  // namespace

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
  return detail::avx2_compiled() && __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend active_backend() {
  if (force_flag()) return force_value();
  if (const Backend* env = forced_backend()) {
    if (*env == Backend::kAvx2 && !avx2_supported()) return Backend::kScalar;
    return *env;
  }
  return avx2_supported() ? Backend::kAvx2 : Backend::kScalar;
}

const TableF32& f32() {
  return active_backend() == Backend::kAvx2 ? detail::avx2_f32() : scalar_f32();
}

const char* backend_name(Backend b) {
  return b == Backend::kAvx2 ? "avx2" : "scalar";
}

void force_backend(Backend b) {
  force_flag() = true;
  force_value() = (b == Backend::kAvx2 && !avx2_supported()) ? Backend::kScalar : b;
}

void reset_backend() { force_flag() = false; }

}  // namespace mim::kernels
