#include "tricorr/kernels/intensity_kernel.hpp"

#include "tricorr/errors.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace tricorr::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(TRICORR_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

KernelKind initial_kernel() {
  if (const char* env = std::getenv("TRICORR_KERNEL")) {
    const std::string name(env);
    if (name == "scalar") return KernelKind::Scalar;
    if (name == "avx2" && cpu_has_avx2()) return KernelKind::Avx2;
  }
  return cpu_has_avx2() ? KernelKind::Avx2 : KernelKind::Scalar;
}

std::atomic<KernelKind>& active() {
  static std::atomic<KernelKind> kind{initial_kernel()};
  return kind;
}

}  // namespace

std::string_view to_string(KernelKind kind) {
  return kind == KernelKind::Avx2 ? "avx2" : "scalar";
}

bool kernel_available(KernelKind kind) {
  return kind == KernelKind::Scalar || cpu_has_avx2();
}

KernelKind active_kernel() { return active().load(std::memory_order_relaxed); }

void set_active_kernel(KernelKind kind) {
  if (!kernel_available(kind)) {
    throw ValidationError("intensity kernel '" + std::string(to_string(kind)) + "' is not available on this CPU");
  }
  active().store(kind, std::memory_order_relaxed);
}

void output_intensities(const IntensityWeights& w, const AmplitudeBatch& in, IntensityOutput out) {
#if defined(TRICORR_BUILD_AVX2)
  if (active_kernel() == KernelKind::Avx2) {
    output_intensities_avx2(w, in, out);
    return;
  }
#endif
  output_intensities_scalar(w, in, out);
}

}  // namespace tricorr::kernels
