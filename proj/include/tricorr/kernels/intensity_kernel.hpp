#pragma once

// Output-intensity kernel for the random-phase field sampler.
//
// For a batch of samples with complex source amplitudes c_a (phase and
// square-root intensity), computes
//     I_j = sum_m | sum_a W[j][m][a] c_a |^2,     W[j][m][a] = U_{ja} phi_{a,m}
// i.e. the squared norm of each output field in the 3-dim internal mode space.
// A scalar reference implementation and an AVX2/FMA variant are provided;
// the variant is chosen once at runtime from the CPU's capabilities.

#include <array>
#include <cstddef>
#include <string_view>

#include <Eigen/Dense>

namespace tricorr::kernels {

struct IntensityWeights {
  // [output j][internal mode m][source a]
  double re[3][3][3];
  double im[3][3][3];
};

/// Builds W from a transfer matrix and mode vectors (one column per source).
IntensityWeights make_weights(const Eigen::Matrix3cd& transfer, const Eigen::Matrix3cd& modes);

/// Structure-of-arrays view of a batch. All arrays hold `count` values.
struct AmplitudeBatch {
  std::array<const double*, 3> re{};
  std::array<const double*, 3> im{};
  std::size_t count = 0;
};

struct IntensityOutput {
  std::array<double*, 3> intensity{};
};

enum class KernelKind { Scalar, Avx2 };

std::string_view to_string(KernelKind kind);

void output_intensities_scalar(const IntensityWeights& w, const AmplitudeBatch& in, IntensityOutput out);
#if defined(TRICORR_BUILD_AVX2)
void output_intensities_avx2(const IntensityWeights& w, const AmplitudeBatch& in, IntensityOutput out);
#endif

/// True if the variant was compiled in and the CPU supports it.
bool kernel_available(KernelKind kind);

/// Kernel used by output_intensities(). Defaults to the best available
/// variant; the TRICORR_KERNEL environment variable ("scalar" or "avx2")
/// overrides the default.
KernelKind active_kernel();

/// Throws ValidationError if the variant is unavailable.
void set_active_kernel(KernelKind kind);

void output_intensities(const IntensityWeights& w, const AmplitudeBatch& in, IntensityOutput out);

}  // namespace tricorr::kernels
