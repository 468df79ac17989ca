#include "test_support.hpp"

#include "tricorr/errors.hpp"
#include "tricorr/kernels/intensity_kernel.hpp"

#include <doctest.h>

#include <vector>

using namespace tricorr;
using namespace tricorr::testing;
using namespace tricorr::kernels;

namespace {

struct Batch {
  std::array<std::vector<double>, 3> re, im;

  explicit Batch(std::size_t n, Rng& rng) {
    for (int a = 0; a < 3; ++a) {
      re[a].resize(n);
      im[a].resize(n);
      for (std::size_t k = 0; k < n; ++k) {
        re[a][k] = uniform(rng, -2, 2);
        im[a][k] = uniform(rng, -2, 2);
      }
    }
  }
  AmplitudeBatch view() const {
    return {{re[0].data(), re[1].data(), re[2].data()}, {im[0].data(), im[1].data(), im[2].data()}, re[0].size()};
  }
};

struct Outputs {
  std::array<std::vector<double>, 3> v;
  explicit Outputs(std::size_t n) {
    for (auto& x : v) x.assign(n, -1.0);
  }
  IntensityOutput view() { return {{v[0].data(), v[1].data(), v[2].data()}}; }
};

}  // namespace

TEST_CASE("scalar kernel matches a direct evaluation") {
  Rng rng(51);
  const Eigen::Matrix3cd u = random_unitary(rng);
  const Eigen::Matrix3cd modes = random_modes(rng);
  const auto w = make_weights(u, modes);
  const Batch batch(37, rng);
  Outputs out(37);
  output_intensities_scalar(w, batch.view(), out.view());
  for (std::size_t k = 0; k < 37; ++k) {
    for (int j = 0; j < 3; ++j) {
      Eigen::Vector3cd e = Eigen::Vector3cd::Zero();
      for (int a = 0; a < 3; ++a) e += u(j, a) * Complex(batch.re[a][k], batch.im[a][k]) * modes.col(a);
      CHECK(out.v[j][k] == doctest::Approx(e.squaredNorm()).epsilon(1e-13));
    }
  }
}

TEST_CASE("simd kernel is equivalent to the scalar reference") {
  if (!kernel_available(KernelKind::Avx2)) {
    MESSAGE("AVX2 kernel not available on this machine; equivalence not exercised");
    CHECK_THROWS_AS(set_active_kernel(KernelKind::Avx2), ValidationError);
    return;
  }
#if defined(TRICORR_BUILD_AVX2)
  Rng rng(52);
  // Sizes cover empty input, the vector tail, and full lanes.
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 8u, 13u, 512u, 1001u}) {
    const auto w = make_weights(random_lossy(rng).matrix(), random_modes(rng));
    const Batch batch(n, rng);
    Outputs a(n), b(n);
    output_intensities_scalar(w, batch.view(), a.view());
    output_intensities_avx2(w, batch.view(), b.view());
    for (int j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const double scale = std::max(1.0, std::abs(a.v[j][k]));
        CHECK(std::abs(a.v[j][k] - b.v[j][k]) <= 1e-13 * scale);
      }
  }
#endif
}

TEST_CASE("dispatch honours the selected kernel") {
  const KernelKind original = active_kernel();
  CHECK(kernel_available(KernelKind::Scalar));
  set_active_kernel(KernelKind::Scalar);
  CHECK(active_kernel() == KernelKind::Scalar);

  Rng rng(53);
  const auto w = make_weights(random_unitary(rng), random_modes(rng));
  const Batch batch(9, rng);
  Outputs via_dispatch(9), direct(9);
  output_intensities(w, batch.view(), via_dispatch.view());
  output_intensities_scalar(w, batch.view(), direct.view());
  for (int j = 0; j < 3; ++j) CHECK(via_dispatch.v[j] == direct.v[j]);

  set_active_kernel(original);
  CHECK(to_string(KernelKind::Scalar) == "scalar");
  CHECK(to_string(KernelKind::Avx2) == "avx2");
}
