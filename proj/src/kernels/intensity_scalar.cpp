#include "tricorr/kernels/intensity_kernel.hpp"

namespace tricorr::kernels {

IntensityWeights make_weights(const Eigen::Matrix3cd& transfer, const Eigen::Matrix3cd& modes) {
  IntensityWeights w{};
  for (int j = 0; j < 3; ++j) {
    for (int m = 0; m < 3; ++m) {
      for (int a = 0; a < 3; ++a) {
        const std::complex<double> v = transfer(j, a) * modes(m, a);
        w.re[j][m][a] = v.real();
        w.im[j][m][a] = v.imag();
      }
    }
  }
  return w;
}

void output_intensities_scalar(const IntensityWeights& w, const AmplitudeBatch& in, IntensityOutput out) {
  for (std::size_t s = 0; s < in.count; ++s) {
    const double ar[3] = {in.re[0][s], in.re[1][s], in.re[2][s]};
    const double ai[3] = {in.im[0][s], in.im[1][s], in.im[2][s]};
    for (int j = 0; j < 3; ++j) {
      double acc = 0.0;
      for (int m = 0; m < 3; ++m) {
        double zr = 0.0;
        double zi = 0.0;
        for (int a = 0; a < 3; ++a) {
          zr += w.re[j][m][a] * ar[a] - w.im[j][m][a] * ai[a];
          zi += w.re[j][m][a] * ai[a] + w.im[j][m][a] * ar[a];
        }
        acc += zr * zr + zi * zi;
      }
      out.intensity[j][s] = acc;
    }
  }
}

}  // namespace tricorr::kernels
