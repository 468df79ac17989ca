// Compiled with -mavx2 -mfma; only called after a runtime CPU check.
#include "tricorr/kernels/intensity_kernel.hpp"

#include <immintrin.h>

namespace tricorr::kernels {

void output_intensities_avx2(const IntensityWeights& w, const AmplitudeBatch& in, IntensityOutput out) {
  constexpr std::size_t kLanes = 4;
  const std::size_t vec_end = in.count - in.count % kLanes;

  for (std::size_t s = 0; s < vec_end; s += kLanes) {
    __m256d ar[3];
    __m256d ai[3];
    for (int a = 0; a < 3; ++a) {
      ar[a] = _mm256_loadu_pd(in.re[a] + s);
      ai[a] = _mm256_loadu_pd(in.im[a] + s);
    }
    for (int j = 0; j < 3; ++j) {
      __m256d acc = _mm256_setzero_pd();
      for (int m = 0; m < 3; ++m) {
        __m256d zr = _mm256_setzero_pd();
        __m256d zi = _mm256_setzero_pd();
        for (int a = 0; a < 3; ++a) {
          const __m256d wr = _mm256_set1_pd(w.re[j][m][a]);
          const __m256d wi = _mm256_set1_pd(w.im[j][m][a]);
          zr = _mm256_fmadd_pd(wr, ar[a], zr);
          zr = _mm256_fnmadd_pd(wi, ai[a], zr);
          zi = _mm256_fmadd_pd(wr, ai[a], zi);
          zi = _mm256_fmadd_pd(wi, ar[a], zi);
        }
        acc = _mm256_fmadd_pd(zr, zr, acc);
        acc = _mm256_fmadd_pd(zi, zi, acc);
      }
      _mm256_storeu_pd(out.intensity[j] + s, acc);
    }
  }

  if (vec_end < in.count) {
    AmplitudeBatch tail = in;
    for (int a = 0; a < 3; ++a) {
      tail.re[a] += vec_end;
      tail.im[a] += vec_end;
    }
    tail.count = in.count - vec_end;
    IntensityOutput tail_out = out;
    for (auto& p : tail_out.intensity) p += vec_end;
    output_intensities_scalar(w, tail, tail_out);
  }
}

}  // namespace tricorr::kernels
