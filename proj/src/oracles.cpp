#include "tricorr/oracles.hpp"

#include "tricorr/errors.hpp"
#include "tricorr/kernels/intensity_kernel.hpp"
#include "tricorr/parallel.hpp"
#include "tricorr/rng.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <vector>

namespace tricorr {

namespace {

constexpr double kDarkPortRelative = 1e-14;

double ratio(double product, const std::array<double, 3>& intensity, double count) {
  return (product / count) / ((intensity[0] / count) * (intensity[1] / count) * (intensity[2] / count));
}

}  // namespace

MCEstimate jackknife_ratio(std::span<const RatioBlock> blocks) {
  if (blocks.size() < 2) throw ValidationError("jackknife needs at least two blocks");
  RatioBlock total;
  for (const auto& b : blocks) {
    total.product += b.product;
    for (int j = 0; j < 3; ++j) total.intensity[j] += b.intensity[j];
    total.count += b.count;
  }
  MCEstimate est;
  est.n_samples = total.count;
  est.mean = ratio(total.product, total.intensity, static_cast<double>(total.count));

  const double k = static_cast<double>(blocks.size());
  std::vector<double> loo(blocks.size());
  double loo_mean = 0.0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    std::array<double, 3> intensity{};
    for (int j = 0; j < 3; ++j) intensity[j] = total.intensity[j] - blocks[b].intensity[j];
    loo[b] = ratio(total.product - blocks[b].product, intensity, static_cast<double>(total.count - blocks[b].count));
    loo_mean += loo[b];
  }
  loo_mean /= k;
  double ss = 0.0;
  for (double v : loo) ss += (v - loo_mean) * (v - loo_mean);
  est.std_error = std::sqrt((k - 1.0) / k * ss);
  return est;
}

MCEstimate mc_classical_g3(const TransferMatrix& u, const ClassicalSources& sources, const OverlapSet& o,
                           const MCOptions& options) {
  for (const auto& s : sources) validate(s);
  if (options.n_samples < 2) throw ValidationError("Monte Carlo needs at least two samples");
  if (options.blocks < 2) throw ValidationError("jackknife needs at least two blocks");

  const Eigen::Matrix3cd modes = embed_overlaps(o);
  const kernels::IntensityWeights weights = kernels::make_weights(u.matrix(), modes);

  struct Law {
    IntensityDistribution dist;
    double mean;
    double shape;
    double scale;
  };
  std::array<Law, 3> laws{};
  double total_input = 0.0;
  for (int a = 0; a < 3; ++a) {
    const auto& m = sources[a].moments;
    laws[a].dist = sources[a].distribution;
    laws[a].mean = m.mean;
    if (laws[a].dist == IntensityDistribution::Gamma) {
      laws[a].shape = m.mean * m.mean / m.variance;
      laws[a].scale = m.variance / m.mean;
    }
    total_input += m.mean;
  }

  const std::size_t n = options.n_samples;
  const std::size_t n_blocks = std::min<std::size_t>(static_cast<std::size_t>(options.blocks), n);
  std::vector<RatioBlock> blocks(n_blocks);

  parallel_for(n_blocks, options.threads, [&](std::size_t b) {
    constexpr std::size_t kChunk = 512;
    std::array<std::vector<double>, 3> re, im, out;
    for (int a = 0; a < 3; ++a) {
      re[a].resize(kChunk);
      im[a].resize(kChunk);
      out[a].resize(kChunk);
    }
    const std::size_t begin = n * b / n_blocks;
    const std::size_t end = n * (b + 1) / n_blocks;
    RatioBlock acc;
    for (std::size_t chunk = begin; chunk < end; chunk += kChunk) {
      const std::size_t len = std::min(kChunk, end - chunk);
      for (std::size_t k = 0; k < len; ++k) {
        SplitMix64 rng(stream_seed(options.seed, chunk + k));
        for (int a = 0; a < 3; ++a) {
          const double phase = 2.0 * std::numbers::pi * rng.uniform() + options.global_phase;
          double intensity = laws[a].mean;
          if (laws[a].dist == IntensityDistribution::Gamma) {
            intensity = std::gamma_distribution<double>(laws[a].shape, laws[a].scale)(rng);
          }
          const double amp = std::sqrt(intensity);
          re[a][k] = amp * std::cos(phase);
          im[a][k] = amp * std::sin(phase);
        }
      }
      kernels::AmplitudeBatch batch{{re[0].data(), re[1].data(), re[2].data()},
                                    {im[0].data(), im[1].data(), im[2].data()},
                                    len};
      kernels::output_intensities(weights, batch, {{out[0].data(), out[1].data(), out[2].data()}});
      for (std::size_t k = 0; k < len; ++k) {
        acc.product += out[0][k] * out[1][k] * out[2][k];
        for (int j = 0; j < 3; ++j) acc.intensity[j] += out[j][k];
      }
    }
    acc.count = end - begin;
    blocks[b] = acc;
  });

  for (int j = 0; j < 3; ++j) {
    double total = 0.0;
    for (const auto& b : blocks) total += b.intensity[j];
    if (!(total / static_cast<double>(n) > kDarkPortRelative * total_input)) throw DarkPortError(j + 1);
  }
  return jackknife_ratio(blocks);
}

namespace {

// Occupations of the 9 input modes (port a, internal mode m) -> index 3a+m,
// packed 4 bits per mode.
using FockKey = std::uint64_t;
using FockState = std::map<FockKey, Complex>;

int occupation(FockKey key, int mode) { return static_cast<int>((key >> (4 * mode)) & 0xF); }
FockKey with_occupation(FockKey key, int mode, int value) {
  key &= ~(FockKey{0xF} << (4 * mode));
  return key | (static_cast<FockKey>(value) << (4 * mode));
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// (a_phi^dagger)^n / sqrt(n!) |0> on port `port`, expanded in the internal basis.
FockState source_state(int port, int photons, const Eigen::Vector3cd& mode) {
  FockState state;
  for (int k0 = 0; k0 <= photons; ++k0) {
    for (int k1 = 0; k0 + k1 <= photons; ++k1) {
      const int k2 = photons - k0 - k1;
      const std::array<int, 3> k{k0, k1, k2};
      Complex amp = std::sqrt(factorial(photons) / (factorial(k0) * factorial(k1) * factorial(k2)));
      FockKey key = 0;
      for (int m = 0; m < 3; ++m) {
        for (int e = 0; e < k[m]; ++e) amp *= mode(m);
        key = with_occupation(key, 3 * port + m, k[m]);
      }
      state[key] += amp;
    }
  }
  return state;
}

FockState tensor(const FockState& lhs, const FockState& rhs) {
  FockState out;
  for (const auto& [kl, al] : lhs) {
    for (const auto& [kr, ar] : rhs) out[kl | kr] += al * ar;
  }
  return out;
}

// Applies sum_a coeff[a] * a_{a, m}.
FockState annihilate(const FockState& state, const std::array<Complex, 3>& coeff, int m) {
  FockState out;
  for (const auto& [key, amp] : state) {
    for (int a = 0; a < 3; ++a) {
      if (coeff[a] == 0.0) continue;
      const int mode = 3 * a + m;
      const int k = occupation(key, mode);
      if (k == 0) continue;
      out[with_occupation(key, mode, k - 1)] += coeff[a] * std::sqrt(static_cast<double>(k)) * amp;
    }
  }
  return out;
}

double norm2(const FockState& state) {
  double s = 0.0;
  for (const auto& [key, amp] : state) s += std::norm(amp);
  return s;
}

std::size_t binomial(int n, int k) {
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

}  // namespace

FockEstimate fock_g3(const TransferMatrix& u, const std::array<PhotonNumberDistribution, 3>& sources,
                     const OverlapSet& o, int n_max) {
  for (const auto& d : sources) validate(d);
  if (n_max < 0 || n_max > kFockMaxPhotons) {
    throw ValidationError("Fock oracle supports n_max in [0, " + std::to_string(kFockMaxPhotons) + "]");
  }
  int total_max = 0;
  for (const auto& d : sources) total_max += d.max_occupation();
  if (total_max > n_max) throw ValidationError("truncation too small");

  const Eigen::Matrix3cd modes = embed_overlaps(o);
  const Eigen::Matrix3cd& um = u.matrix();
  // Output annihilator coefficients on the input ports, energy weighted.
  std::array<std::array<Complex, 3>, 3> coeff{};
  for (int i = 0; i < 3; ++i) {
    for (int a = 0; a < 3; ++a) coeff[i][a] = um(i, a) * std::sqrt(sources[a].energy);
  }

  double numerator = 0.0;
  std::array<double, 3> port_mean{};
  for (int n1 = 0; n1 <= sources[0].max_occupation(); ++n1) {
    for (int n2 = 0; n2 <= sources[1].max_occupation(); ++n2) {
      for (int n3 = 0; n3 <= sources[2].max_occupation(); ++n3) {
        const double p = sources[0].probabilities[n1] * sources[1].probabilities[n2] * sources[2].probabilities[n3];
        if (p == 0.0) continue;
        const FockState psi = tensor(tensor(source_state(0, n1, modes.col(0)), source_state(1, n2, modes.col(1))),
                                     source_state(2, n3, modes.col(2)));
        for (int i = 0; i < 3; ++i) {
          for (int m = 0; m < 3; ++m) port_mean[i] += p * norm2(annihilate(psi, coeff[i], m));
        }
        for (int m1 = 0; m1 < 3; ++m1) {
          const FockState s1 = annihilate(psi, coeff[0], m1);
          if (s1.empty()) continue;
          for (int m2 = 0; m2 < 3; ++m2) {
            const FockState s2 = annihilate(s1, coeff[1], m2);
            if (s2.empty()) continue;
            for (int m3 = 0; m3 < 3; ++m3) numerator += p * norm2(annihilate(s2, coeff[2], m3));
          }
        }
      }
    }
  }

  double total_input = 0.0;
  for (const auto& d : sources) total_input += d.energy * d.moments().mean_n;
  for (int i = 0; i < 3; ++i) {
    if (!(port_mean[i] > kDarkPortRelative * total_input)) throw DarkPortError(i + 1);
  }
  return {numerator / (port_mean[0] * port_mean[1] * port_mean[2]), binomial(n_max + 9, 9), n_max};
}

}  // namespace tricorr
