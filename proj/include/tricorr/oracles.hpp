#pragma once

// Brute-force reference evaluations of G3, independent of the closed form:
// a Monte Carlo sampler of the random-phase classical field model and an
// exact Fock-space enumeration of the quantum model.

#include "tricorr/interferometer.hpp"
#include "tricorr/sources_modes.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

namespace tricorr {

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
};

struct MCOptions {
  std::size_t n_samples = 1'000'000;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0 = hardware concurrency
  int blocks = 100;      // jackknife blocks
  double global_phase = 0.0;  // added to every source phase
};

/// Per-block sums for the ratio <I1 I2 I3> / (<I1><I2><I3>).
struct RatioBlock {
  double product = 0.0;
  std::array<double, 3> intensity{};
  std::size_t count = 0;
};

/// Ratio estimate over all blocks with its leave-one-block-out jackknife
/// standard error.
MCEstimate jackknife_ratio(std::span<const RatioBlock> blocks);

/// Samples output intensities with uniform random source phases and the
/// configured intensity laws. Sample s uses its own stream seeded from
/// (seed, s), so the result does not depend on the thread count.
MCEstimate mc_classical_g3(const TransferMatrix& u, const ClassicalSources& sources, const OverlapSet& o,
                           const MCOptions& options);

inline constexpr int kFockMaxPhotons = 6;

struct FockEstimate {
  double g3 = 0.0;
  std::size_t basis_dim = 0;  // 9-mode Fock states with at most n_max photons
  int n_max = 0;
};

/// Exact normally ordered G3 for three Fock-diagonal sources, by expanding
/// each source's mode in the 3-dim internal basis from embed_overlaps and
/// applying the output annihilators b_{i,m} = sum_a U_{ia} sqrt(E_a) a_{a,m}
/// to every pure component of the input mixture.
/// Throws ValidationError("truncation too small") if the distributions can
/// put more than n_max photons in the device, or if n_max > 6.
FockEstimate fock_g3(const TransferMatrix& u, const std::array<PhotonNumberDistribution, 3>& sources,
                     const OverlapSet& o, int n_max = kFockMaxPhotons);

}  // namespace tricorr
