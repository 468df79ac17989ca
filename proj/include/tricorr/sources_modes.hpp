#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <vector>

namespace tricorr {

/// Intensity statistics of one classical random-phase source.
struct ClassicalSourceMoments {
  double mean = 0.0;           // <I>
  double variance = 0.0;       // <I^2> - <I>^2
  double third_central = 0.0;  // <(I - <I>)^3>

  /// <I^3> - <I>^3, the combination that enters the fluctuation terms.
  double third_excess() const noexcept { return third_central + 3.0 * mean * variance; }
};

enum class IntensityDistribution { Delta, Gamma };

/// Moments plus the pulse-to-pulse intensity law used by the Monte Carlo
/// sampler. The closed form only ever sees the moments.
struct ClassicalSource {
  ClassicalSourceMoments moments;
  IntensityDistribution distribution = IntensityDistribution::Delta;

  static ClassicalSource fixed(double intensity);
  /// Gamma law with the given mean and variance; its third central moment
  /// 2 v^2 / x is filled in. variance == 0 degenerates to a fixed intensity.
  static ClassicalSource gamma(double mean, double variance);
};

using ClassicalSources = std::array<ClassicalSource, 3>;

/// Photon-number moments of one Fock-diagonal source and its energy scale.
struct QuantumSourceMoments {
  double mean_n = 0.0;    // <n>
  double second_n = 0.0;  // <n^2>
  double third_n = 0.0;   // <n^3>
  double energy = 1.0;    // energy per photon in the source's mode

  /// Poisson moments, i.e. a phase-averaged coherent state.
  static QuantumSourceMoments poissonian(double mean, double energy = 1.0);
  /// Mean 1, second moment 2 - mu. The third moment is the smallest value
  /// allowed by nonnegative support, <n^2>^2 / <n> (a two-point law on {0, 2 - mu}).
  static QuantumSourceMoments from_mu(double mu, double energy = 1.0);
};

using QuantumSources = std::array<QuantumSourceMoments, 3>;

/// Truncated photon-number distribution p(n), n = 0..size-1.
struct PhotonNumberDistribution {
  std::vector<double> probabilities;
  double energy = 1.0;

  int max_occupation() const noexcept { return static_cast<int>(probabilities.size()) - 1; }
  QuantumSourceMoments moments() const;
  /// Poisson law cut at n_max and renormalized.
  static PhotonNumberDistribution truncated_poisson(double mean, int n_max, double energy = 1.0);
};

void validate(const ClassicalSourceMoments& m);
void validate(const ClassicalSource& s);
void validate(const QuantumSourceMoments& q);
void validate(const PhotonNumberDistribution& d);

/// Negated Mandel Q: -(<n^2> - <n>^2 - <n>) / <n>^2. Equals 1 for a single
/// photon, 0 for Poisson light.
double mandel_mu(const QuantumSourceMoments& q);

/// Pairwise mode-overlap moduli and the triad phase psi = psi12 + psi23 + psi31.
struct OverlapSet {
  double r12 = 0.0;
  double r23 = 0.0;
  double r31 = 0.0;
  double psi = 0.0;
};

/// Complex overlaps <phi1|phi2>, <phi2|phi3>, <phi3|phi1>. Only the moduli
/// and the phase of their product are observable.
struct PairwiseOverlaps {
  std::complex<double> o12{0.0, 0.0};
  std::complex<double> o23{0.0, 0.0};
  std::complex<double> o31{0.0, 0.0};

  /// Gauge with the whole triad phase on the (1,2) overlap.
  static PairwiseOverlaps from(const OverlapSet& o);
  std::complex<double> triad() const noexcept { return o12 * o23 * o31; }
};

/// Gaussian pulses of spectral width sigma; sources 1 and 3 are delayed by
/// -tau and +tau relative to source 2.
struct GaussianDelayModel {
  double sigma = 1.0;
  double tau = 0.0;

  double delta() const noexcept { return sigma * tau; }
};

/// r12 = r23 = exp(-delta^2 / 2), r31 = exp(-2 delta^2), psi = 0.
OverlapSet overlaps_from_delay(const GaussianDelayModel& model);
OverlapSet overlaps_from_delta(double delta);

/// Hermitian Gram matrix G_{ab} = <phi_a|phi_b> in the triad-on-(1,2) gauge.
Eigen::Matrix3cd gram_matrix(const OverlapSet& o);

/// Smallest Gram eigenvalue; the set is realizable iff this is >= -1e-10.
double min_gram_eigenvalue(const OverlapSet& o);
void validate(const OverlapSet& o);

/// Three unit vectors in C^3 (the columns of the result) whose inner
/// products reproduce `o`, from the Hermitian square root of the Gram matrix.
/// Throws UnrealizableOverlapsError if the Gram matrix is not PSD.
Eigen::Matrix3cd embed_overlaps(const OverlapSet& o);

/// Recovers the overlap set from three mode vectors (columns).
OverlapSet overlaps_of(const Eigen::Matrix3cd& modes);

}  // namespace tricorr
