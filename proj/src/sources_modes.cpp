#include "tricorr/sources_modes.hpp"

#include "tricorr/errors.hpp"

#include <cmath>
#include <string>

namespace tricorr {

namespace {
constexpr double kGramTolerance = 1e-10;
}

ClassicalSource ClassicalSource::fixed(double intensity) {
  ClassicalSource s;
  s.moments = {intensity, 0.0, 0.0};
  s.distribution = IntensityDistribution::Delta;
  validate(s);
  return s;
}

ClassicalSource ClassicalSource::gamma(double mean, double variance) {
  if (variance == 0.0) return fixed(mean);
  if (!(mean > 0.0)) throw ValidationError("gamma intensity law needs a positive mean");
  ClassicalSource s;
  s.moments = {mean, variance, 2.0 * variance * variance / mean};
  s.distribution = IntensityDistribution::Gamma;
  validate(s);
  return s;
}

QuantumSourceMoments QuantumSourceMoments::poissonian(double mean, double energy) {
  return {mean, mean * mean + mean, mean * mean * mean + 3.0 * mean * mean + mean, energy};
}

QuantumSourceMoments QuantumSourceMoments::from_mu(double mu, double energy) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw ValidationError("mu must lie in [0, 1]");
  const double second = 2.0 - mu;
  return {1.0, second, second * second, energy};
}

QuantumSourceMoments PhotonNumberDistribution::moments() const {
  QuantumSourceMoments q;
  q.energy = energy;
  for (std::size_t n = 0; n < probabilities.size(); ++n) {
    const double k = static_cast<double>(n);
    q.mean_n += probabilities[n] * k;
    q.second_n += probabilities[n] * k * k;
    q.third_n += probabilities[n] * k * k * k;
  }
  return q;
}

PhotonNumberDistribution PhotonNumberDistribution::truncated_poisson(double mean, int n_max, double energy) {
  if (!(mean >= 0.0) || n_max < 0) throw ValidationError("truncated Poisson needs mean >= 0 and n_max >= 0");
  PhotonNumberDistribution d;
  d.energy = energy;
  d.probabilities.resize(static_cast<std::size_t>(n_max) + 1);
  double term = std::exp(-mean);
  double total = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    d.probabilities[static_cast<std::size_t>(n)] = term;
    total += term;
    term *= mean / (n + 1);
  }
  for (auto& p : d.probabilities) p /= total;
  return d;
}

void validate(const ClassicalSourceMoments& m) {
  if (!(std::isfinite(m.mean) && std::isfinite(m.variance) && std::isfinite(m.third_central))) {
    throw ValidationError("classical source moments must be finite");
  }
  if (m.mean < 0.0) throw ValidationError("classical source mean intensity must be >= 0");
  if (m.variance < 0.0) throw ValidationError("classical source intensity variance must be >= 0");
}

void validate(const ClassicalSource& s) {
  validate(s.moments);
  if (s.distribution == IntensityDistribution::Delta &&
      (s.moments.variance != 0.0 || s.moments.third_central != 0.0)) {
    throw ValidationError("a fixed (delta) intensity cannot have nonzero variance or third moment");
  }
  if (s.distribution == IntensityDistribution::Gamma) {
    if (!(s.moments.mean > 0.0 && s.moments.variance > 0.0)) {
      throw ValidationError("gamma intensity law needs positive mean and variance");
    }
    const double expected = 2.0 * s.moments.variance * s.moments.variance / s.moments.mean;
    if (std::abs(s.moments.third_central - expected) > 1e-12 * std::max(1.0, expected)) {
      throw ValidationError("gamma intensity law fixes the third central moment to 2 v^2 / x");
    }
  }
}

void validate(const QuantumSourceMoments& q) {
  if (!(std::isfinite(q.mean_n) && std::isfinite(q.second_n) && std::isfinite(q.third_n) &&
        std::isfinite(q.energy))) {
    throw ValidationError("quantum source moments must be finite");
  }
  if (q.mean_n < 0.0) throw ValidationError("mean photon number must be >= 0");
  // Allow rounding noise for exactly-Fock states.
  if (q.second_n < q.mean_n * q.mean_n * (1.0 - 1e-12)) {
    throw ValidationError("photon-number variance must be >= 0");
  }
  if (!(q.energy > 0.0)) throw ValidationError("source energy must be > 0");
}

void validate(const PhotonNumberDistribution& d) {
  if (d.probabilities.empty()) throw ValidationError("photon-number distribution is empty");
  double total = 0.0;
  for (double p : d.probabilities) {
    if (!(p >= 0.0)) throw ValidationError("photon-number probabilities must be >= 0");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw ValidationError("photon-number probabilities must sum to 1");
  if (!(d.energy > 0.0)) throw ValidationError("source energy must be > 0");
}

double mandel_mu(const QuantumSourceMoments& q) {
  if (!(q.mean_n > 0.0)) throw ValidationError("mu is undefined for a source with zero mean photon number");
  const double m = q.mean_n;
  return -(q.second_n - m * m - m) / (m * m);
}

PairwiseOverlaps PairwiseOverlaps::from(const OverlapSet& o) {
  return {std::polar(o.r12, o.psi), {o.r23, 0.0}, {o.r31, 0.0}};
}

OverlapSet overlaps_from_delta(double delta) {
  const double d2 = delta * delta;
  const double pair = std::exp(-0.5 * d2);
  return {pair, pair, std::exp(-2.0 * d2), 0.0};
}

OverlapSet overlaps_from_delay(const GaussianDelayModel& model) {
  if (!(model.sigma > 0.0)) throw ValidationError("pulse spectral width sigma must be > 0");
  if (!std::isfinite(model.tau)) throw ValidationError("delay tau must be finite");
  return overlaps_from_delta(model.delta());
}

Eigen::Matrix3cd gram_matrix(const OverlapSet& o) {
  const auto p = PairwiseOverlaps::from(o);
  Eigen::Matrix3cd g = Eigen::Matrix3cd::Identity();
  g(0, 1) = p.o12;
  g(1, 0) = std::conj(p.o12);
  g(1, 2) = p.o23;
  g(2, 1) = std::conj(p.o23);
  g(2, 0) = p.o31;
  g(0, 2) = std::conj(p.o31);
  return g;
}

double min_gram_eigenvalue(const OverlapSet& o) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver(gram_matrix(o), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

void validate(const OverlapSet& o) {
  for (double r : {o.r12, o.r23, o.r31}) {
    if (!(r >= 0.0 && r <= 1.0)) throw ValidationError("overlap moduli must lie in [0, 1]");
  }
  if (!std::isfinite(o.psi)) throw ValidationError("triad phase must be finite");
}

Eigen::Matrix3cd embed_overlaps(const OverlapSet& o) {
  validate(o);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver(gram_matrix(o));
  const Eigen::Vector3d evals = solver.eigenvalues();
  if (evals.minCoeff() < -kGramTolerance) {
    throw UnrealizableOverlapsError("Gram matrix has eigenvalue " + std::to_string(evals.minCoeff()));
  }
  const Eigen::Vector3d roots = evals.cwiseMax(0.0).cwiseSqrt();
  // Hermitian square root: G = R^H R with R = V diag(sqrt(lambda)) V^H, so
  // column a of R is the mode vector of source a.
  Eigen::Matrix3cd root = solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().adjoint();
  for (int a = 0; a < 3; ++a) root.col(a).normalize();
  return root;
}

OverlapSet overlaps_of(const Eigen::Matrix3cd& modes) {
  const std::complex<double> o12 = modes.col(0).dot(modes.col(1));
  const std::complex<double> o23 = modes.col(1).dot(modes.col(2));
  const std::complex<double> o31 = modes.col(2).dot(modes.col(0));
  return {std::abs(o12), std::abs(o23), std::abs(o31), std::arg(o12 * o23 * o31)};
}

}  // namespace tricorr
