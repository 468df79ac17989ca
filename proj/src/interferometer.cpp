#include "tricorr/interferometer.hpp"

#include "tricorr/errors.hpp"
#include "tricorr/rng.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace tricorr {

namespace {
constexpr double kPhysicalTolerance = 1e-12;
}

Eigen::Vector3d TransferMatrix::singular_values() const {
  Eigen::JacobiSVD<Eigen::Matrix3cd> svd(m_);
  return svd.singularValues();
}

TransferMatrix bell_matrix() {
  Eigen::Matrix3cd m;
  const double norm = 1.0 / std::sqrt(3.0);
  for (int j = 0; j < 3; ++j) {
    for (int a = 0; a < 3; ++a) {
      // Reduce the exponent mod 3 so the entries are exact cube roots of unity.
      const int k = (j * a) % 3;
      m(j, a) = std::polar(norm, 2.0 * std::numbers::pi / 3.0 * k);
    }
  }
  return TransferMatrix(m);
}

CircuitSpec bell_circuit(double eta) {
  using std::numbers::pi;
  const double theta0 = std::acos(1.0 / std::sqrt(3.0));
  CircuitSpec spec;
  spec.elements = {
      BeamSplitter{2, 3, pi / 4.0, eta},
      PhaseShifter{3, pi / 2.0},
      BeamSplitter{1, 2, theta0, eta},
      BeamSplitter{2, 3, -pi / 4.0, eta},
      PhaseShifter{3, pi},
      PhaseShifter{2, pi},
  };
  return spec;
}

void validate_element(const CircuitElement& element) {
  if (const auto* bs = std::get_if<BeamSplitter>(&element)) {
    const bool ports_ok = bs->port_a >= 1 && bs->port_b <= 3 && bs->port_a < bs->port_b;
    if (!ports_ok) {
      throw ValidationError("beamsplitter ports must be one of (1,2), (2,3), (1,3); got (" +
                            std::to_string(bs->port_a) + "," + std::to_string(bs->port_b) + ")");
    }
    if (!(bs->eta >= 0.0 && bs->eta <= 1.0)) {
      throw ValidationError("beamsplitter eta must lie in [0, 1], got " + std::to_string(bs->eta));
    }
    if (!std::isfinite(bs->theta)) throw ValidationError("beamsplitter angle must be finite");
  } else {
    const auto& ps = std::get<PhaseShifter>(element);
    if (ps.port < 1 || ps.port > 3) {
      throw ValidationError("phase shifter port must be 1..3, got " + std::to_string(ps.port));
    }
    if (!std::isfinite(ps.phi)) throw ValidationError("phase shifter phase must be finite");
  }
}

Eigen::Matrix3cd element_matrix(const CircuitElement& element) {
  validate_element(element);
  Eigen::Matrix3cd m = Eigen::Matrix3cd::Identity();
  if (const auto* bs = std::get_if<BeamSplitter>(&element)) {
    const int a = bs->port_a - 1;
    const int b = bs->port_b - 1;
    const double c = bs->eta * std::cos(bs->theta);
    const double s = bs->eta * std::sin(bs->theta);
    m(a, a) = c;
    m(a, b) = s;
    m(b, a) = -s;
    m(b, b) = c;
  } else {
    const auto& ps = std::get<PhaseShifter>(element);
    m(ps.port - 1, ps.port - 1) = std::polar(1.0, -ps.phi);
  }
  return m;
}

TransferMatrix compose_circuit(const CircuitSpec& spec) {
  Eigen::Matrix3cd m = Eigen::Matrix3cd::Identity();
  for (const auto& element : spec.elements) m = element_matrix(element) * m;
  return TransferMatrix(m);
}

CircuitSpec perturb_circuit(const CircuitSpec& spec, double epsilon, std::uint64_t rng_seed) {
  if (!(epsilon >= 0.0)) throw ValidationError("epsilon must be >= 0");
  if (epsilon == 0.0) return spec;
  SplitMix64 rng(rng_seed);
  CircuitSpec out = spec;
  for (auto& element : out.elements) {
    // A fresh distribution per draw keeps each element's draw independent of
    // any cached state inside std::normal_distribution.
    if (auto* bs = std::get_if<BeamSplitter>(&element)) {
      bs->theta = std::normal_distribution<double>(bs->theta, epsilon)(rng);
    } else {
      auto& ps = std::get<PhaseShifter>(element);
      ps.phi = std::normal_distribution<double>(ps.phi, epsilon)(rng);
    }
  }
  return out;
}

CircuitSpec scale_losses(const CircuitSpec& spec, double factor) {
  CircuitSpec out = spec;
  for (auto& element : out.elements) {
    if (auto* bs = std::get_if<BeamSplitter>(&element)) bs->eta *= factor;
  }
  return out;
}

PhysicalityReport validate_physical(const TransferMatrix& u) {
  PhysicalityReport report;
  report.singular_values = u.singular_values();
  report.physical = report.singular_values.maxCoeff() <= 1.0 + kPhysicalTolerance;
  return report;
}

}  // namespace tricorr
