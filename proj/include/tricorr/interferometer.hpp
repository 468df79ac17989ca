#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

namespace tricorr {

using Complex = std::complex<double>;

/// 3x3 field transfer matrix. Row = output port, column = input port
/// (0-based internally; configs and diagnostics use 1-based ports).
class TransferMatrix {
 public:
  TransferMatrix() : m_(Eigen::Matrix3cd::Identity()) {}
  explicit TransferMatrix(const Eigen::Matrix3cd& m) : m_(m) {}

  static TransferMatrix identity() { return TransferMatrix(); }

  Complex operator()(int out, int in) const { return m_(out, in); }
  const Eigen::Matrix3cd& matrix() const noexcept { return m_; }

  TransferMatrix scaled(Complex c) const { return TransferMatrix(m_ * c); }

  /// Singular values, descending.
  Eigen::Vector3d singular_values() const;

 private:
  Eigen::Matrix3cd m_;
};

/// Lossy real beamsplitter on a port pair: eta * [[cos, sin], [-sin, cos]].
struct BeamSplitter {
  int port_a = 1;  // 1-based, port_a < port_b
  int port_b = 2;
  double theta = 0.0;
  double eta = 1.0;

  bool operator==(const BeamSplitter&) const = default;
};

/// Multiplies the field on one port by exp(-i phi).
struct PhaseShifter {
  int port = 1;  // 1-based
  double phi = 0.0;

  bool operator==(const PhaseShifter&) const = default;
};

using CircuitElement = std::variant<BeamSplitter, PhaseShifter>;

/// Elements in the order light meets them.
struct CircuitSpec {
  std::vector<CircuitElement> elements;

  bool operator==(const CircuitSpec&) const = default;
};

/// Discrete-Fourier tritter, normalized to be unitary:
/// U_{j,a} = exp(i 2pi/3 (j-1)(a-1)) / sqrt(3).
TransferMatrix bell_matrix();

/// Beamsplitter/phase-shifter decomposition of the Bell tritter, including
/// the two trailing output phase shifters. All beamsplitters get loss `eta`.
CircuitSpec bell_circuit(double eta = 1.0);

/// Matrix of one element. Throws ValidationError on bad ports or eta.
Eigen::Matrix3cd element_matrix(const CircuitElement& element);

/// Product of the element matrices; the first element acts first, so the
/// result is E_n ... E_2 E_1. An empty circuit composes to the identity.
TransferMatrix compose_circuit(const CircuitSpec& spec);

/// Replaces every angle and phase by a normal draw centred on its nominal
/// value with standard deviation `epsilon`. Loss values are kept.
/// Deterministic in `rng_seed`; epsilon == 0 returns the input unchanged.
CircuitSpec perturb_circuit(const CircuitSpec& spec, double epsilon, std::uint64_t rng_seed);

/// Scales every beamsplitter's eta by `factor`.
CircuitSpec scale_losses(const CircuitSpec& spec, double factor);

struct PhysicalityReport {
  bool physical = false;
  Eigen::Vector3d singular_values = Eigen::Vector3d::Zero();
};

/// Physical (passive, possibly lossy) iff the largest singular value is at
/// most 1 + 1e-12.
PhysicalityReport validate_physical(const TransferMatrix& u);

void validate_element(const CircuitElement& element);

}  // namespace tricorr
