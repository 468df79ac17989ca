#pragma once

#include "tricorr/interferometer.hpp"
#include "tricorr/sources_modes.hpp"

#include <span>
#include <variant>
#include <vector>

namespace tricorr {

enum class Model { Classical, Quantum };

/// Per-source statistics in the form the correlation expression consumes:
/// the mean intensity and the excesses <:I^2:> - <I>^2 and <:I^3:> - <I>^3.
/// For classical light these are the plain intensity excesses; for
/// Fock-diagonal light the normally ordered photon-number moments scaled by
/// the photon energy, which may be negative (sub-Poissonian sources).
struct EffectiveMoments {
  double mean = 0.0;
  double second_excess = 0.0;
  double third_excess = 0.0;
};

EffectiveMoments effective_moments(const ClassicalSourceMoments& m);
EffectiveMoments effective_moments(const QuantumSourceMoments& q);

/// Sources of either flavour, as accepted by the shape and sweep helpers.
using SourceSet = std::variant<std::array<ClassicalSourceMoments, 3>, QuantumSources>;

SourceSet as_source_set(const ClassicalSources& sources);
Model model_of(const SourceSet& sources);

/// Normalized third-order output correlation for effective moments and
/// arbitrary complex pairwise overlaps. This is the shared closed form behind
/// both models. Throws DarkPortError if an output has no mean intensity.
double g3_from_moments(const TransferMatrix& u, const std::array<EffectiveMoments, 3>& moments,
                       const PairwiseOverlaps& overlaps);

/// Classical random-phase model.
double g3_classical(const TransferMatrix& u, const std::array<ClassicalSourceMoments, 3>& sources,
                    const OverlapSet& o);
double g3_classical(const TransferMatrix& u, const ClassicalSources& sources, const OverlapSet& o);
double g3_classical(const TransferMatrix& u, const std::array<ClassicalSourceMoments, 3>& sources,
                    const PairwiseOverlaps& o);

/// Fock-diagonal quantum model: the classical expression with every intensity
/// moment replaced by the normally ordered photon-number moment.
double g3_quantum(const TransferMatrix& u, const QuantumSources& sources, const OverlapSet& o);
double g3_quantum(const TransferMatrix& u, const QuantumSources& sources, const PairwiseOverlaps& o);

double g3(const TransferMatrix& u, const SourceSet& sources, const OverlapSet& o);

/// Coefficients of G3(delta) = S - A e^{-delta^2} - B e^{-4 delta^2} + C e^{-3 delta^2}
/// along the symmetric Gaussian delay path.
struct ShapeCoefficients {
  double S = 0.0;
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;

  double evaluate(double delta) const noexcept;
};

/// Extracts (S, A, B, C) by probing G3 at indicator overlaps.
ShapeCoefficients shape_coefficients(const TransferMatrix& u, const SourceSet& sources);

struct SweepPoint {
  double delta = 0.0;
  double g3 = 0.0;
};

using SweepCurve = std::vector<SweepPoint>;

/// G3 at overlaps_from_delta(delta) for every grid point. The grid must be
/// strictly increasing.
SweepCurve sweep_delay(const TransferMatrix& u, const SourceSet& sources, std::span<const double> delta_grid);

/// `points` equally spaced values from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, int points);

}  // namespace tricorr
