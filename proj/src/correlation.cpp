#include "tricorr/correlation.hpp"

#include "tricorr/errors.hpp"

#include <cmath>
#include <string>

namespace tricorr {

namespace {

// Output ports whose mean intensity falls below this fraction of the total
// input intensity are treated as dark.
constexpr double kDarkPortRelative = 1e-14;

double abs2(Complex z) { return std::norm(z); }

// f(1,2,3) + f(2,3,1) + f(3,1,2) over output-port labels.
template <class F>
auto cyclic_sum(F&& f) {
  return f(0, 1, 2) + f(1, 2, 0) + f(2, 0, 1);
}

Complex permanent3(const Eigen::Matrix3cd& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) + m(1, 2) * m(2, 1)) +
         m(0, 1) * (m(1, 0) * m(2, 2) + m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) + m(1, 1) * m(2, 0));
}

Complex overlap(const PairwiseOverlaps& o, int a, int b) {
  // <phi_a|phi_b>, conjugate for the reversed order.
  if (a == 0 && b == 1) return o.o12;
  if (a == 1 && b == 2) return o.o23;
  if (a == 2 && b == 0) return o.o31;
  if (a == 1 && b == 0) return std::conj(o.o12);
  if (a == 2 && b == 1) return std::conj(o.o23);
  if (a == 0 && b == 2) return std::conj(o.o31);
  return 1.0;
}

}  // namespace

EffectiveMoments effective_moments(const ClassicalSourceMoments& m) {
  validate(m);
  return {m.mean, m.variance, m.third_excess()};
}

EffectiveMoments effective_moments(const QuantumSourceMoments& q) {
  validate(q);
  const double e = q.energy;
  const double mean = e * q.mean_n;
  // <:n^2:> = <n^2> - <n>,  <:n^3:> = <n^3> - 3<n^2> + 2<n>.
  const double normal2 = e * e * (q.second_n - q.mean_n);
  const double normal3 = e * e * e * (q.third_n - 3.0 * q.second_n + 2.0 * q.mean_n);
  return {mean, normal2 - mean * mean, normal3 - mean * mean * mean};
}

SourceSet as_source_set(const ClassicalSources& sources) {
  return std::array<ClassicalSourceMoments, 3>{sources[0].moments, sources[1].moments, sources[2].moments};
}

Model model_of(const SourceSet& sources) {
  return std::holds_alternative<QuantumSources>(sources) ? Model::Quantum : Model::Classical;
}

double g3_from_moments(const TransferMatrix& u, const std::array<EffectiveMoments, 3>& s,
                       const PairwiseOverlaps& o) {
  const Eigen::Matrix3cd& m = u.matrix();

  double total_input = 0.0;
  for (const auto& src : s) total_input += src.mean;
  std::array<double, 3> port_mean{};
  for (int i = 0; i < 3; ++i) {
    for (int b = 0; b < 3; ++b) port_mean[i] += abs2(m(i, b)) * s[b].mean;
    if (!(port_mean[i] > kDarkPortRelative * total_input)) throw DarkPortError(i + 1);
  }
  const double denom = port_mean[0] * port_mean[1] * port_mean[2];

  // F1: a single source feeding all three outputs.
  double f1 = 0.0;
  for (int a = 0; a < 3; ++a) {
    f1 += abs2(m(0, a)) * abs2(m(1, a)) * abs2(m(2, a)) * s[a].third_excess;
  }

  // F2 and F3: source a feeding two outputs, source b the third.
  double f2 = 0.0;
  double f3 = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      if (a == b) continue;
      const double weight = s[a].second_excess * s[b].mean;
      if (weight == 0.0) continue;
      f2 += weight * cyclic_sum([&](int i, int j, int k) {
              return abs2(m(i, b)) * abs2(m(j, a)) * abs2(m(k, a));
            });
      const double r2 = abs2(overlap(o, a, b));
      const Complex exchange = cyclic_sum([&](int i, int j, int k) {
        return abs2(m(i, a)) * m(j, a) * std::conj(m(j, b)) * m(k, b) * std::conj(m(k, a));
      });
      f3 += 2.0 * r2 * weight * exchange.real();
    }
  }

  // Pairwise exchange between two outputs.
  double pairwise = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      const double r2 = abs2(overlap(o, a, b));
      if (r2 == 0.0) continue;
      Complex sum = 0.0;
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          if (i == j) continue;
          sum += m(i, a) * std::conj(m(i, b)) * m(j, b) * std::conj(m(j, a)) / (port_mean[i] * port_mean[j]);
        }
      }
      pairwise += r2 * sum.real() * s[a].mean * s[b].mean;
    }
  }

  // Triad term: permanent of U entrywise-times conj(U with columns cycled 1->2->3).
  // It pairs with the conjugate of <phi1|phi2><phi2|phi3><phi3|phi1>.
  Eigen::Matrix3cd cycled;
  for (int col = 0; col < 3; ++col) cycled.col(col) = m.col((col + 1) % 3).conjugate();
  const Complex perm = permanent3(m.cwiseProduct(cycled));
  const double triad =
      2.0 * (std::conj(o.triad()) * perm).real() * s[0].mean * s[1].mean * s[2].mean / denom;

  return 1.0 + (f1 + f2 + f3) / denom + pairwise + triad;
}

double g3_classical(const TransferMatrix& u, const std::array<ClassicalSourceMoments, 3>& sources,
                    const PairwiseOverlaps& o) {
  return g3_from_moments(u, {effective_moments(sources[0]), effective_moments(sources[1]),
                             effective_moments(sources[2])}, o);
}

double g3_classical(const TransferMatrix& u, const std::array<ClassicalSourceMoments, 3>& sources,
                    const OverlapSet& o) {
  validate(o);
  return g3_classical(u, sources, PairwiseOverlaps::from(o));
}

double g3_classical(const TransferMatrix& u, const ClassicalSources& sources, const OverlapSet& o) {
  return g3_classical(u, std::get<0>(as_source_set(sources)), o);
}

double g3_quantum(const TransferMatrix& u, const QuantumSources& sources, const PairwiseOverlaps& o) {
  return g3_from_moments(u, {effective_moments(sources[0]), effective_moments(sources[1]),
                             effective_moments(sources[2])}, o);
}

double g3_quantum(const TransferMatrix& u, const QuantumSources& sources, const OverlapSet& o) {
  validate(o);
  return g3_quantum(u, sources, PairwiseOverlaps::from(o));
}

double g3(const TransferMatrix& u, const SourceSet& sources, const OverlapSet& o) {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, QuantumSources>) {
          return g3_quantum(u, s, o);
        } else {
          return g3_classical(u, s, o);
        }
      },
      sources);
}

double ShapeCoefficients::evaluate(double delta) const noexcept {
  const double d2 = delta * delta;
  return S - A * std::exp(-d2) - B * std::exp(-4.0 * d2) + C * std::exp(-3.0 * d2);
}

ShapeCoefficients shape_coefficients(const TransferMatrix& u, const SourceSet& sources) {
  // G3 is affine in r12^2, r23^2, r31^2 and in r12 r23 r31 cos(psi). Along the
  // delay path r12^2 = r23^2 = e^{-d^2}, r31^2 = e^{-4d^2} and the triad
  // product is e^{-3d^2}, so indicator probes give the coefficients exactly.
  const double s = g3(u, sources, {0.0, 0.0, 0.0, 0.0});
  const double a12 = s - g3(u, sources, {1.0, 0.0, 0.0, 0.0});
  const double a23 = s - g3(u, sources, {0.0, 1.0, 0.0, 0.0});
  const double a31 = s - g3(u, sources, {0.0, 0.0, 1.0, 0.0});
  const double all = g3(u, sources, {1.0, 1.0, 1.0, 0.0});
  return {s, a12 + a23, a31, all - s + a12 + a23 + a31};
}

SweepCurve sweep_delay(const TransferMatrix& u, const SourceSet& sources, std::span<const double> delta_grid) {
  for (std::size_t i = 1; i < delta_grid.size(); ++i) {
    if (!(delta_grid[i] > delta_grid[i - 1])) throw ValidationError("delta grid must be strictly increasing");
  }
  SweepCurve curve;
  curve.reserve(delta_grid.size());
  for (double d : delta_grid) curve.push_back({d, g3(u, sources, overlaps_from_delta(d))});
  return curve;
}

std::vector<double> linear_grid(double lo, double hi, int points) {
  if (points < 1) throw ValidationError("grid needs at least one point");
  if (points == 1) return {lo};
  if (!(hi > lo)) throw ValidationError("grid upper bound must exceed lower bound");
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
  return grid;
}

}  // namespace tricorr
