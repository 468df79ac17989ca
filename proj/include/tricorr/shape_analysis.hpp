#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tricorr {

enum class Verdict { NoRevival, SimpleRevival, DipInRevival, Degenerate };

std::string_view to_string(Verdict v);
Verdict verdict_from_string(std::string_view name);
bool is_revival(Verdict v);

/// Shape verdict for G3(delta) from the cubic h(y) = A y^3 + 4B - 3C y,
/// y = exp(delta^2). Every sign change of h on y > 1 is a turning point of G3.
struct RevivalClass {
  Verdict verdict = Verdict::Degenerate;
  std::vector<double> roots_gt1;  // sign-changing roots of h above 1, ascending
  std::optional<double> y_min;    // sqrt(C/A) when C/A > 0
};

/// Absolute tolerance for the y = 1 boundary and for vanishing coefficients.
inline constexpr double kShapeTolerance = 1e-9;

double h_poly(double a, double b, double c, double y) noexcept;

/// Real roots of y^3 + p y + q = 0, ascending, each polished by one Newton
/// step. Repeated roots are reported with multiplicity.
std::vector<double> solve_depressed_cubic(double p, double q);

RevivalClass classify(double a, double b, double c);

struct BellCoefficients {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
};

/// Shape coefficients of the classical Bell tritter for source means x and
/// intensity variances v.
BellCoefficients classical_bell_coeffs(const std::array<double, 3>& x, const std::array<double, 3>& v);

/// Shape coefficients of the Bell tritter fed by three identical Fock-diagonal
/// sources with parameter mu.
BellCoefficients quantum_bell_coeffs(double mu);

struct StationaryInfo {
  double y_min = 0.0;
  double h_at_1 = 0.0;
};

/// y_min = sqrt(C/A) and h(1) = A + 4B - 3C.
StationaryInfo ymin_and_h1(double a, double b, double c);

/// Numerical check that t2(t1+t3) + 4 t1 t3 - 12 t1 t2 t3 >= 0 on the simplex.
struct AppendixAReport {
  int resolution = 0;
  double grid_minimum = 0.0;
  std::array<double, 3> grid_argmin{};
  double value_at_t0 = 0.0;  // interior stationary point with t1 = t3
  double value_at_t1 = 0.0;  // interior stationary point with t2 = 1/3
  double edge_minimum_t1_zero = 0.0;
  double edge_minimum_t2_zero = 0.0;
  double edge_minimum_t3_zero = 0.0;
  bool grid_ok = false;
  bool stationary_ok = false;
  bool edges_ok = false;

  bool passed() const noexcept { return grid_ok && stationary_ok && edges_ok; }
};

double appendix_a_expression(double t1, double t2, double t3) noexcept;
AppendixAReport verify_appendix_a(int grid_resolution);

}  // namespace tricorr
