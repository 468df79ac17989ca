#include "tricorr/shape_analysis.hpp"

#include "tricorr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace tricorr {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::NoRevival: return "NoRevival";
    case Verdict::SimpleRevival: return "SimpleRevival";
    case Verdict::DipInRevival: return "DipInRevival";
    case Verdict::Degenerate: return "Degenerate";
  }
  return "Degenerate";
}

Verdict verdict_from_string(std::string_view name) {
  for (Verdict v : {Verdict::NoRevival, Verdict::SimpleRevival, Verdict::DipInRevival, Verdict::Degenerate}) {
    if (to_string(v) == name) return v;
  }
  throw ValidationError("unknown verdict '" + std::string(name) + "'");
}

bool is_revival(Verdict v) { return v == Verdict::SimpleRevival || v == Verdict::DipInRevival; }

double h_poly(double a, double b, double c, double y) noexcept { return a * y * y * y + 4.0 * b - 3.0 * c * y; }

std::vector<double> solve_depressed_cubic(double p, double q) {
  auto f = [&](double y) { return (y * y + p) * y + q; };
  auto polish = [&](double y) {
    const double d = 3.0 * y * y + p;
    if (d != 0.0) {
      const double next = y - f(y) / d;
      if (std::isfinite(next) && std::abs(f(next)) <= std::abs(f(y))) return next;
    }
    return y;
  };

  std::vector<double> roots;
  if (p == 0.0) {
    roots.push_back(std::cbrt(-q));
    return roots;
  }
  // Discriminant of the depressed cubic, scaled: positive means three real roots.
  const double half_q = 0.5 * q;
  const double third_p = p / 3.0;
  const double disc = half_q * half_q + third_p * third_p * third_p;
  if (disc > 0.0) {
    // One real root (Cardano). Pick the sign that avoids cancellation.
    const double s = std::sqrt(disc);
    const double u = std::cbrt(-half_q + (half_q <= 0.0 ? s : -s));
    const double y = (u != 0.0) ? u - third_p / u : 0.0;
    roots.push_back(polish(y));
  } else {
    // Three real roots: trigonometric form (p < 0 here).
    const double m = 2.0 * std::sqrt(-third_p);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) roots.push_back(polish(m * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0)));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

namespace {

// Root of h in [lo, hi] where h(lo) and h(hi) have opposite signs. Prefers a
// closed-form candidate inside the bracket and falls back to bisection.
double bracketed_root(double a, double b, double c, double lo, double hi, const std::vector<double>& candidates) {
  for (double r : candidates) {
    if (r >= lo && r <= hi) return r;
  }
  double flo = h_poly(a, b, c, lo);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = h_poly(a, b, c, mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Upper bound on the magnitude of any root of y^3 + p y + q (Cauchy).
double root_bound(double p, double q) { return 1.0 + std::max(std::abs(p), std::abs(q)); }

}  // namespace

RevivalClass classify(double a, double b, double c) {
  constexpr double tol = kShapeTolerance;
  RevivalClass out;
  if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c))) {
    out.verdict = Verdict::Degenerate;
    return out;
  }
  if (a != 0.0 && c / a > 0.0) out.y_min = std::sqrt(c / a);

  if (std::abs(a) <= tol) {
    // h is (nearly) linear in y. A constant h has no turning points; anything
    // else leaves the far cubic root ambiguous.
    out.verdict = (std::abs(c) <= tol && std::abs(b) > tol) ? Verdict::NoRevival : Verdict::Degenerate;
    return out;
  }

  // Roots are unchanged under h -> -h; work with a leading coefficient > 0 so
  // h -> +inf and the positive stationary point, if any, is a minimum.
  const double sign = a > 0.0 ? 1.0 : -1.0;
  const double A = sign * a;
  const double B = sign * b;
  const double C = sign * c;
  const double h1 = h_poly(A, B, C, 1.0);
  const std::vector<double> candidates = solve_depressed_cubic(-3.0 * C / A, 4.0 * B / A);
  const double upper = root_bound(-3.0 * C / A, 4.0 * B / A) + 1.0;

  const bool turning_beyond_one = C > 0.0 && std::sqrt(C / A) > 1.0 + tol;
  if (!turning_beyond_one) {
    // h is increasing on (1, inf).
    if (h1 > tol) {
      out.verdict = Verdict::NoRevival;
    } else if (h1 < -tol) {
      out.verdict = Verdict::SimpleRevival;
      out.roots_gt1.push_back(bracketed_root(A, B, C, 1.0, upper, candidates));
    } else {
      // Root at y = 1. If h is also flat there it is a double root, h stays
      // >= 0 beyond it and there is no turning point for delta > 0.
      const bool flat = C > 0.0 && std::abs(std::sqrt(C / A) - 1.0) <= tol;
      out.verdict = flat ? Verdict::NoRevival : Verdict::Degenerate;
    }
    return out;
  }

  const double y_star = std::sqrt(C / A);
  const double h_star = h_poly(A, B, C, y_star);
  if (h_star > tol) {
    out.verdict = Verdict::NoRevival;
  } else if (h_star < -tol) {
    if (h1 > tol) {
      out.verdict = Verdict::DipInRevival;
      out.roots_gt1.push_back(bracketed_root(A, B, C, 1.0, y_star, candidates));
      out.roots_gt1.push_back(bracketed_root(A, B, C, y_star, upper, candidates));
    } else if (h1 < -tol) {
      out.verdict = Verdict::SimpleRevival;
      out.roots_gt1.push_back(bracketed_root(A, B, C, y_star, upper, candidates));
    } else {
      out.verdict = Verdict::Degenerate;
    }
  } else {
    // Tangency at the minimum: the root count flips under any perturbation.
    out.verdict = Verdict::Degenerate;
  }
  return out;
}

BellCoefficients classical_bell_coeffs(const std::array<double, 3>& x, const std::array<double, 3>& v) {
  for (int k = 0; k < 3; ++k) {
    if (!(x[k] >= 0.0) || !(v[k] >= 0.0)) throw ValidationError("Bell coefficients need x >= 0 and v >= 0");
  }
  const double sum = x[0] + x[1] + x[2];
  if (!(sum > 0.0)) throw ValidationError("Bell coefficients need a nonzero total intensity");
  const double s2 = sum * sum;
  const double s3 = s2 * sum;
  BellCoefficients out;
  out.A = 3.0 * x[1] * (x[0] + x[2]) / s2 + 3.0 * (x[1] * (v[0] + v[2]) + v[1] * (x[0] + x[2])) / s3;
  out.B = 3.0 * x[0] * x[2] / s2 + 3.0 * (x[0] * v[2] + x[2] * v[0]) / s3;
  out.C = 12.0 * x[0] * x[1] * x[2] / s3;
  return out;
}

BellCoefficients quantum_bell_coeffs(double mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw ValidationError("mu must lie in [0, 1]");
  return {2.0 * (3.0 - 2.0 * mu) / 9.0, (3.0 - 2.0 * mu) / 9.0, 4.0 / 9.0};
}

StationaryInfo ymin_and_h1(double a, double b, double c) {
  if (!(a > 0.0)) throw EvaluationError("stationary point undefined: A must be > 0");
  if (!(c >= 0.0)) throw EvaluationError("stationary point undefined: C must be >= 0");
  return {std::sqrt(c / a), h_poly(a, b, c, 1.0)};
}

double appendix_a_expression(double t1, double t2, double t3) noexcept {
  return t2 * (t1 + t3) + 4.0 * t1 * t3 - 12.0 * t1 * t2 * t3;
}

AppendixAReport verify_appendix_a(int grid_resolution) {
  if (grid_resolution < 2) throw ValidationError("grid resolution must be >= 2");
  AppendixAReport report;
  report.resolution = grid_resolution;
  const int n = grid_resolution;

  report.grid_minimum = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; i + j <= n; ++j) {
      const double t1 = static_cast<double>(i) / n;
      const double t2 = static_cast<double>(j) / n;
      const double t3 = static_cast<double>(n - i - j) / n;
      const double value = appendix_a_expression(t1, t2, t3);
      if (value < report.grid_minimum) {
        report.grid_minimum = value;
        report.grid_argmin = {t1, t2, t3};
      }
    }
  }
  report.grid_ok = report.grid_minimum >= -1e-12;

  const double r = std::sqrt(3.0) / 2.0;
  report.value_at_t0 = appendix_a_expression(1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0);
  report.value_at_t1 = appendix_a_expression((1.0 - r) / 3.0, 1.0 / 3.0, (1.0 + r) / 3.0);
  report.stationary_ok =
      std::abs(report.value_at_t0 - 1.0 / 9.0) <= 1e-12 && std::abs(report.value_at_t1 - 2.0 / 9.0) <= 1e-12;

  // On each edge the expression reduces to a product of the two remaining
  // coordinates; evaluate the full expression there to confirm.
  report.edge_minimum_t1_zero = report.edge_minimum_t2_zero = report.edge_minimum_t3_zero =
      std::numeric_limits<double>::infinity();
  for (int k = 0; k <= n; ++k) {
    const double s = static_cast<double>(k) / n;
    report.edge_minimum_t1_zero = std::min(report.edge_minimum_t1_zero, appendix_a_expression(0.0, s, 1.0 - s));
    report.edge_minimum_t2_zero = std::min(report.edge_minimum_t2_zero, appendix_a_expression(s, 0.0, 1.0 - s));
    report.edge_minimum_t3_zero = std::min(report.edge_minimum_t3_zero, appendix_a_expression(s, 1.0 - s, 0.0));
  }
  report.edges_ok = report.edge_minimum_t1_zero >= 0.0 && report.edge_minimum_t2_zero >= 0.0 &&
                    report.edge_minimum_t3_zero >= 0.0;
  return report;
}

}  // namespace tricorr
