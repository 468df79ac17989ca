#include "test_support.hpp"

#include "tricorr/correlation.hpp"
#include "tricorr/errors.hpp"
#include "tricorr/shape_analysis.hpp"

#include <doctest.h>

#include <numbers>

using namespace tricorr;
using namespace tricorr::testing;

namespace {

// Sign changes of dG/d(delta) on (0, 6], from the sampled four-exponential curve.
int derivative_sign_changes(const ShapeCoefficients& c) {
  constexpr int kPoints = 2000;
  const double h = 6.0 / kPoints;
  int changes = 0;
  int last = 0;
  for (int k = 1; k <= kPoints; ++k) {
    const double d = c.evaluate(k * h + 1e-4) - c.evaluate(k * h - 1e-4);
    const int sign = d > 0 ? 1 : (d < 0 ? -1 : 0);
    if (sign != 0) {
      if (last != 0 && sign != last) ++changes;
      last = sign;
    }
  }
  return changes;
}

}  // namespace

TEST_CASE("classification examples") {
  CHECK(classify(2.0 / 9, 1.0 / 9, 4.0 / 9).verdict == Verdict::SimpleRevival);
  CHECK(classify(2.0 / 3, 1.0 / 3, 4.0 / 9).verdict == Verdict::NoRevival);
  CHECK(classify(1, 1, 0).verdict == Verdict::NoRevival);

  const auto single = classify(2.0 / 9, 1.0 / 9, 4.0 / 9);
  REQUIRE(single.roots_gt1.size() == 1);
  CHECK(std::abs(h_poly(2.0 / 9, 1.0 / 9, 4.0 / 9, single.roots_gt1[0])) < 1e-12);
  REQUIRE(single.y_min.has_value());
  CHECK(*single.y_min == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("two roots above one give a dip inside the revival") {
  // h(y) = (y - 2)(y - 3)(y + 5) = y^3 - 19y + 30  ->  A = 1, 4B = 30, 3C = 19.
  const auto rc = classify(1.0, 7.5, 19.0 / 3.0);
  CHECK(rc.verdict == Verdict::DipInRevival);
  REQUIRE(rc.roots_gt1.size() == 2);
  CHECK(rc.roots_gt1[0] == doctest::Approx(2.0));
  CHECK(rc.roots_gt1[1] == doctest::Approx(3.0));
}

TEST_CASE("negative leading coefficient is handled by sign flip") {
  const auto rc = classify(-1.0, -7.5, -19.0 / 3.0);
  CHECK(rc.verdict == Verdict::DipInRevival);
  const auto neg_c = classify(1.0, -0.5, -0.01);
  CHECK(neg_c.verdict == Verdict::SimpleRevival);
}

TEST_CASE("boundary cases at y = 1 and tangencies") {
  // h = (y - 1)^2 (y + 2): touches zero at y = 1 and stays positive above it.
  CHECK(classify(1.0, 0.5, 1.0).verdict == Verdict::NoRevival);
  // h = (y - 1)(y^2 + y - 5): simple root at 1 plus one above it.
  CHECK(classify(1.0, 1.25, 2.0).verdict == Verdict::Degenerate);
  // h = (y - 1)(y^2 + y + 0.4): only the simple root at 1.
  CHECK(classify(1.0, -0.1, 0.2).verdict == Verdict::Degenerate);
  // h = (y - 2)^2 (y + 4): tangent above 1.
  CHECK(classify(1.0, 4.0, 4.0).verdict == Verdict::Degenerate);
  CHECK(classify(0.0, 0.0, 0.0).verdict == Verdict::Degenerate);
  CHECK(classify(0.0, 1.0, 0.0).verdict == Verdict::NoRevival);
}

TEST_CASE("depressed cubic solver") {
  auto roots = solve_depressed_cubic(-19.0, 30.0);
  REQUIRE(roots.size() == 3);
  CHECK(roots[0] == doctest::Approx(-5.0));
  CHECK(roots[1] == doctest::Approx(2.0));
  CHECK(roots[2] == doctest::Approx(3.0));
  roots = solve_depressed_cubic(1.0, 2.0);
  REQUIRE(roots.size() == 1);
  CHECK(roots[0] * roots[0] * roots[0] + roots[0] + 2.0 == doctest::Approx(0.0));
  CHECK(solve_depressed_cubic(-3.0, 2.0).size() == 3);
}

TEST_CASE("classical bell coefficients") {
  auto c = classical_bell_coeffs({1, 1, 1}, {0, 0, 0});
  CHECK(c.A == doctest::Approx(2.0 / 3));
  CHECK(c.B == doctest::Approx(1.0 / 3));
  CHECK(c.C == doctest::Approx(4.0 / 9));
  c = classical_bell_coeffs({1, 0, 1}, {0, 0, 0});
  CHECK(c.A == doctest::Approx(0.0));
  CHECK(c.B == doctest::Approx(0.75));
  CHECK(c.C == doctest::Approx(0.0));
  c = classical_bell_coeffs({1, 1, 1}, {1, 1, 1});
  CHECK(c.A == doctest::Approx(10.0 / 9));
  CHECK(c.B == doctest::Approx(5.0 / 9));
  CHECK(c.C == doctest::Approx(4.0 / 9));
  CHECK_THROWS_AS(classical_bell_coeffs({0, 0, 0}, {0, 0, 0}), ValidationError);
}

TEST_CASE("closed-form bell coefficients agree with probed coefficients") {
  Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    const std::array<double, 3> x{uniform(rng, 0.05, 3), uniform(rng, 0.05, 3), uniform(rng, 0.05, 3)};
    const std::array<double, 3> v{uniform(rng, 0, 3), uniform(rng, 0, 3), uniform(rng, 0, 3)};
    std::array<ClassicalSourceMoments, 3> s;
    for (int a = 0; a < 3; ++a) s[a] = {x[a], v[a], 0.0};
    const auto probed = shape_coefficients(bell_matrix(), s);
    const auto closed = classical_bell_coeffs(x, v);
    CHECK(std::abs(probed.A - closed.A) < 1e-12);
    CHECK(std::abs(probed.B - closed.B) < 1e-12);
    CHECK(std::abs(probed.C - closed.C) < 1e-12);
  }
  for (double mu : {0.0, 0.2, 0.5, 0.8, 1.0}) {
    const auto q = QuantumSourceMoments::from_mu(mu);
    const auto probed = shape_coefficients(bell_matrix(), QuantumSources{q, q, q});
    const auto closed = quantum_bell_coeffs(mu);
    CHECK(std::abs(probed.A - closed.A) < 1e-12);
    CHECK(std::abs(probed.B - closed.B) < 1e-12);
    CHECK(std::abs(probed.C - closed.C) < 1e-12);
  }
}

TEST_CASE("quantum bell coefficients") {
  auto c = quantum_bell_coeffs(1.0);
  CHECK(c.A == doctest::Approx(2.0 / 9));
  CHECK(c.B == doctest::Approx(1.0 / 9));
  CHECK(c.C == doctest::Approx(4.0 / 9));
  c = quantum_bell_coeffs(0.0);
  const auto cl = classical_bell_coeffs({1, 1, 1}, {0, 0, 0});
  CHECK(c.A == doctest::Approx(cl.A));
  CHECK(c.B == doctest::Approx(cl.B));
  CHECK(c.C == doctest::Approx(cl.C));
  CHECK_THROWS_AS(quantum_bell_coeffs(1.1), ValidationError);
  CHECK_THROWS_AS(quantum_bell_coeffs(-0.1), ValidationError);
  const auto half = quantum_bell_coeffs(0.5);
  CHECK(classify(half.A, half.B, half.C).verdict == Verdict::NoRevival);
}

TEST_CASE("mu threshold: the verdict flips once, between 0.50 and 0.51") {
  int flips = 0;
  Verdict last = Verdict::NoRevival;
  for (int k = 0; k <= 100; ++k) {
    const double mu = k / 100.0;
    const auto c = quantum_bell_coeffs(mu);
    const Verdict v = classify(c.A, c.B, c.C).verdict;
    CHECK(v == (k <= 50 ? Verdict::NoRevival : Verdict::SimpleRevival));
    if (k > 0 && v != last) ++flips;
    last = v;
  }
  CHECK(flips == 1);
}

TEST_CASE("stationary point and h(1)") {
  auto s = ymin_and_h1(2.0 / 9, 1.0 / 9, 4.0 / 9);
  CHECK(s.y_min == doctest::Approx(std::sqrt(2.0)));
  CHECK(s.h_at_1 == doctest::Approx(-2.0 / 3));
  const auto c0 = quantum_bell_coeffs(0.0);
  CHECK(ymin_and_h1(c0.A, c0.B, c0.C).h_at_1 == doctest::Approx(2.0 / 3));
  s = ymin_and_h1(1, 0, 1);
  CHECK(s.y_min == 1.0);
  CHECK(s.h_at_1 == -2.0);
  CHECK_THROWS_AS(ymin_and_h1(0.0, 1.0, 1.0), EvaluationError);
  for (int k = 0; k <= 100; ++k) {
    const double mu = k / 100.0;
    const auto c = quantum_bell_coeffs(mu);
    const auto st = ymin_and_h1(c.A, c.B, c.C);
    CHECK(std::abs(st.y_min * st.y_min - 2.0 / (3.0 - 2.0 * mu)) < 1e-12);
    CHECK(std::abs(st.h_at_1 - 2.0 * (1.0 - 2.0 * mu) / 3.0) < 1e-12);
  }
}

TEST_CASE("stationary-point conditions agree with root counting when A, C > 0") {
  Rng rng(22);
  for (int i = 0; i < 20000; ++i) {
    const double a = uniform(rng, 0.01, 2), b = uniform(rng, -1, 1), c = uniform(rng, 0.01, 2);
    const auto rc = classify(a, b, c);
    if (rc.verdict == Verdict::Degenerate) continue;
    const auto st = ymin_and_h1(a, b, c);
    const double hmin = h_poly(a, b, c, st.y_min);
    // No revival iff h has no zero above 1: either y_min <= 1 and h(1) >= 0, or h(y_min) >= 0.
    const bool stationary_no_revival = st.y_min <= 1.0 ? st.h_at_1 >= 0.0 : hmin >= 0.0;
    CHECK(stationary_no_revival == (rc.verdict == Verdict::NoRevival));
  }
}

TEST_CASE("root count matches the sign changes of the sampled curve") {
  Rng rng(23);
  int checked = 0;
  for (int i = 0; i < 3000; ++i) {
    ShapeCoefficients c{0.0, uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)};
    const auto rc = classify(c.A, c.B, c.C);
    if (rc.verdict == Verdict::Degenerate) continue;
    // Roots past y = e^36 lie beyond delta = 6, and roots within the sampling
    // resolution of each other or of y = 1 cannot be resolved on the grid.
    bool resolvable = true;
    for (double y : rc.roots_gt1) {
      const double delta = std::sqrt(std::log(y));
      if (delta > 5.9 || delta < 0.05) resolvable = false;
    }
    if (rc.roots_gt1.size() == 2 &&
        std::sqrt(std::log(rc.roots_gt1[1])) - std::sqrt(std::log(rc.roots_gt1[0])) < 0.05) {
      resolvable = false;
    }
    if (!resolvable) continue;
    ++checked;
    CHECK(derivative_sign_changes(c) == static_cast<int>(rc.roots_gt1.size()));
  }
  CHECK(checked > 1000);
}

TEST_CASE("classical bell sources never revive") {
  Rng rng(24);
  int revivals = 0;
  for (int i = 0; i < 100000; ++i) {
    std::array<double, 3> x, v;
    for (int a = 0; a < 3; ++a) {
      x[a] = uniform(rng, 0, 10);
      v[a] = uniform(rng, 0, 10);
    }
    const auto c = classical_bell_coeffs(x, v);
    if (is_revival(classify(c.A, c.B, c.C).verdict)) ++revivals;
  }
  CHECK(revivals == 0);
}

TEST_CASE("adding variance only lifts h") {
  Rng rng(25);
  for (int i = 0; i < 2000; ++i) {
    std::array<double, 3> x, v;
    for (int a = 0; a < 3; ++a) {
      x[a] = uniform(rng, 0.01, 5);
      v[a] = uniform(rng, 0, 5);
    }
    const auto before = classical_bell_coeffs(x, v);
    v[rng() % 3] += uniform(rng, 0, 5);
    const auto after = classical_bell_coeffs(x, v);
    for (int k = 0; k <= 50; ++k) {
      const double y = 1.0 + 0.2 * k;
      CHECK(h_poly(after.A, after.B, after.C, y) - h_poly(before.A, before.B, before.C, y) >= -1e-12);
    }
  }
}

TEST_CASE("simplex inequality") {
  CHECK(appendix_a_expression(1.0 / 6, 2.0 / 3, 1.0 / 6) == doctest::Approx(1.0 / 9));
  CHECK(appendix_a_expression(0.0, 0.5, 0.5) == doctest::Approx(0.25));
  const auto r = verify_appendix_a(500);
  CHECK(r.passed());
  CHECK(r.grid_minimum >= -1e-12);
  CHECK(std::abs(r.value_at_t0 - 1.0 / 9) < 1e-12);
  CHECK(std::abs(r.value_at_t1 - 2.0 / 9) < 1e-12);
  CHECK(r.edge_minimum_t1_zero >= 0.0);
  CHECK(r.edge_minimum_t2_zero >= 0.0);
  CHECK(r.edge_minimum_t3_zero >= 0.0);
  CHECK_THROWS_AS(verify_appendix_a(1), ValidationError);
}

TEST_CASE("verdict names round-trip") {
  for (Verdict v : {Verdict::NoRevival, Verdict::SimpleRevival, Verdict::DipInRevival, Verdict::Degenerate}) {
    CHECK(verdict_from_string(to_string(v)) == v);
  }
  CHECK_THROWS_AS(verdict_from_string("Sideways"), ValidationError);
  CHECK(is_revival(Verdict::SimpleRevival));
  CHECK(is_revival(Verdict::DipInRevival));
  CHECK_FALSE(is_revival(Verdict::NoRevival));
  CHECK_FALSE(is_revival(Verdict::Degenerate));
}
