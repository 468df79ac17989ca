#include "test_support.hpp"

#include "tricorr/errors.hpp"
#include "tricorr/interferometer.hpp"

#include <doctest.h>

#include <numbers>

using namespace tricorr;
using namespace tricorr::testing;

namespace {

double max_abs_diff(const Eigen::Matrix3cd& a, const Eigen::Matrix3cd& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("bell matrix is the normalized discrete Fourier tritter") {
  const Eigen::Matrix3cd u = bell_matrix().matrix();
  CHECK(max_abs_diff(u * u.adjoint(), Eigen::Matrix3cd::Identity()) < 1e-15);
  const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  for (int j = 0; j < 3; ++j)
    for (int a = 0; a < 3; ++a) CHECK(std::abs(u(j, a) - std::pow(w, j * a) / std::sqrt(3.0)) < 1e-15);
}

TEST_CASE("bell circuit composes to the bell matrix") {
  CHECK(max_abs_diff(compose_circuit(bell_circuit()).matrix(), bell_matrix().matrix()) < 1e-12);
}

TEST_CASE("lossy bell circuit stays physical with the expected singular values") {
  const auto report = validate_physical(compose_circuit(bell_circuit(0.8)));
  CHECK(report.physical);
  CHECK(report.singular_values(0) == doctest::Approx(0.7285).epsilon(1e-3));
  CHECK(report.singular_values(1) == doctest::Approx(0.64).epsilon(1e-3));
  CHECK(report.singular_values(2) == doctest::Approx(0.5622).epsilon(1e-3));
}

TEST_CASE("element matrices") {
  SUBCASE("beamsplitter") {
    const auto m = element_matrix(BeamSplitter{1, 3, 0.3, 0.9});
    CHECK(m(0, 0).real() == doctest::Approx(0.9 * std::cos(0.3)));
    CHECK(m(0, 2).real() == doctest::Approx(0.9 * std::sin(0.3)));
    CHECK(m(2, 0).real() == doctest::Approx(-0.9 * std::sin(0.3)));
    CHECK(m(1, 1) == Complex(1.0, 0.0));
  }
  SUBCASE("phase shifter multiplies by exp(-i phi)") {
    const auto m = element_matrix(PhaseShifter{2, 0.7});
    CHECK(std::abs(m(1, 1) - std::polar(1.0, -0.7)) < 1e-15);
    CHECK(m(0, 0) == Complex(1.0, 0.0));
  }
}

TEST_CASE("composition order: first element acts first") {
  CircuitSpec spec{{BeamSplitter{1, 2, 0.4, 1.0}, PhaseShifter{1, 1.1}}};
  const Eigen::Matrix3cd expected = element_matrix(spec.elements[1]) * element_matrix(spec.elements[0]);
  CHECK(max_abs_diff(compose_circuit(spec).matrix(), expected) < 1e-15);
  CHECK(max_abs_diff(compose_circuit(CircuitSpec{}).matrix(), Eigen::Matrix3cd::Identity()) == 0.0);
}

TEST_CASE("perturbation") {
  const CircuitSpec bell = bell_circuit(0.8);
  CHECK(perturb_circuit(bell, 0.0, 123) == bell);
  const auto p1 = perturb_circuit(bell, 0.05, 99);
  const auto p2 = perturb_circuit(bell, 0.05, 99);
  CHECK(p1 == p2);
  CHECK_FALSE(p1 == perturb_circuit(bell, 0.05, 100));
  for (std::size_t k = 0; k < bell.elements.size(); ++k) {
    if (const auto* bs = std::get_if<BeamSplitter>(&p1.elements[k])) {
      const auto& nominal = std::get<BeamSplitter>(bell.elements[k]);
      CHECK(bs->eta == nominal.eta);
      CHECK(std::abs(bs->theta - nominal.theta) < 0.5);
    }
  }
  CHECK_THROWS_AS(perturb_circuit(bell, -0.1, 1), ValidationError);
}

TEST_CASE("random perturbed circuits remain physical") {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto spec = perturb_circuit(bell_circuit(uniform(rng, 0.0, 1.0)), 0.3, rng());
    CHECK(validate_physical(compose_circuit(spec)).physical);
  }
}

TEST_CASE("scale_losses multiplies every eta") {
  const auto spec = scale_losses(bell_circuit(1.0), 0.5);
  for (const auto& e : spec.elements)
    if (const auto* bs = std::get_if<BeamSplitter>(&e)) CHECK(bs->eta == 0.5);
}

TEST_CASE("physicality rejects gain") {
  CHECK_FALSE(validate_physical(TransferMatrix(Eigen::Matrix3cd::Identity() * 1.01)).physical);
  CHECK(validate_physical(TransferMatrix(Eigen::Matrix3cd::Identity())).physical);
}

TEST_CASE("invalid elements are rejected") {
  CHECK_THROWS_AS(validate_element(BeamSplitter{2, 2, 0.1, 1.0}), ValidationError);
  CHECK_THROWS_AS(validate_element(BeamSplitter{3, 1, 0.1, 1.0}), ValidationError);
  CHECK_THROWS_AS(validate_element(BeamSplitter{1, 4, 0.1, 1.0}), ValidationError);
  CHECK_THROWS_AS(validate_element(BeamSplitter{1, 2, 0.1, 1.5}), ValidationError);
  CHECK_THROWS_AS(validate_element(PhaseShifter{0, 0.1}), ValidationError);
  CHECK_THROWS_AS(compose_circuit(CircuitSpec{{PhaseShifter{4, 0.0}}}), ValidationError);
}
