#include "test_support.hpp"

#include "tricorr/errors.hpp"
#include "tricorr/experiments.hpp"

#include <doctest.h>

#include <numbers>

using namespace tricorr;
using namespace tricorr::testing;

namespace {

CampaignConfig noisy_lossy_settings(Model model, std::size_t trials) {
  CampaignConfig cfg;
  cfg.model = model;
  cfg.epsilon = 2.0 * std::numbers::pi / 100.0;
  cfg.eta = 0.8;
  cfg.n_trials = trials;
  cfg.master_seed = 77;
  return cfg;
}

bool same(const CampaignResult& a, const CampaignResult& b) {
  if (a.counts != b.counts || a.dark_port_trials != b.dark_port_trials || a.revival_fraction != b.revival_fraction ||
      a.exemplars.size() != b.exemplars.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.exemplars.size(); ++i) {
    const auto& x = a.exemplars[i];
    const auto& y = b.exemplars[i];
    if (x.trial != y.trial || !(x.circuit == y.circuit) || x.coefficients.A != y.coefficients.A ||
        x.coefficients.B != y.coefficients.B || x.coefficients.C != y.coefficients.C) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("counts and dark trials add up to the trial count") {
  auto cfg = noisy_lossy_settings(Model::Classical, 400);
  const auto r = run_campaign(cfg);
  std::size_t total = r.dark_port_trials;
  for (auto c : r.counts) total += c;
  CHECK(total == 400);
  CHECK(r.n_trials == 400);
  CHECK(r.revival_fraction == 0.0);
}

TEST_CASE("campaigns are deterministic and independent of the thread count") {
  for (Model model : {Model::Classical, Model::Quantum}) {
    auto cfg = noisy_lossy_settings(model, 300);
    cfg.epsilon = 0.3;
    cfg.mu = 0.7;
    cfg.threads = 1;
    const auto one = run_campaign(cfg);
    cfg.threads = 4;
    CHECK(same(one, run_campaign(cfg)));
    cfg.threads = 3;
    CHECK(same(one, run_campaign(cfg)));
    cfg.master_seed += 1;
    CHECK_FALSE(trial_setup(cfg, 0).circuit == trial_setup(noisy_lossy_settings(model, 300), 0).circuit);
  }
}

TEST_CASE("unperturbed lossless classical campaign with equal intensities") {
  CampaignConfig cfg;
  cfg.model = Model::Classical;
  cfg.epsilon = 0.0;
  cfg.eta = 1.0;
  cfg.n_trials = 50;
  cfg.fixed_intensities = std::array<double, 3>{1.0, 1.0, 1.0};
  const auto r = run_classical_campaign(cfg);
  CHECK(r.count(Verdict::NoRevival) == 50);
  for (std::size_t t = 0; t < 50; t += 7) {
    const auto setup = trial_setup(cfg, t);
    const auto c = shape_coefficients(compose_circuit(setup.circuit), setup.sources);
    CHECK(std::abs(c.A - 2.0 / 3.0) < 1e-12);
    CHECK(std::abs(c.B - 1.0 / 3.0) < 1e-12);
    CHECK(std::abs(c.C - 4.0 / 9.0) < 1e-12);
  }
}

TEST_CASE("unperturbed lossless quantum campaign follows the bell verdict") {
  for (int k = 0; k <= 20; ++k) {
    CampaignConfig cfg;
    cfg.model = Model::Quantum;
    cfg.mu = k / 20.0;
    cfg.n_trials = 20;
    const auto c = quantum_bell_coeffs(cfg.mu);
    const Verdict expected = classify(c.A, c.B, c.C).verdict;
    CHECK(run_quantum_campaign(cfg).count(expected) == 20);
  }
}

TEST_CASE("quantum campaign endpoints at desk scale") {
  auto cfg = noisy_lossy_settings(Model::Quantum, 1000);
  cfg.mu = 0.0;
  CHECK(run_quantum_campaign(cfg).revival_fraction == 0.0);
  cfg.mu = 0.45;
  CHECK(run_quantum_campaign(cfg).revival_fraction == 0.0);
  cfg.mu = 1.0;
  const auto r = run_quantum_campaign(cfg);
  CHECK(r.revival_fraction >= 0.99);
  CHECK_FALSE(r.third_moment_rule.empty());
}

TEST_CASE("exemplars reproduce their recorded class") {
  auto cfg = noisy_lossy_settings(Model::Quantum, 400);
  cfg.epsilon = 0.3;
  cfg.mu = 0.75;
  cfg.max_exemplars = 5;
  const auto r = run_quantum_campaign(cfg);
  REQUIRE_FALSE(r.exemplars.empty());
  std::array<std::size_t, 4> per_class{};
  for (const auto& e : r.exemplars) {
    CHECK(e.verdict != Verdict::NoRevival);
    ++per_class[static_cast<std::size_t>(e.verdict)];
    const auto c = shape_coefficients(compose_circuit(e.circuit), e.sources);
    CHECK(classify(c.A, c.B, c.C).verdict == e.verdict);
  }
  for (auto n : per_class) CHECK(n <= 5);
}

TEST_CASE("reconstruction check inside campaigns") {
  auto cfg = noisy_lossy_settings(Model::Classical, 100);
  cfg.epsilon = 0.2;
  cfg.v_range = {0.0, 0.5};
  cfg.shape_check_points = 101;
  CHECK(run_campaign(cfg).shape_check_failures == 0);
}

TEST_CASE("trial setup is a pure function of the trial index") {
  auto cfg = noisy_lossy_settings(Model::Classical, 10);
  cfg.v_range = {0.1, 0.2};
  const auto a = trial_setup(cfg, 3);
  const auto b = trial_setup(cfg, 3);
  CHECK(a.circuit == b.circuit);
  const auto& sa = std::get<0>(a.sources);
  const auto& sb = std::get<0>(b.sources);
  for (int i = 0; i < 3; ++i) {
    CHECK(sa[i].mean == sb[i].mean);
    CHECK(sa[i].variance == sb[i].variance);
    CHECK(sa[i].mean >= 0.0);
    CHECK(sa[i].mean <= 1.0);
    CHECK(sa[i].variance >= 0.1);
    CHECK(sa[i].variance <= 0.2);
  }
  CHECK_FALSE(trial_setup(cfg, 4).circuit == a.circuit);
}

TEST_CASE("mu scan") {
  auto cfg = noisy_lossy_settings(Model::Quantum, 300);
  const auto low = mu_scan(cfg, {0.0, 0.25, 0.5});
  REQUIRE(low.size() == 3);
  for (const auto& row : low) CHECK(row.r_total() == 0.0);
  const auto high = mu_scan(cfg, {0.9, 1.0});
  for (const auto& row : high) {
    CHECK(row.r_total() >= 0.99);
    CHECK(row.r_total() == doctest::Approx(row.r_simple() + row.r_double()));
    CHECK(row.r_total_error() >= 0.0);
  }
  CHECK_THROWS_AS(mu_scan(cfg, {1.2}), ValidationError);
}

TEST_CASE("grid parsing") {
  const auto g = parse_range_grid("0:1:0.05");
  REQUIRE(g.size() == 21);
  CHECK(g[0] == 0.0);
  CHECK(g[1] == 0.05);
  CHECK(g[20] == 1.0);
  CHECK(parse_range_grid("0.5:0.5:0.1") == std::vector<double>{0.5});
  CHECK_THROWS_AS(parse_range_grid("0:1"), ValidationError);
  CHECK_THROWS_AS(parse_range_grid("0:1:0"), ValidationError);
  CHECK_THROWS_AS(parse_range_grid("1:0:0.1"), ValidationError);
  CHECK_THROWS_AS(parse_range_grid("a:b:c"), ValidationError);
}

TEST_CASE("campaign validation") {
  CampaignConfig cfg;
  cfg.n_trials = 0;
  CHECK_THROWS_AS(run_campaign(cfg), ValidationError);
  cfg.n_trials = 1;
  cfg.eta = 1.5;
  CHECK_THROWS_AS(run_campaign(cfg), ValidationError);
  cfg.eta = 1.0;
  cfg.epsilon = -1.0;
  CHECK_THROWS_AS(run_campaign(cfg), ValidationError);
  cfg.epsilon = 0.0;
  cfg.model = Model::Quantum;
  cfg.mu = 2.0;
  CHECK_THROWS_AS(run_campaign(cfg), ValidationError);
  cfg.mu = 0.5;
  CHECK_THROWS_AS(run_classical_campaign(cfg), ValidationError);
}
