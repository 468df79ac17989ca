#include "tricorr/experiments.hpp"

#include "tricorr/errors.hpp"
#include "tricorr/parallel.hpp"
#include "tricorr/rng.hpp"

#include <cmath>
#include <sstream>

namespace tricorr {

namespace {

constexpr double kReconstructionTolerance = 1e-12;

double draw_uniform(SplitMix64& rng, const std::array<double, 2>& range) {
  if (range[1] == range[0]) return range[0];
  return range[0] + (range[1] - range[0]) * rng.uniform();
}

struct TrialOutcome {
  bool dark = false;
  bool shape_check_failed = false;
  Verdict verdict = Verdict::Degenerate;
  ShapeCoefficients coefficients;
};

TrialOutcome run_trial(const CampaignConfig& cfg, std::size_t trial) {
  TrialOutcome out;
  const TrialSetup setup = trial_setup(cfg, trial);
  const TransferMatrix u = compose_circuit(setup.circuit);
  try {
    out.coefficients = shape_coefficients(u, setup.sources);
    if (cfg.shape_check_points > 0) {
      const auto grid = linear_grid(0.0, 3.0, cfg.shape_check_points);
      for (const auto& point : sweep_delay(u, setup.sources, grid)) {
        if (std::abs(point.g3 - out.coefficients.evaluate(point.delta)) > kReconstructionTolerance) {
          out.shape_check_failed = true;
        }
      }
    }
  } catch (const DarkPortError&) {
    out.dark = true;
    return out;
  }
  out.verdict = classify(out.coefficients.A, out.coefficients.B, out.coefficients.C).verdict;
  return out;
}

CampaignResult run(const CampaignConfig& cfg) {
  validate(cfg);
  std::vector<TrialOutcome> outcomes(cfg.n_trials);
  parallel_for(cfg.n_trials, cfg.threads, [&](std::size_t t) { outcomes[t] = run_trial(cfg, t); });

  CampaignResult result;
  result.n_trials = cfg.n_trials;
  std::array<std::size_t, 4> kept{};
  for (std::size_t t = 0; t < outcomes.size(); ++t) {
    const auto& o = outcomes[t];
    if (o.dark) {
      ++result.dark_port_trials;
      continue;
    }
    if (o.shape_check_failed) ++result.shape_check_failures;
    const auto idx = static_cast<std::size_t>(o.verdict);
    ++result.counts[idx];
    if (o.verdict != Verdict::NoRevival && kept[idx] < cfg.max_exemplars) {
      ++kept[idx];
      TrialSetup setup = trial_setup(cfg, t);
      result.exemplars.push_back({t, o.verdict, std::move(setup.circuit), std::move(setup.sources), o.coefficients});
    }
  }
  const std::size_t revivals = result.count(Verdict::SimpleRevival) + result.count(Verdict::DipInRevival);
  result.revival_fraction =
      result.evaluated() == 0 ? 0.0 : static_cast<double>(revivals) / static_cast<double>(result.evaluated());
  if (cfg.model == Model::Quantum) {
    result.third_moment_rule = "<n^3> = <n^2>^2/<n> (minimum over nonnegative two-point laws)";
  }
  return result;
}

}  // namespace

void validate(const CampaignConfig& cfg) {
  if (cfg.n_trials < 1) throw ValidationError("campaign needs n_trials >= 1");
  if (!(cfg.epsilon >= 0.0) || !std::isfinite(cfg.epsilon)) throw ValidationError("epsilon must be >= 0");
  if (!(cfg.eta >= 0.0 && cfg.eta <= 1.0)) throw ValidationError("eta must lie in [0, 1]");
  if (cfg.model == Model::Quantum && !(cfg.mu >= 0.0 && cfg.mu <= 1.0)) {
    throw ValidationError("mu must lie in [0, 1]");
  }
  if (cfg.model == Model::Classical) {
    for (const auto& range : {cfg.x_range, cfg.v_range}) {
      if (!(range[0] >= 0.0 && range[1] >= range[0])) {
        throw ValidationError("intensity ranges must satisfy 0 <= lo <= hi");
      }
    }
    if (cfg.fixed_intensities) {
      for (double x : *cfg.fixed_intensities) {
        if (!(x >= 0.0)) throw ValidationError("fixed intensities must be >= 0");
      }
    }
  }
}

TrialSetup trial_setup(const CampaignConfig& cfg, std::size_t trial) {
  SplitMix64 rng(stream_seed(cfg.master_seed, trial));
  TrialSetup setup;
  const std::uint64_t circuit_seed = rng();
  setup.circuit = perturb_circuit(bell_circuit(cfg.eta), cfg.epsilon, circuit_seed);
  if (cfg.model == Model::Quantum) {
    const auto q = QuantumSourceMoments::from_mu(cfg.mu);
    setup.sources = QuantumSources{q, q, q};
  } else {
    std::array<ClassicalSourceMoments, 3> s{};
    for (int a = 0; a < 3; ++a) {
      s[a].mean = cfg.fixed_intensities ? (*cfg.fixed_intensities)[a] : draw_uniform(rng, cfg.x_range);
    }
    for (int a = 0; a < 3; ++a) s[a].variance = draw_uniform(rng, cfg.v_range);
    setup.sources = s;
  }
  return setup;
}

CampaignResult run_classical_campaign(const CampaignConfig& cfg) {
  if (cfg.model != Model::Classical) throw ValidationError("classical campaign needs model = classical");
  return run(cfg);
}

CampaignResult run_quantum_campaign(const CampaignConfig& cfg) {
  if (cfg.model != Model::Quantum) throw ValidationError("quantum campaign needs model = quantum");
  return run(cfg);
}

CampaignResult run_campaign(const CampaignConfig& cfg) {
  return cfg.model == Model::Quantum ? run_quantum_campaign(cfg) : run_classical_campaign(cfg);
}

double MuScanRow::r_total() const { return result.revival_fraction; }

double MuScanRow::r_simple() const {
  const auto n = result.evaluated();
  return n == 0 ? 0.0 : static_cast<double>(result.count(Verdict::SimpleRevival)) / static_cast<double>(n);
}

double MuScanRow::r_double() const {
  const auto n = result.evaluated();
  return n == 0 ? 0.0 : static_cast<double>(result.count(Verdict::DipInRevival)) / static_cast<double>(n);
}

double MuScanRow::r_total_error() const {
  const auto n = result.evaluated();
  if (n == 0) return 0.0;
  const double r = r_total();
  return std::sqrt(r * (1.0 - r) / static_cast<double>(n));
}

std::vector<MuScanRow> mu_scan(const CampaignConfig& cfg, const std::vector<double>& mu_grid) {
  std::vector<MuScanRow> rows;
  rows.reserve(mu_grid.size());
  for (double mu : mu_grid) {
    if (!(mu >= 0.0 && mu <= 1.0)) throw ValidationError("mu grid values must lie in [0, 1]");
    CampaignConfig point = cfg;
    point.model = Model::Quantum;
    point.mu = mu;
    rows.push_back({mu, run_quantum_campaign(point)});
  }
  return rows;
}

std::vector<double> parse_range_grid(const std::string& spec) {
  std::istringstream in(spec);
  double start = 0.0, stop = 0.0, step = 0.0;
  char c1 = 0, c2 = 0;
  if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof()) {
    throw ValidationError("grid must look like start:stop:step, got '" + spec + "'");
  }
  if (!(step > 0.0) || !(stop >= start)) throw ValidationError("grid needs step > 0 and stop >= start");
  const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  std::vector<double> grid;
  for (long i = 0; i <= n; ++i) {
    // Snap to 12 decimals so 0.05-style steps print cleanly.
    grid.push_back(std::round((start + step * static_cast<double>(i)) * 1e12) / 1e12);
  }
  return grid;
}

}  // namespace tricorr
