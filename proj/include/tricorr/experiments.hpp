#pragma once

#include "tricorr/correlation.hpp"
#include "tricorr/interferometer.hpp"
#include "tricorr/shape_analysis.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tricorr {

/// Perturbed-Bell-tritter campaign settings.
struct CampaignConfig {
  Model model = Model::Classical;
  double epsilon = 0.0;  // std dev of every angle and phase, radians
  double eta = 1.0;      // loss factor on every beamsplitter
  std::size_t n_trials = 10'000;
  std::uint64_t master_seed = 0;
  unsigned threads = 0;  // 0 = hardware concurrency

  // Quantum: three identical sources with mean photon number 1 at this mu.
  double mu = 1.0;

  // Classical: per-trial source means and variances drawn uniformly from
  // these ranges, unless fixed_intensities is set.
  std::array<double, 2> x_range{0.0, 1.0};
  std::array<double, 2> v_range{0.0, 0.0};
  std::optional<std::array<double, 3>> fixed_intensities;

  // If > 0, every trial also checks the four-exponential reconstruction
  // against direct G3 evaluation on this many points in [0, 3].
  int shape_check_points = 0;

  std::size_t max_exemplars = 10;
};

void validate(const CampaignConfig& cfg);

/// A trial worth keeping: enough to re-run it standalone.
struct Exemplar {
  std::size_t trial = 0;
  Verdict verdict = Verdict::Degenerate;
  CircuitSpec circuit;
  SourceSet sources;
  ShapeCoefficients coefficients;
};

struct CampaignResult {
  std::size_t n_trials = 0;
  std::array<std::size_t, 4> counts{};  // indexed by Verdict
  std::size_t dark_port_trials = 0;     // excluded from counts
  std::size_t shape_check_failures = 0;
  double revival_fraction = 0.0;        // (simple + dip) / evaluated trials
  std::vector<Exemplar> exemplars;      // up to max_exemplars per revival-type class
  std::string third_moment_rule;        // how quantum third moments were fixed

  std::size_t count(Verdict v) const { return counts[static_cast<std::size_t>(v)]; }
  std::size_t evaluated() const { return n_trials - dark_port_trials; }
};

/// The circuit and sources used by one trial; a pure function of
/// (cfg, trial index).
struct TrialSetup {
  CircuitSpec circuit;
  SourceSet sources;
};
TrialSetup trial_setup(const CampaignConfig& cfg, std::size_t trial);

CampaignResult run_classical_campaign(const CampaignConfig& cfg);
CampaignResult run_quantum_campaign(const CampaignConfig& cfg);
CampaignResult run_campaign(const CampaignConfig& cfg);

struct MuScanRow {
  double mu = 0.0;
  CampaignResult result;

  double r_total() const;
  double r_simple() const;
  double r_double() const;
  /// Binomial standard error of r_total.
  double r_total_error() const;
};

/// Quantum campaign at each mu in the grid (same circuits for every mu).
std::vector<MuScanRow> mu_scan(const CampaignConfig& cfg, const std::vector<double>& mu_grid);

/// Parses "start:stop:step" into an inclusive grid.
std::vector<double> parse_range_grid(const std::string& spec);

}  // namespace tricorr
