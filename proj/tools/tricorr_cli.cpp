// Command-line front end: sweep, classify, campaign, mu-scan, oracle,
// verify-appendix-a. Exit codes: 0 ok, 2 bad input, 3 evaluation failure.

#include "tricorr/config.hpp"
#include "tricorr/errors.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace tricorr;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitEvaluation = 3;

struct CommonArgs {
  std::string config;
  std::string model = "classical";
  std::string out;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
};

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write output file '" + path + "'");
  return out;
}

void write_json(const std::string& path, const Json& j) {
  auto out = open_output(path);
  out << j.dump(2) << '\n';
}

// Fails with exit code 3 if the overlaps cannot come from three unit vectors.
void require_realizable(const OverlapSet& o) { (void)embed_overlaps(o); }

int cmd_sweep(const CommonArgs& a, double dmin, double dmax, int points) {
  const ProblemConfig cfg = load_problem(a.config);
  const Model model = model_from_string(a.model);
  const auto grid = linear_grid(dmin, dmax, points);
  const auto curve = sweep_delay(cfg.transfer(), cfg.source_set(model), grid);
  auto out = open_output(a.out);
  write_sweep_csv(out, curve);
  return kExitOk;
}

int cmd_classify(const CommonArgs& a) {
  const ProblemConfig cfg = load_problem(a.config);
  const Model model = model_from_string(a.model);
  const ShapeCoefficients c = shape_coefficients(cfg.transfer(), cfg.source_set(model));
  write_json(a.out, verdict_json(classify(c.A, c.B, c.C), c));
  return kExitOk;
}

int cmd_campaign(const CommonArgs& a) {
  const ProblemConfig cfg = load_problem(a.config);
  CampaignConfig campaign = cfg.campaign_config();
  if (a.seed) campaign.master_seed = *a.seed;
  if (a.threads) campaign.threads = a.threads;
  const CampaignResult r = run_campaign(campaign);
  write_json(a.out, to_json(r, campaign));
  return kExitOk;
}

int cmd_mu_scan(const CommonArgs& a, const std::string& grid) {
  const ProblemConfig cfg = load_problem(a.config);
  CampaignConfig campaign = cfg.campaign_config();
  if (a.seed) campaign.master_seed = *a.seed;
  if (a.threads) campaign.threads = a.threads;
  const auto rows = mu_scan(campaign, parse_range_grid(grid));
  auto out = open_output(a.out);
  write_mu_scan_csv(out, rows);
  return kExitOk;
}

int cmd_oracle(const CommonArgs& a, std::size_t samples) {
  const ProblemConfig cfg = load_problem(a.config);
  const Model model = model_from_string(a.model);
  const OverlapSet& o = cfg.overlap_set();
  require_realizable(o);
  if (model == Model::Classical) {
    const ClassicalSources sources = cfg.classical_sources();
    MCOptions opt;
    opt.n_samples = samples;
    opt.seed = a.seed.value_or(cfg.seed.value_or(0));
    opt.threads = a.threads;
    const MCEstimate e = mc_classical_g3(cfg.transfer(), sources, o, opt);
    write_json(a.out, mc_report_json(e, opt.seed, g3_classical(cfg.transfer(), sources, o)));
  } else {
    const auto dists = cfg.photon_distributions();
    const FockEstimate e = fock_g3(cfg.transfer(), dists, o);
    write_json(a.out, fock_report_json(e, g3_quantum(cfg.transfer(), cfg.quantum_sources(), o)));
  }
  return kExitOk;
}

int cmd_appendix(const std::string& out, int resolution) {
  const AppendixAReport r = verify_appendix_a(resolution);
  write_json(out, to_json(r));
  return r.passed() ? kExitOk : kExitEvaluation;
}

int guarded(const std::function<int()>& fn) {
  try {
    return fn();
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const EvaluationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitEvaluation;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Third-order intensity correlations behind a three-port interferometer"};
  app.require_subcommand(1);

  CommonArgs args;
  double delta_min = 0.0, delta_max = 3.0;
  int points = 101;
  std::string grid;
  std::size_t samples = 1'000'000;
  int resolution = 600;

  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", args.config, "JSON config file")->required()->check(CLI::ExistingFile);
  };
  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--model", args.model, "classical or quantum")
        ->check(CLI::IsMember({"classical", "quantum"}));
  };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", args.out, "output file")->required(); };
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", args.seed, "override the configured seed");
    sub->add_option("--threads", args.threads, "worker threads (0 = all cores)");
  };

  auto* sweep = app.add_subcommand("sweep", "G3 along the symmetric delay path, as CSV");
  add_config(sweep);
  add_model(sweep);
  sweep->add_option("--delta-min", delta_min)->required();
  sweep->add_option("--delta-max", delta_max)->required();
  sweep->add_option("--points", points)->required()->check(CLI::PositiveNumber);
  add_out(sweep);

  auto* classify_cmd = app.add_subcommand("classify", "shape coefficients and revival verdict, as JSON");
  add_config(classify_cmd);
  add_model(classify_cmd);
  add_out(classify_cmd);

  auto* campaign = app.add_subcommand("campaign", "perturbed-tritter campaign, as JSON");
  add_config(campaign);
  add_out(campaign);
  add_seed(campaign);

  auto* scan = app.add_subcommand("mu-scan", "quantum campaign over a mu grid, as CSV");
  add_config(scan);
  scan->add_option("--grid", grid, "start:stop:step")->required();
  add_out(scan);
  add_seed(scan);

  auto* oracle = app.add_subcommand("oracle", "brute-force reference value next to the closed form");
  add_config(oracle);
  add_model(oracle);
  oracle->add_option("--samples", samples, "Monte Carlo samples (classical)")->check(CLI::PositiveNumber);
  add_out(oracle);
  add_seed(oracle);

  auto* appendix = app.add_subcommand("verify-appendix-a", "grid check of the simplex inequality");
  appendix->add_option("--resolution", resolution)->required()->check(CLI::Range(2, 100000));
  add_out(appendix);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  if (*sweep) return guarded([&] { return cmd_sweep(args, delta_min, delta_max, points); });
  if (*classify_cmd) return guarded([&] { return cmd_classify(args); });
  if (*campaign) return guarded([&] { return cmd_campaign(args); });
  if (*scan) return guarded([&] { return cmd_mu_scan(args, grid); });
  if (*oracle) return guarded([&] { return cmd_oracle(args, samples); });
  if (*appendix) return guarded([&] { return cmd_appendix(args.out, resolution); });
  return kExitValidation;
}
