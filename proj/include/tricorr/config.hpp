#pragma once

// JSON documents read and written by the CLI, plus the CSV writers.

#include "tricorr/correlation.hpp"
#include "tricorr/experiments.hpp"
#include "tricorr/interferometer.hpp"
#include "tricorr/oracles.hpp"
#include "tricorr/shape_analysis.hpp"
#include "tricorr/sources_modes.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace tricorr {

using Json = nlohmann::json;

struct QuantumSourceSpec {
  QuantumSourceMoments moments;
  std::optional<PhotonNumberDistribution> distribution;
};

using SourceSpec = std::variant<ClassicalSource, QuantumSourceSpec>;

/// Everything a CLI config file may carry. Every section is optional; the
/// subcommands demand the ones they need.
struct ProblemConfig {
  std::optional<CircuitSpec> circuit;  // set when the interferometer is a circuit
  std::optional<TransferMatrix> matrix;
  std::optional<std::array<SourceSpec, 3>> sources;
  std::optional<OverlapSet> overlaps;
  std::optional<CampaignConfig> campaign;
  std::optional<std::uint64_t> seed;

  const TransferMatrix& transfer() const;
  ClassicalSources classical_sources() const;
  QuantumSources quantum_sources() const;
  std::array<PhotonNumberDistribution, 3> photon_distributions() const;
  SourceSet source_set(Model model) const;
  const OverlapSet& overlap_set() const;
  const CampaignConfig& campaign_config() const;
};

// Parsers throw ValidationError with a readable message on any malformed or
// out-of-range input.
CircuitElement element_from_json(const Json& j);
CircuitSpec circuit_from_json(const Json& j);
SourceSpec source_from_json(const Json& j);
OverlapSet overlaps_from_json(const Json& j);
CampaignConfig campaign_from_json(const Json& j);
ProblemConfig problem_from_json(const Json& j);
ProblemConfig load_problem(const std::filesystem::path& path);

Json to_json(const CircuitElement& e);
Json to_json(const CircuitSpec& spec);
Json to_json(const SourceSet& sources);
Json to_json(const ShapeCoefficients& c);
Json verdict_json(const RevivalClass& rc, const ShapeCoefficients& c);
Json to_json(const CampaignConfig& cfg);
Json to_json(const CampaignResult& r, const CampaignConfig& cfg);
Json to_json(const AppendixAReport& r);
Json mc_report_json(const MCEstimate& e, std::uint64_t seed, double closed_form);
Json fock_report_json(const FockEstimate& e, double closed_form);

Model model_from_string(const std::string& name);
std::string to_string(Model m);

/// "%.17g".
std::string format_double(double v);

/// Header "delta,g3", one row per point.
void write_sweep_csv(std::ostream& out, const SweepCurve& curve);
/// Header "mu,r_total,r_simple,r_double".
void write_mu_scan_csv(std::ostream& out, const std::vector<MuScanRow>& rows);

}  // namespace tricorr
