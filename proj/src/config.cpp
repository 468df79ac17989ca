#include "tricorr/config.hpp"

#include "tricorr/errors.hpp"

#include <cstdio>
#include <fstream>

namespace tricorr {

namespace {

template <class T>
T get_required(const Json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(std::string(where) + ": missing field '" + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ValidationError(std::string(where) + ": field '" + key + "' has the wrong type");
  }
}

template <class T>
T get_or(const Json& j, const char* key, T fallback, const char* where) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return get_required<T>(j, key, where);
}

const Json& single_key(const Json& j, const char* where, std::string& key) {
  if (!j.is_object() || j.size() != 1) {
    throw ValidationError(std::string(where) + ": expected an object with exactly one key");
  }
  key = j.begin().key();
  return j.begin().value();
}

Json source_json(const ClassicalSourceMoments& m) {
  return {{"classical", {{"x", m.mean}, {"v", m.variance}, {"m3c", m.third_central}}}};
}

Json source_json(const QuantumSourceMoments& q) {
  return {{"quantum",
           {{"mean_n", q.mean_n}, {"second_n", q.second_n}, {"third_n", q.third_n}, {"energy", q.energy}}}};
}

}  // namespace

std::string to_string(Model m) { return m == Model::Quantum ? "quantum" : "classical"; }

Model model_from_string(const std::string& name) {
  if (name == "classical") return Model::Classical;
  if (name == "quantum") return Model::Quantum;
  throw ValidationError("model must be 'classical' or 'quantum', got '" + name + "'");
}

CircuitElement element_from_json(const Json& j) {
  std::string kind;
  const Json& body = single_key(j, "circuit element", kind);
  if (kind == "bs") {
    const auto ports = get_required<std::vector<int>>(body, "ports", "bs");
    if (ports.size() != 2) throw ValidationError("bs: 'ports' must have two entries");
    BeamSplitter bs{ports[0], ports[1], get_required<double>(body, "theta", "bs"), get_or(body, "eta", 1.0, "bs")};
    validate_element(bs);
    return bs;
  }
  if (kind == "ps") {
    PhaseShifter ps{get_required<int>(body, "port", "ps"), get_required<double>(body, "phi", "ps")};
    validate_element(ps);
    return ps;
  }
  throw ValidationError("unknown circuit element '" + kind + "' (expected 'bs' or 'ps')");
}

CircuitSpec circuit_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("elements") || !j.at("elements").is_array()) {
    throw ValidationError("circuit: expected {\"elements\": [...]}");
  }
  CircuitSpec spec;
  for (const auto& e : j.at("elements")) spec.elements.push_back(element_from_json(e));
  return spec;
}

Json to_json(const CircuitElement& e) {
  if (const auto* bs = std::get_if<BeamSplitter>(&e)) {
    return {{"bs", {{"ports", {bs->port_a, bs->port_b}}, {"theta", bs->theta}, {"eta", bs->eta}}}};
  }
  const auto& ps = std::get<PhaseShifter>(e);
  return {{"ps", {{"port", ps.port}, {"phi", ps.phi}}}};
}

Json to_json(const CircuitSpec& spec) {
  Json elements = Json::array();
  for (const auto& e : spec.elements) elements.push_back(to_json(e));
  return {{"elements", elements}};
}

SourceSpec source_from_json(const Json& j) {
  std::string kind;
  const Json& body = single_key(j, "source", kind);
  if (kind == "classical") {
    const double x = get_required<double>(body, "x", "classical source");
    const double v = get_or(body, "v", 0.0, "classical source");
    const std::string dist = get_or<std::string>(body, "dist", "delta", "classical source");
    if (dist == "delta") {
      ClassicalSource s;
      s.moments = {x, v, get_or(body, "m3c", 0.0, "classical source")};
      s.distribution = IntensityDistribution::Delta;
      validate(s);
      return s;
    }
    if (dist == "gamma") {
      ClassicalSource s = ClassicalSource::gamma(x, v);
      if (body.contains("m3c")) {
        s.moments.third_central = get_required<double>(body, "m3c", "classical source");
        validate(s);
      }
      return s;
    }
    throw ValidationError("classical source: dist must be 'delta' or 'gamma', got '" + dist + "'");
  }
  if (kind == "quantum") {
    QuantumSourceSpec spec;
    const double energy = get_or(body, "energy", 1.0, "quantum source");
    if (body.contains("distribution")) {
      PhotonNumberDistribution d{get_required<std::vector<double>>(body, "distribution", "quantum source"), energy};
      validate(d);
      spec.moments = d.moments();
      spec.distribution = std::move(d);
    } else if (body.contains("mu")) {
      spec.moments = QuantumSourceMoments::from_mu(get_required<double>(body, "mu", "quantum source"), energy);
    } else {
      spec.moments.mean_n = get_required<double>(body, "mean_n", "quantum source");
      spec.moments.second_n = get_required<double>(body, "second_n", "quantum source");
      spec.moments.third_n = get_or(body, "third_n", 0.0, "quantum source");
      spec.moments.energy = energy;
    }
    validate(spec.moments);
    return spec;
  }
  throw ValidationError("unknown source kind '" + kind + "' (expected 'classical' or 'quantum')");
}

OverlapSet overlaps_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("overlaps: expected an object");
  OverlapSet o;
  if (j.contains("delay")) {
    const Json& d = j.at("delay");
    o = overlaps_from_delay({get_required<double>(d, "sigma", "delay"), get_required<double>(d, "tau", "delay")});
  } else if (j.contains("delta")) {
    o = overlaps_from_delta(get_required<double>(j, "delta", "overlaps"));
  } else {
    o = {get_required<double>(j, "r12", "overlaps"), get_required<double>(j, "r23", "overlaps"),
         get_required<double>(j, "r31", "overlaps"), get_or(j, "psi", 0.0, "overlaps")};
  }
  validate(o);
  return o;
}

CampaignConfig campaign_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("campaign: expected an object");
  CampaignConfig cfg;
  cfg.model = model_from_string(get_required<std::string>(j, "kind", "campaign"));
  cfg.epsilon = get_or(j, "epsilon", cfg.epsilon, "campaign");
  cfg.eta = get_or(j, "eta", cfg.eta, "campaign");
  const auto trials = get_or<std::int64_t>(j, "n_trials", static_cast<std::int64_t>(cfg.n_trials), "campaign");
  if (trials < 1) throw ValidationError("campaign: n_trials must be >= 1");
  cfg.n_trials = static_cast<std::size_t>(trials);
  cfg.master_seed = get_or<std::uint64_t>(j, "master_seed", cfg.master_seed, "campaign");
  cfg.threads = get_or<unsigned>(j, "threads", cfg.threads, "campaign");
  cfg.mu = get_or(j, "mu", cfg.mu, "campaign");
  cfg.x_range = get_or(j, "x_range", cfg.x_range, "campaign");
  cfg.v_range = get_or(j, "v_range", cfg.v_range, "campaign");
  if (j.contains("fixed_intensities")) {
    cfg.fixed_intensities = get_required<std::array<double, 3>>(j, "fixed_intensities", "campaign");
  }
  cfg.shape_check_points = get_or(j, "shape_check_points", cfg.shape_check_points, "campaign");
  cfg.max_exemplars = get_or<std::size_t>(j, "max_exemplars", cfg.max_exemplars, "campaign");
  validate(cfg);
  return cfg;
}

Json to_json(const CampaignConfig& cfg) {
  // Thread count is deliberately left out: it never changes the result.
  Json j = {{"kind", to_string(cfg.model)},
            {"epsilon", cfg.epsilon},
            {"eta", cfg.eta},
            {"n_trials", cfg.n_trials},
            {"master_seed", cfg.master_seed},
            {"shape_check_points", cfg.shape_check_points},
            {"max_exemplars", cfg.max_exemplars}};
  if (cfg.model == Model::Quantum) {
    j["mu"] = cfg.mu;
  } else {
    j["x_range"] = cfg.x_range;
    j["v_range"] = cfg.v_range;
    if (cfg.fixed_intensities) j["fixed_intensities"] = *cfg.fixed_intensities;
  }
  return j;
}

ProblemConfig problem_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("config: expected a JSON object");
  ProblemConfig cfg;
  if (j.contains("interferometer")) {
    const Json& ij = j.at("interferometer");
    if (ij.is_string()) {
      if (ij.get<std::string>() != "bell") throw ValidationError("interferometer: unknown preset '" + ij.get<std::string>() + "'");
      cfg.matrix = bell_matrix();
    } else if (ij.is_object() && ij.contains("elements")) {
      cfg.circuit = circuit_from_json(ij);
      cfg.matrix = compose_circuit(*cfg.circuit);
    } else if (ij.is_object() && ij.contains("matrix")) {
      // [[[re, im], ...], ...] row-major, rows = outputs.
      const Json& rows = ij.at("matrix");
      if (!rows.is_array() || rows.size() != 3) throw ValidationError("interferometer.matrix: expected 3 rows");
      Eigen::Matrix3cd m;
      for (int r = 0; r < 3; ++r) {
        if (!rows[r].is_array() || rows[r].size() != 3) throw ValidationError("interferometer.matrix: expected 3 columns");
        for (int c = 0; c < 3; ++c) {
          const Json& z = rows[r][c];
          if (z.is_number()) {
            m(r, c) = z.get<double>();
          } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
            m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
          } else {
            throw ValidationError("interferometer.matrix: entries must be numbers or [re, im]");
          }
        }
      }
      cfg.matrix = TransferMatrix(m);
    } else {
      throw ValidationError("interferometer: expected \"bell\", {\"elements\": [...]} or {\"matrix\": [...]}");
    }
  }
  if (j.contains("sources")) {
    const Json& sj = j.at("sources");
    if (!sj.is_array() || sj.size() != 3) throw ValidationError("sources: expected an array of three sources");
    std::array<SourceSpec, 3> s{source_from_json(sj[0]), source_from_json(sj[1]), source_from_json(sj[2])};
    cfg.sources = std::move(s);
  }
  if (j.contains("overlaps")) cfg.overlaps = overlaps_from_json(j.at("overlaps"));
  if (j.contains("campaign")) cfg.campaign = campaign_from_json(j.at("campaign"));
  if (j.contains("seed")) cfg.seed = get_required<std::uint64_t>(j, "seed", "config");
  return cfg;
}

ProblemConfig load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path.string() + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return problem_from_json(j);
}

const TransferMatrix& ProblemConfig::transfer() const {
  if (!matrix) throw ValidationError("config: missing 'interferometer'");
  return *matrix;
}

ClassicalSources ProblemConfig::classical_sources() const {
  if (!sources) throw ValidationError("config: missing 'sources'");
  ClassicalSources out;
  for (int a = 0; a < 3; ++a) {
    const auto* c = std::get_if<ClassicalSource>(&(*sources)[a]);
    if (!c) throw ValidationError("config: the classical model needs three classical sources");
    out[a] = *c;
  }
  return out;
}

QuantumSources ProblemConfig::quantum_sources() const {
  if (!sources) throw ValidationError("config: missing 'sources'");
  QuantumSources out;
  for (int a = 0; a < 3; ++a) {
    const auto* q = std::get_if<QuantumSourceSpec>(&(*sources)[a]);
    if (!q) throw ValidationError("config: the quantum model needs three quantum sources");
    out[a] = q->moments;
  }
  return out;
}

std::array<PhotonNumberDistribution, 3> ProblemConfig::photon_distributions() const {
  if (!sources) throw ValidationError("config: missing 'sources'");
  std::array<PhotonNumberDistribution, 3> out;
  for (int a = 0; a < 3; ++a) {
    const auto* q = std::get_if<QuantumSourceSpec>(&(*sources)[a]);
    if (!q || !q->distribution) {
      throw ValidationError("config: the Fock oracle needs quantum sources given as photon-number distributions");
    }
    out[a] = *q->distribution;
  }
  return out;
}

SourceSet ProblemConfig::source_set(Model model) const {
  if (model == Model::Quantum) return quantum_sources();
  return as_source_set(classical_sources());
}

const OverlapSet& ProblemConfig::overlap_set() const {
  if (!overlaps) throw ValidationError("config: missing 'overlaps'");
  return *overlaps;
}

const CampaignConfig& ProblemConfig::campaign_config() const {
  if (!campaign) throw ValidationError("config: missing 'campaign'");
  return *campaign;
}

Json to_json(const SourceSet& sources) {
  Json arr = Json::array();
  std::visit([&](const auto& s) {
    for (const auto& m : s) arr.push_back(source_json(m));
  }, sources);
  return arr;
}

Json to_json(const ShapeCoefficients& c) { return {{"S", c.S}, {"A", c.A}, {"B", c.B}, {"C", c.C}}; }

Json verdict_json(const RevivalClass& rc, const ShapeCoefficients& c) {
  Json j = {{"verdict", std::string(to_string(rc.verdict))},
            {"roots_gt1", rc.roots_gt1},
            {"y_min", nullptr},
            {"S", c.S},
            {"A", c.A},
            {"B", c.B},
            {"C", c.C}};
  if (rc.y_min) j["y_min"] = *rc.y_min;
  return j;
}

Json to_json(const CampaignResult& r, const CampaignConfig& cfg) {
  Json counts = Json::object();
  for (Verdict v : {Verdict::NoRevival, Verdict::SimpleRevival, Verdict::DipInRevival, Verdict::Degenerate}) {
    counts[std::string(to_string(v))] = r.count(v);
  }
  Json exemplars = Json::array();
  for (const auto& e : r.exemplars) {
    exemplars.push_back({{"trial", e.trial},
                         {"verdict", std::string(to_string(e.verdict))},
                         {"circuit", to_json(e.circuit)},
                         {"sources", to_json(e.sources)},
                         {"coefficients", to_json(e.coefficients)}});
  }
  Json j = {{"config", to_json(cfg)},
            {"n_trials", r.n_trials},
            {"counts", counts},
            {"dark_port_trials", r.dark_port_trials},
            {"revival_fraction", r.revival_fraction},
            {"exemplars", exemplars}};
  if (cfg.shape_check_points > 0) j["shape_check_failures"] = r.shape_check_failures;
  if (!r.third_moment_rule.empty()) j["metadata"] = {{"third_moment_rule", r.third_moment_rule}};
  return j;
}

Json to_json(const AppendixAReport& r) {
  return {{"resolution", r.resolution},
          {"grid_minimum", r.grid_minimum},
          {"grid_argmin", r.grid_argmin},
          {"value_at_t0", r.value_at_t0},
          {"value_at_t1", r.value_at_t1},
          {"edge_minimum_t1_zero", r.edge_minimum_t1_zero},
          {"edge_minimum_t2_zero", r.edge_minimum_t2_zero},
          {"edge_minimum_t3_zero", r.edge_minimum_t3_zero},
          {"grid_ok", r.grid_ok},
          {"stationary_ok", r.stationary_ok},
          {"edges_ok", r.edges_ok},
          {"passed", r.passed()}};
}

Json mc_report_json(const MCEstimate& e, std::uint64_t seed, double closed_form) {
  return {{"model", "classical"},
          {"estimate", e.mean},
          {"std_error", e.std_error},
          {"n_samples", e.n_samples},
          {"seed", seed},
          {"closed_form", closed_form}};
}

Json fock_report_json(const FockEstimate& e, double closed_form) {
  return {{"model", "quantum"},
          {"estimate", e.g3},
          {"abs_tol", 1e-9},
          {"basis_dim", e.basis_dim},
          {"n_max", e.n_max},
          {"seed", nullptr},
          {"closed_form", closed_form}};
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_sweep_csv(std::ostream& out, const SweepCurve& curve) {
  out << "delta,g3\n";
  for (const auto& p : curve) out << format_double(p.delta) << ',' << format_double(p.g3) << '\n';
}

void write_mu_scan_csv(std::ostream& out, const std::vector<MuScanRow>& rows) {
  out << "mu,r_total,r_simple,r_double\n";
  for (const auto& row : rows) {
    out << format_double(row.mu) << ',' << format_double(row.r_total()) << ',' << format_double(row.r_simple())
        << ',' << format_double(row.r_double()) << '\n';
  }
}

}  // namespace tricorr
