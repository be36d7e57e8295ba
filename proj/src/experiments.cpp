#include "fermag/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "fermag/charfn.hpp"
#include "fermag/convolution.hpp"
#include "fermag/gaussian.hpp"
#include "fermag/grassmann.hpp"
#include "fermag/states.hpp"

namespace fermag {

using nlohmann::json;

namespace {

constexpr double kRenormalizeLimit = 1e-6;
constexpr double kNormalizedWithin = 1e-9;

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> table{
      {"covariance_drift", 1e-8},
      {"gaussian_floor", 1e-7},
  };
  return table;
}

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ParseError(field + ": " + what);
}

void require_keys(const json& doc, const std::string& where, const std::set<std::string>& allowed) {
  if (!doc.is_object()) fail(where, "expected a JSON object");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (!allowed.count(key)) fail(where.empty() ? key : where + "." + key, "unknown key");
  }
}

int get_int(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_number_integer()) fail(key, "expected an integer");
  return v.get<int>();
}

double get_number(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  return v.get<double>();
}

std::uint64_t get_seed(const json& v, const std::string& field) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    fail(field, "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

ModeCount checked_modes(int m, const std::string& field) {
  if (m < 1) fail(field, "mode count must be positive");
  if (m > kMaxStateModes) {
    throw GuardRefusal(field + ": " + std::to_string(m) + " modes would need a " + std::to_string(2 * m) +
                       "-site doubled register; the limit is " + std::to_string(kMaxSites) + " sites");
  }
  return ModeCount(m);
}

bool is_random(StateKind kind) {
  return kind == StateKind::RandomEvenPure || kind == StateKind::RandomGaussianPure ||
         kind == StateKind::RandomGaussianMixed;
}

PureState cat_state(ModeCount m) {
  if (m.value() % 2) throw ParseError("preset cat: needs an even mode count");
  CVector v = CVector::Zero(m.dim());
  v[0] = v[m.dim() - 1] = 1.0 / std::sqrt(2.0);
  return PureState(std::move(v), m);
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// JSON cannot carry non-finite values; they become null.
json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

double grade4_cumulant_norm(const DensityMatrix& rho) {
  if (rho.modes().value() < 2) return 0.0;
  const CumulantTable c = cumulants_via_log(characteristic_function(moments(rho, 4)), 4);
  double sum = 0.0;
  for (Mask mask : c.masks_of_order(4)) sum += std::norm(c.at(mask));
  return std::sqrt(sum);
}

json base_provenance(const StateSpec& spec, const ExperimentConfig& config) {
  json p;
  p["library_version"] = kLibraryVersion;
  p["modes"] = spec.modes.value();
  p["state_kind"] = to_string(spec.kind);
  if (spec.preset) p["preset"] = *spec.preset;
  p["seed"] = spec.seed ? *spec.seed : config.seed;
  json tols;
  tols["structural"] = tol::kStructural;
  tols["grassmann_prune"] = kGrassmannPrune;
  for (const auto& [key, value] : default_tolerances()) tols[key] = config.tolerance(key);
  p["tolerances"] = tols;
  return p;
}

StateSpec with_config_seed(StateSpec spec, const ExperimentConfig& config) {
  if (is_random(spec.kind) && !spec.seed) spec.seed = config.seed;
  return spec;
}

}  // namespace

std::string to_string(StateKind kind) {
  switch (kind) {
    case StateKind::ExplicitAmplitudes: return "explicit-amplitudes";
    case StateKind::Preset: return "preset";
    case StateKind::RandomEvenPure: return "random-even-pure";
    case StateKind::RandomGaussianPure: return "random-gaussian-pure";
    case StateKind::RandomGaussianMixed: return "random-gaussian-mixed";
  }
  return "?";
}

StateKind state_kind_from_string(const std::string& name) {
  for (StateKind k : {StateKind::ExplicitAmplitudes, StateKind::Preset, StateKind::RandomEvenPure,
                      StateKind::RandomGaussianPure, StateKind::RandomGaussianMixed}) {
    if (to_string(k) == name) return k;
  }
  fail("kind", "unknown state kind '" + name + "'");
}

std::vector<std::string> preset_names() { return {"vacuum", "reference", "cat"}; }

StateSpec parse_state_spec(const json& doc) {
  require_keys(doc, "", {"modes", "kind", "amplitudes", "seed", "preset"});
  if (!doc.contains("modes")) fail("modes", "missing");
  if (!doc.contains("kind")) fail("kind", "missing");
  if (!doc.at("kind").is_string()) fail("kind", "expected a string");

  StateSpec spec;
  spec.modes = checked_modes(get_int(doc, "modes"), "modes");
  spec.kind = state_kind_from_string(doc.at("kind").get<std::string>());

  const bool wants_amplitudes = spec.kind == StateKind::ExplicitAmplitudes;
  const bool wants_preset = spec.kind == StateKind::Preset;
  const bool wants_seed = is_random(spec.kind);
  if (doc.contains("amplitudes") != wants_amplitudes) {
    fail("amplitudes", wants_amplitudes ? "missing" : "not allowed for kind " + to_string(spec.kind));
  }
  if (doc.contains("preset") != wants_preset) {
    fail("preset", wants_preset ? "missing" : "not allowed for kind " + to_string(spec.kind));
  }
  if (doc.contains("seed") != wants_seed) {
    fail("seed", wants_seed ? "missing" : "not allowed for kind " + to_string(spec.kind));
  }

  if (wants_seed) spec.seed = get_seed(doc.at("seed"), "seed");
  if (wants_preset) {
    if (!doc.at("preset").is_string()) fail("preset", "expected a string");
    const std::string name = doc.at("preset").get<std::string>();
    const auto names = preset_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) fail("preset", "unknown preset '" + name + "'");
    if (name == "reference" && spec.modes.value() != 3) fail("preset", "reference is a 3-mode state");
    if (name == "cat" && spec.modes.value() % 2) fail("preset", "cat needs an even mode count");
    spec.preset = name;
  }
  if (wants_amplitudes) {
    const json& list = doc.at("amplitudes");
    if (!list.is_array() || list.empty()) fail("amplitudes", "expected a non-empty array");
    std::set<std::string> seen;
    double norm2 = 0.0;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = "amplitudes[" + std::to_string(i) + "]";
      const json& entry = list[i];
      require_keys(entry, where, {"basis", "re", "im"});
      if (!entry.contains("basis") || !entry.at("basis").is_string()) fail(where + ".basis", "expected a bitstring");
      AmplitudeEntry a;
      a.basis = entry.at("basis").get<std::string>();
      if (static_cast<int>(a.basis.size()) != spec.modes.value()) {
        fail(where + ".basis", "length " + std::to_string(a.basis.size()) + " does not match modes");
      }
      if (a.basis.find_first_not_of("01") != std::string::npos) fail(where + ".basis", "only 0 and 1 allowed");
      if (!seen.insert(a.basis).second) fail(where + ".basis", "duplicate basis string " + a.basis);
      a.re = entry.contains("re") ? get_number(entry.at("re"), where + ".re") : 0.0;
      a.im = entry.contains("im") ? get_number(entry.at("im"), where + ".im") : 0.0;
      const auto ones = std::count(a.basis.begin(), a.basis.end(), '1');
      if ((ones % 2) && (a.re != 0.0 || a.im != 0.0)) {
        fail(where + ".basis", "odd-parity basis string " + a.basis + " carries amplitude");
      }
      norm2 += a.re * a.re + a.im * a.im;
      spec.amplitudes.push_back(a);
    }
    const double norm = std::sqrt(norm2);
    if (!(std::abs(norm - 1.0) < kRenormalizeLimit)) {
      fail("amplitudes", "norm " + format_double(norm) + " is too far from 1 to renormalize");
    }
    if (std::abs(norm - 1.0) > kNormalizedWithin) {
      spec.warnings.push_back("amplitudes renormalized (norm was " + format_double(norm) + ")");
    }
    for (auto& a : spec.amplitudes) {
      a.re /= norm;
      a.im /= norm;
    }
  }
  return spec;
}

StateSpec parse_state_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("state document: ") + e.what());
  }
  return parse_state_spec(doc);
}

StateSpec parse_state_spec(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state_spec(buf.str());
}

StateSpec preset_spec(const std::string& name, int modes, std::optional<std::uint64_t> seed) {
  json doc;
  doc["modes"] = modes;
  const auto names = preset_names();
  if (std::find(names.begin(), names.end(), name) != names.end()) {
    doc["kind"] = "preset";
    doc["preset"] = name;
  } else {
    doc["kind"] = name;
    if (!seed) fail("seed", "random state kinds need a seed");
    doc["seed"] = *seed;
  }
  return parse_state_spec(doc);
}

PureState build_pure_state(const StateSpec& spec) {
  const ModeCount m = spec.modes;
  switch (spec.kind) {
    case StateKind::ExplicitAmplitudes: {
      CVector v = CVector::Zero(m.dim());
      for (const auto& a : spec.amplitudes) {
        const auto index = std::stoul(a.basis, nullptr, 2);
        v[static_cast<Eigen::Index>(index)] = cplx(a.re, a.im);
      }
      return PureState(std::move(v), m);
    }
    case StateKind::Preset:
      if (spec.preset == "vacuum") return vacuum(m);
      if (spec.preset == "reference") return reference_magic_state();
      if (spec.preset == "cat") return cat_state(m);
      fail("preset", "unknown preset");
    case StateKind::RandomEvenPure:
      return random_even_pure(m, spec.seed.value());
    case StateKind::RandomGaussianPure:
      return random_gaussian_pure(m, spec.seed.value());
    case StateKind::RandomGaussianMixed:
      break;
  }
  throw ParseError("kind: " + to_string(spec.kind) + " does not describe a pure state");
}

DensityMatrix build_state(const StateSpec& spec) {
  if (spec.kind == StateKind::RandomGaussianMixed) return random_gaussian_mixed(spec.modes, spec.seed.value());
  return DensityMatrix::from_pure(build_pure_state(spec));
}

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::CltDecay: return "clt-decay";
    case ExperimentKind::BathDecay: return "bath-decay";
    case ExperimentKind::Measures: return "measures";
    case ExperimentKind::WickCheck: return "wick-check";
    case ExperimentKind::Monotonicity: return "monotonicity";
  }
  return "?";
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
  for (ExperimentKind k : {ExperimentKind::CltDecay, ExperimentKind::BathDecay, ExperimentKind::Measures,
                           ExperimentKind::WickCheck, ExperimentKind::Monotonicity}) {
    if (to_string(k) == name) return k;
  }
  fail("experiment", "unknown experiment '" + name + "'");
}

OutputFormat output_format_from_string(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  fail("format", "expected csv or json, got '" + name + "'");
}

double ExperimentConfig::tolerance(const std::string& key) const {
  if (auto it = tolerances.find(key); it != tolerances.end()) return it->second;
  return default_tolerances().at(key);
}

ExperimentConfig parse_experiment_config(const json& doc, std::optional<StateSpec>* state_out) {
  require_keys(doc, "",
               {"experiment", "seed", "n_max", "steps", "eta", "max_order", "tolerances", "output_path",
                "output_format", "state"});
  ExperimentConfig config;
  if (!doc.contains("experiment") || !doc.at("experiment").is_string()) fail("experiment", "missing");
  config.experiment = experiment_kind_from_string(doc.at("experiment").get<std::string>());
  if (!doc.contains("seed")) fail("seed", "missing (seeds are mandatory)");
  config.seed = get_seed(doc.at("seed"), "seed");
  if (doc.contains("n_max")) config.n_max = get_int(doc, "n_max");
  if (doc.contains("steps")) config.steps = get_int(doc, "steps");
  if (doc.contains("eta")) config.eta = get_number(doc.at("eta"), "eta");
  if (doc.contains("max_order")) config.max_order = get_int(doc, "max_order");
  if (doc.contains("tolerances")) {
    const json& t = doc.at("tolerances");
    if (!t.is_object()) fail("tolerances", "expected an object");
    for (const auto& [key, value] : t.items()) {
      if (!default_tolerances().count(key)) fail("tolerances." + key, "unknown key");
      const double x = get_number(value, "tolerances." + key);
      if (!(x > 0.0)) fail("tolerances." + key, "must be positive");
      config.tolerances[key] = x;
    }
  }
  if (doc.contains("output_path")) {
    if (!doc.at("output_path").is_string()) fail("output_path", "expected a string");
    config.output_path = doc.at("output_path").get<std::string>();
  }
  if (doc.contains("output_format")) {
    if (!doc.at("output_format").is_string()) fail("output_format", "expected a string");
    config.output_format = output_format_from_string(doc.at("output_format").get<std::string>());
  }
  if (doc.contains("state")) {
    StateSpec spec = parse_state_spec(doc.at("state"));
    if (state_out) *state_out = std::move(spec);
  }
  return config;
}

int clt_n_max_limit(ModeCount m) {
  // The doubled register grows as 4^m; the budget keeps a run to minutes.
  switch (m.value()) {
    case 5: return 16;
    case 6: return 4;
    default: return 64;
  }
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::domain_error("loglog_slope: need at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::domain_error("loglog_slope: non-positive value");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

ExperimentResult run_clt_decay(const StateSpec& raw, const ExperimentConfig& config) {
  const StateSpec spec = with_config_seed(raw, config);
  const int limit = clt_n_max_limit(spec.modes);
  if (config.n_max < 1) throw ParseError("n_max: must be at least 1");
  if (config.n_max > limit) {
    throw GuardRefusal("n_max " + std::to_string(config.n_max) + " exceeds the limit " + std::to_string(limit) +
                       " for " + std::to_string(spec.modes.value()) + " modes");
  }
  const DensityMatrix rho = build_state(spec);
  const DensityMatrix rho_g = gaussify(rho);
  const double s_g = von_neumann_entropy(rho_g);

  ExperimentResult result;
  result.experiment = to_string(ExperimentKind::CltDecay);
  result.columns = {"n", "trace_distance_to_gaussification", "grade4_cumulant_norm",
                    "relative_entropy_to_gaussification"};
  std::vector<double> fit_n, fit_d;
  bool fit_defined = true;
  const double floor = config.tolerance("gaussian_floor");
  const auto etas = ConvolutionSchedule::clt(config.n_max).etas();
  DensityMatrix current = rho;
  for (int n = 1; n <= config.n_max; ++n) {
    if (n > 1) current = convolve(current, rho, etas[static_cast<std::size_t>(n - 2)]);
    const double d = trace_distance(current, rho_g);
    result.rows.push_back({static_cast<double>(n), d, grade4_cumulant_norm(current),
                           s_g - von_neumann_entropy(current)});
    if (4 * n >= config.n_max) {
      fit_n.push_back(n);
      fit_d.push_back(d);
      if (!(d > floor)) fit_defined = false;
    }
  }
  if (fit_n.size() < 2) fit_defined = false;
  result.summary["slope_fit_n_min"] = fit_n.empty() ? 0 : static_cast<int>(fit_n.front());
  result.summary["slope_defined"] = fit_defined;
  result.summary["slope_log_distance_vs_log_n"] = fit_defined ? json(loglog_slope(fit_n, fit_d)) : json(nullptr);
  if (!fit_defined) result.summary["slope_note"] = "distances at or below the Gaussian floor; slope undefined";
  result.provenance = base_provenance(spec, config);
  result.provenance["n_max"] = config.n_max;
  return result;
}

ExperimentResult run_bath_decay(const StateSpec& raw, const ExperimentConfig& config) {
  const StateSpec spec = with_config_seed(raw, config);
  if (!(config.eta > 0.0 && config.eta < 1.0)) throw ParseError("eta: bath decay needs eta in (0, 1)");
  if (config.steps < 0 || config.steps > 20) throw ParseError("steps: must lie in [0, 20]");
  const DensityMatrix rho = build_state(spec);
  const DensityMatrix rho_g = gaussify(rho);
  const CMatrix sigma0 = covariance(rho).matrix();
  const double drift_limit = config.tolerance("covariance_drift");

  ExperimentResult result;
  result.experiment = to_string(ExperimentKind::BathDecay);
  result.columns = {"t", "grade4_cumulant_norm", "trace_distance_to_gaussification", "covariance_drift"};
  DensityMatrix current = rho;
  double initial = 0.0;
  double worst_ratio_error = 0.0;
  for (int t = 0; t <= config.steps; ++t) {
    if (t > 0) current = convolve(current, rho_g, config.eta);
    const double drift = max_abs(covariance(current).matrix() - sigma0);
    if (drift > drift_limit) {
      throw InvariantViolation("bath step " + std::to_string(t) + ": covariance drifted by " + format_double(drift));
    }
    const double g4 = grade4_cumulant_norm(current);
    if (t == 0) initial = g4;
    if (initial > config.tolerance("gaussian_floor")) {
      const double expected = initial * std::pow(config.eta, 2.0 * t);
      worst_ratio_error = std::max(worst_ratio_error, std::abs(g4 - expected) / expected);
    }
    result.rows.push_back({static_cast<double>(t), g4, trace_distance(current, rho_g), drift});
  }
  result.summary["eta"] = config.eta;
  result.summary["expected_grade4_factor_per_step"] = config.eta * config.eta;
  result.summary["max_relative_deviation_from_eta_pow_2t"] = worst_ratio_error;
  result.provenance = base_provenance(spec, config);
  result.provenance["steps"] = config.steps;
  return result;
}

json report_to_json(const MagicReport& report) {
  json j;
  j["entropy_of_gaussification"] = report.entropy_of_gaussification;
  j["matchgate_violation"] = report.matchgate_violation;
  j["matchgate_violation_covariance"] = report.matchgate_violation_covariance;
  json wick = json::object();
  for (const auto& [order, value] : report.wick_violation_by_order) wick[std::to_string(order)] = value;
  j["wick_violation_by_order"] = wick;
  j["swap_deficit"] = report.swap_deficit;
  json p;
  p["modes"] = report.provenance.modes;
  p["seed"] = report.provenance.seed ? json(*report.provenance.seed) : json(nullptr);
  p["structural_tolerance"] = report.provenance.structural_tolerance;
  p["prune_threshold"] = report.provenance.prune_threshold;
  j["provenance"] = p;
  return j;
}

ExperimentResult run_measures(const StateSpec& raw, const ExperimentConfig& config) {
  const StateSpec spec = with_config_seed(raw, config);
  const PureState psi = build_pure_state(spec);
  const MagicReport report = magic_report(psi, spec.seed);

  ExperimentResult result;
  result.experiment = to_string(ExperimentKind::Measures);
  result.columns = {"entropy_of_gaussification", "matchgate_violation", "matchgate_violation_covariance"};
  std::vector<double> row = {report.entropy_of_gaussification, report.matchgate_violation,
                             report.matchgate_violation_covariance};
  for (const auto& [order, value] : report.wick_violation_by_order) {
    result.columns.push_back("wick_violation_order_" + std::to_string(order));
    row.push_back(value);
  }
  result.columns.push_back("swap_deficit");
  row.push_back(report.swap_deficit);
  result.rows.push_back(row);
  result.summary["report"] = report_to_json(report);
  result.provenance = base_provenance(spec, config);
  return result;
}

ExperimentResult run_wick_check(const StateSpec& raw, const ExperimentConfig& config) {
  const StateSpec spec = with_config_seed(raw, config);
  const ModeCount m = spec.modes;
  if (m.value() < 2) throw ParseError("modes: wick-check needs at least 2 modes");
  const int order = config.max_order.value_or(m.value() <= 4 ? m.ladder_count() : 6);
  if (order < 4 || order % 2 || order > m.ladder_count()) {
    throw ParseError("max_order: must be even and within [4, " + std::to_string(m.ladder_count()) + "]");
  }
  const DensityMatrix rho = build_state(spec);
  const auto by_cumulants = wick_violation(rho, order);
  const auto by_pfaffians = wick_deviation(rho, order);

  ExperimentResult result;
  result.experiment = to_string(ExperimentKind::WickCheck);
  result.columns = {"order", "cumulant_norm_squared", "pfaffian_deviation_squared"};
  for (const auto& [k, value] : by_cumulants) {
    result.rows.push_back({static_cast<double>(k), value, by_pfaffians.at(k)});
  }
  result.summary["max_order"] = order;
  result.provenance = base_provenance(spec, config);
  return result;
}

ExperimentResult run_monotonicity(const StateSpec& raw, const ExperimentConfig& config) {
  const StateSpec spec = with_config_seed(raw, config);
  if (!(config.eta > 0.0 && config.eta < 1.0)) throw ParseError("eta: monotonicity needs eta in (0, 1)");
  const int limit = clt_n_max_limit(spec.modes);
  if (config.n_max < 1) throw ParseError("n_max: must be at least 1");
  if (config.n_max > limit) {
    throw GuardRefusal("n_max " + std::to_string(config.n_max) + " exceeds the limit " + std::to_string(limit));
  }
  const DensityMatrix rho = build_state(spec);
  const DensityMatrix rho_g = gaussify(rho);
  const double s_g = von_neumann_entropy(rho_g);

  ExperimentResult result;
  result.experiment = to_string(ExperimentKind::Monotonicity);
  result.columns = {"n", "relative_entropy_self_convolution", "relative_entropy_bath", "swap_deficit"};
  const auto sequence = self_convolve_sequence(rho, config.n_max);
  DensityMatrix bath = rho;
  int bath_steps = 0;
  std::vector<double> self_re, bath_re;
  for (int n = 1; n <= config.n_max; n *= 2) {
    const DensityMatrix& current = sequence[static_cast<std::size_t>(n - 1)];
    for (; bath_steps < n - 1; ++bath_steps) bath = convolve(bath, rho_g, config.eta);
    self_re.push_back(s_g - von_neumann_entropy(current));
    bath_re.push_back(s_g - von_neumann_entropy(bath));
    result.rows.push_back({static_cast<double>(n), self_re.back(), bath_re.back(), swap_magic_measure(current)});
  }
  constexpr double slack = 1e-8;
  auto nonincreasing = [](const std::vector<double>& v, double s) {
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (v[i] > v[i - 1] + s) return false;
    }
    return true;
  };
  const double s0 = self_re.front();
  const double self2 = config.n_max >= 2 ? self_re[1] : s0;
  const double bath1 = s_g - von_neumann_entropy(convolve(rho, rho_g, config.eta));
  result.summary["relative_entropy_initial"] = s0;
  result.summary["relative_entropy_after_self_convolution"] = self2;
  result.summary["relative_entropy_after_one_bath_step"] = bath1;
  result.summary["self_convolution_inequality_holds"] = self2 <= s0 + slack;
  result.summary["bath_inequality_holds"] = bath1 <= s0 + slack;
  result.summary["self_convolution_sequence_nonincreasing"] = nonincreasing(self_re, slack);
  result.summary["bath_sequence_nonincreasing"] = nonincreasing(bath_re, slack);
  result.summary["eta"] = config.eta;
  result.provenance = base_provenance(spec, config);
  result.provenance["n_max"] = config.n_max;
  return result;
}

ExperimentResult run_experiment(const StateSpec& spec, const ExperimentConfig& config) {
  switch (config.experiment) {
    case ExperimentKind::CltDecay: return run_clt_decay(spec, config);
    case ExperimentKind::BathDecay: return run_bath_decay(spec, config);
    case ExperimentKind::Measures: return run_measures(spec, config);
    case ExperimentKind::WickCheck: return run_wick_check(spec, config);
    case ExperimentKind::Monotonicity: return run_monotonicity(spec, config);
  }
  throw ParseError("experiment: unsupported");
}

void write_csv(const ExperimentResult& result, std::ostream& out) {
  out << "# experiment: " << result.experiment << "\n";
  for (const auto& [key, value] : result.summary.items()) {
    if (key == "report") continue;  // the row already carries it
    out << "# " << key << ": " << value.dump() << "\n";
  }
  out << "# provenance: " << result.provenance.dump() << "\n";
  for (std::size_t i = 0; i < result.columns.size(); ++i) out << (i ? "," : "") << result.columns[i];
  out << "\n";
  for (const auto& row : result.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << "\n";
  }
}

void write_json(const ExperimentResult& result, std::ostream& out) {
  json doc;
  doc["experiment"] = result.experiment;
  doc["columns"] = result.columns;
  json rows = json::array();
  for (const auto& row : result.rows) {
    json r = json::array();
    for (double x : row) r.push_back(finite_or_null(x));
    rows.push_back(r);
  }
  doc["rows"] = rows;
  doc["summary"] = result.summary;
  doc["provenance"] = result.provenance;
  out << doc.dump(2) << "\n";
}

}  // namespace fermag
