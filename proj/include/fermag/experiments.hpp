#pragma once

// State documents, experiment configuration and the experiment drivers behind
// the command-line tool. Drivers return an ExperimentResult that serializes to
// CSV (one row per step) or JSON.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fermag/fock.hpp"
#include "fermag/magic.hpp"

namespace fermag {

inline constexpr const char* kLibraryVersion = "0.1.0";

enum class StateKind { ExplicitAmplitudes, Preset, RandomEvenPure, RandomGaussianPure, RandomGaussianMixed };

struct AmplitudeEntry {
  std::string basis;  // most significant character is mode 1
  double re = 0.0;
  double im = 0.0;
};

struct StateSpec {
  ModeCount modes{1};
  StateKind kind = StateKind::Preset;
  std::vector<AmplitudeEntry> amplitudes;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> preset;
  /// Non-fatal remarks produced while parsing (e.g. renormalization).
  std::vector<std::string> warnings;
};

std::string to_string(StateKind kind);
StateKind state_kind_from_string(const std::string& name);

/// Names accepted as "preset": vacuum, reference, cat.
std::vector<std::string> preset_names();

StateSpec parse_state_spec(std::istream& in);
StateSpec parse_state_spec(const std::string& text);
StateSpec parse_state_spec(const nlohmann::json& doc);

/// Spec for a named preset or random kind ("random-even-pure", ...).
StateSpec preset_spec(const std::string& name, int modes, std::optional<std::uint64_t> seed);

/// The state as a density matrix (every kind).
DensityMatrix build_state(const StateSpec& spec);
/// The state vector; ParseError for mixed kinds.
PureState build_pure_state(const StateSpec& spec);

enum class ExperimentKind { CltDecay, BathDecay, Measures, WickCheck, Monotonicity };
enum class OutputFormat { Csv, Json };

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& name);
OutputFormat output_format_from_string(const std::string& name);

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::Measures;
  std::uint64_t seed = 0;
  int n_max = 64;
  int steps = 10;
  double eta = 0.5;
  std::optional<int> max_order;
  /// Recognized keys: covariance_drift, gaussian_floor.
  std::map<std::string, double> tolerances;
  std::optional<std::string> output_path;
  OutputFormat output_format = OutputFormat::Csv;

  double tolerance(const std::string& key) const;
};

/// Parses a configuration document; unknown keys and a missing seed are
/// parse errors. An embedded "state" object is returned through state_out.
ExperimentConfig parse_experiment_config(const nlohmann::json& doc, std::optional<StateSpec>* state_out = nullptr);

/// Largest n_max the CLT driver accepts for m modes.
int clt_n_max_limit(ModeCount m);

struct ExperimentResult {
  std::string experiment;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  nlohmann::json summary = nlohmann::json::object();
  nlohmann::json provenance = nlohmann::json::object();
};

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

ExperimentResult run_clt_decay(const StateSpec& spec, const ExperimentConfig& config);
ExperimentResult run_bath_decay(const StateSpec& spec, const ExperimentConfig& config);
ExperimentResult run_measures(const StateSpec& spec, const ExperimentConfig& config);
ExperimentResult run_wick_check(const StateSpec& spec, const ExperimentConfig& config);
ExperimentResult run_monotonicity(const StateSpec& spec, const ExperimentConfig& config);
ExperimentResult run_experiment(const StateSpec& spec, const ExperimentConfig& config);

nlohmann::json report_to_json(const MagicReport& report);

/// Header row, then one row per entry with 17 significant digits. Summary
/// entries precede the header as "# key: value" lines.
void write_csv(const ExperimentResult& result, std::ostream& out);
void write_json(const ExperimentResult& result, std::ostream& out);

}  // namespace fermag
