// fermag: command-line front end for the convolution and magic experiments.
//
// Exit codes: 0 success, 2 parse/config error, 3 runtime-guard refusal,
// 4 numerical-invariant violation (1 for anything unexpected).

#include <fstream>
#include <sstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fermag/errors.hpp"
#include "fermag/experiments.hpp"

namespace {

struct Options {
  std::string state_file;
  std::string preset;
  std::string config_file;
  std::optional<int> modes;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<std::string> format;
  std::optional<int> max_order;
  std::optional<int> n_max;
  std::optional<double> eta;
  std::optional<int> steps;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--state", o.state_file, "State document (JSON)");
  cmd->add_option("--preset", o.preset,
                  "vacuum, reference, cat, random-even-pure, random-gaussian-pure or random-gaussian-mixed");
  cmd->add_option("--modes", o.modes, "Mode count for --preset")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "Seed (mandatory)");
  cmd->add_option("--out", o.out, "Output file (default: stdout)");
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--max-order", o.max_order, "Largest Wick order");
  cmd->add_option("--n-max", o.n_max, "Largest self-convolution order");
  cmd->add_option("--eta", o.eta, "Beam-splitter transmissivity");
  cmd->add_option("--steps", o.steps, "Bath steps");
  cmd->add_option("--config", o.config_file, "Experiment configuration (JSON); flags override it");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw fermag::ParseError(path + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run(fermag::ExperimentKind kind, const Options& o) {
  using namespace fermag;
  ExperimentConfig config;
  std::optional<StateSpec> spec;
  if (!o.config_file.empty()) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(read_file(o.config_file));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(o.config_file + ": " + e.what());
    }
    config = parse_experiment_config(doc, &spec);
    if (config.experiment != kind) throw ParseError("experiment: config names " + to_string(config.experiment));
  } else {
    if (!o.seed) throw ParseError("--seed: missing (seeds are mandatory)");
    config.experiment = kind;
  }
  if (o.seed) config.seed = *o.seed;
  if (o.n_max) config.n_max = *o.n_max;
  if (o.steps) config.steps = *o.steps;
  if (o.eta) config.eta = *o.eta;
  if (o.max_order) config.max_order = *o.max_order;
  if (!o.out.empty()) config.output_path = o.out;
  if (o.format) config.output_format = output_format_from_string(*o.format);

  if (!o.state_file.empty() && !o.preset.empty()) throw ParseError("--state and --preset are exclusive");
  if (!o.state_file.empty()) {
    spec = parse_state_spec(read_file(o.state_file));
  } else if (!o.preset.empty()) {
    if (!o.modes && o.preset != "reference") throw ParseError("--modes: required with --preset");
    spec = preset_spec(o.preset, o.modes.value_or(3), config.seed);
  }
  if (!spec) throw ParseError("no state given (use --state, --preset or a config with a state)");
  for (const auto& w : spec->warnings) std::cerr << "warning: " << w << "\n";

  const ExperimentResult result = run_experiment(*spec, config);
  if (config.output_path) {
    std::ofstream out(*config.output_path, std::ios::binary);
    if (!out) throw ParseError(*config.output_path + ": cannot write");
    config.output_format == OutputFormat::Json ? write_json(result, out) : write_csv(result, out);
  } else {
    config.output_format == OutputFormat::Json ? write_json(result, std::cout) : write_csv(result, std::cout);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fermionic convolution, Gaussification and non-Gaussian magic measures"};
  app.require_subcommand(1);
  Options options;
  const std::pair<const char*, fermag::ExperimentKind> commands[] = {
      {"measures", fermag::ExperimentKind::Measures},
      {"clt-decay", fermag::ExperimentKind::CltDecay},
      {"bath-decay", fermag::ExperimentKind::BathDecay},
      {"wick-check", fermag::ExperimentKind::WickCheck},
      {"monotonicity", fermag::ExperimentKind::Monotonicity},
  };
  std::optional<fermag::ExperimentKind> chosen;
  for (const auto& [name, kind] : commands) {
    auto* cmd = app.add_subcommand(name);
    add_common(cmd, options);
    cmd->callback([&chosen, kind = kind] { chosen = kind; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return run(*chosen, options);
  } catch (const fermag::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fermag::GuardRefusal& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 3;
  } catch (const fermag::InvariantViolation& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return 4;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
