#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fermag/errors.hpp"
#include "fermag/experiments.hpp"
#include "fermag/gaussian.hpp"
#include "fermag/states.hpp"

using namespace fermag;
using nlohmann::json;

namespace {

const char* kReferenceDoc = R"({
  "modes": 3, "kind": "explicit-amplitudes",
  "amplitudes": [
    {"basis": "000", "re": 0.5, "im": 0.0},
    {"basis": "011", "re": 0.5, "im": 0.0},
    {"basis": "101", "re": 0.5, "im": 0.0},
    {"basis": "110", "re": 0.5, "im": 0.0}
  ]
})";

ExperimentConfig config_for(const std::string& experiment) {
  return parse_experiment_config(json{{"experiment", experiment}, {"seed", 7}});
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "fermag_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

int run_cli(const std::string& args) {
  const std::string command = std::string(FERMAG_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("state documents") {
  const StateSpec spec = parse_state_spec(std::string(kReferenceDoc));
  CHECK(spec.kind == StateKind::ExplicitAmplitudes);
  CHECK(spec.modes.value() == 3);
  CHECK(spec.warnings.empty());
  const PureState psi = build_pure_state(spec);
  CHECK(std::abs(psi.amplitudes().dot(reference_magic_state().amplitudes())) == doctest::Approx(1.0));

  const StateSpec preset = parse_state_spec(json{{"modes", 3}, {"kind", "preset"}, {"preset", "reference"}});
  CHECK(build_pure_state(preset).amplitudes().isApprox(psi.amplitudes()));

  const StateSpec rnd = parse_state_spec(json{{"modes", 2}, {"kind", "random-gaussian-mixed"}, {"seed", 3}});
  CHECK(build_state(rnd).modes().value() == 2);
  CHECK_THROWS_AS(build_pure_state(rnd), ParseError);
}

TEST_CASE("state document errors") {
  auto bad = [](const json& doc) { CHECK_THROWS_AS(parse_state_spec(doc), ParseError); };
  bad(json{{"modes", 1}, {"kind", "explicit-amplitudes"}, {"amplitudes", {{{"basis", "1"}, {"re", 1.0}}}}});
  bad(json{{"modes", 2}, {"kind", "explicit-amplitudes"}, {"amplitudes", {{{"basis", "0"}, {"re", 1.0}}}}});
  bad(json{{"modes", 2}, {"kind", "explicit-amplitudes"}, {"amplitudes", {{{"basis", "0x"}, {"re", 1.0}}}}});
  bad(json{{"modes", 2},
           {"kind", "explicit-amplitudes"},
           {"amplitudes", {{{"basis", "00"}, {"re", 0.6}}, {{"basis", "00"}, {"re", 0.8}}}}});
  bad(json{{"modes", 2}, {"kind", "explicit-amplitudes"}, {"amplitudes", {{{"basis", "00"}, {"re", 0.5}}}}});
  bad(json{{"modes", 2}, {"kind", "random-even-pure"}});
  bad(json{{"modes", 2}, {"kind", "preset"}, {"preset", "reference"}});
  bad(json{{"modes", 3}, {"kind", "preset"}, {"preset", "cat"}});
  bad(json{{"modes", 2}, {"kind", "preset"}, {"preset", "vacuum"}, {"colour", "red"}});
  bad(json{{"modes", 2}, {"kind", "nonsense"}});
  CHECK_THROWS_AS(parse_state_spec(std::string("{not json")), ParseError);
  CHECK_THROWS_AS(parse_state_spec(json{{"modes", 7}, {"kind", "preset"}, {"preset", "vacuum"}}), GuardRefusal);
}

TEST_CASE("slightly unnormalized amplitudes are renormalized with a warning") {
  const json doc{{"modes", 1}, {"kind", "explicit-amplitudes"}, {"amplitudes", {{{"basis", "0"}, {"re", 1.0 + 1e-7}}}}};
  const StateSpec spec = parse_state_spec(doc);
  CHECK(spec.warnings.size() == 1);
  CHECK(build_pure_state(spec).amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("experiment configs") {
  std::optional<StateSpec> state;
  const ExperimentConfig c = parse_experiment_config(
      json{{"experiment", "bath-decay"},
           {"seed", 11},
           {"eta", 0.25},
           {"steps", 3},
           {"tolerances", {{"covariance_drift", 1e-6}}},
           {"output_format", "json"},
           {"state", {{"modes", 2}, {"kind", "preset"}, {"preset", "cat"}}}},
      &state);
  CHECK(c.experiment == ExperimentKind::BathDecay);
  CHECK(c.seed == 11);
  CHECK(c.eta == 0.25);
  CHECK(c.tolerance("covariance_drift") == 1e-6);
  CHECK(c.tolerance("gaussian_floor") == 1e-7);
  CHECK(c.output_format == OutputFormat::Json);
  REQUIRE(state.has_value());
  CHECK(state->preset == std::optional<std::string>("cat"));

  CHECK_THROWS_AS(parse_experiment_config(json{{"experiment", "measures"}}), ParseError);
  CHECK_THROWS_AS(parse_experiment_config(json{{"experiment", "measures"}, {"seed", 1}, {"alpha", 2}}), ParseError);
  CHECK_THROWS_AS(parse_experiment_config(json{{"experiment", "dance"}, {"seed", 1}}), ParseError);
  CHECK_THROWS_AS(parse_experiment_config(json{{"experiment", "measures"}, {"seed", -1}}), ParseError);
}

TEST_CASE("loglog slope") {
  CHECK(loglog_slope({1, 2, 4, 8}, {1, 0.5, 0.25, 0.125}) == doctest::Approx(-1.0));
  CHECK(loglog_slope({1, 10}, {3, 300}) == doctest::Approx(2.0));
}

TEST_CASE("clt-decay experiment") {
  ExperimentConfig c = config_for("clt-decay");
  c.n_max = 16;
  const ExperimentResult cat = run_clt_decay(preset_spec("cat", 4, std::nullopt), c);
  CHECK(cat.columns.front() == "n");
  REQUIRE(cat.rows.size() == 16);
  for (std::size_t i = 1; i < cat.rows.size(); ++i) CHECK(cat.rows[i][1] <= cat.rows[i - 1][1] + 1e-8);
  CHECK(cat.summary.at("slope_log_distance_vs_log_n").get<double>() < -0.5);

  const ExperimentResult gauss = run_clt_decay(preset_spec("vacuum", 2, std::nullopt), c);
  CHECK(gauss.summary.at("slope_log_distance_vs_log_n").is_null());

  c.n_max = 32;
  CHECK_THROWS_AS(run_clt_decay(preset_spec("random-even-pure", 5, 1), c), GuardRefusal);
  CHECK(clt_n_max_limit(ModeCount(4)) == 64);
}

TEST_CASE("bath-decay experiment") {
  ExperimentConfig c = config_for("bath-decay");
  c.eta = 0.5;
  c.steps = 4;
  const ExperimentResult r = run_bath_decay(preset_spec("cat", 4, std::nullopt), c);
  REQUIRE(r.rows.size() == 5);
  const double g0 = r.rows[0][1];
  CHECK(g0 > 0.1);
  for (std::size_t t = 0; t < r.rows.size(); ++t) {
    CHECK(r.rows[t][1] == doctest::Approx(g0 * std::pow(0.5, 2.0 * static_cast<double>(t))).epsilon(1e-7));
    CHECK(r.rows[t][3] < 1e-9);
  }
  c.eta = 1.0;
  CHECK_THROWS_AS(run_bath_decay(preset_spec("cat", 4, std::nullopt), c), ParseError);
  c.eta = 0.5;
  c.steps = 21;
  CHECK_THROWS_AS(run_bath_decay(preset_spec("cat", 4, std::nullopt), c), ParseError);
}

TEST_CASE("measures, wick-check and monotonicity experiments") {
  const ExperimentResult m = run_measures(preset_spec("cat", 4, std::nullopt), config_for("measures"));
  CHECK(m.rows.size() == 1);
  CHECK(m.summary.contains("report"));

  const ExperimentResult w = run_wick_check(preset_spec("random-gaussian-pure", 4, 2), config_for("wick-check"));
  REQUIRE(!w.rows.empty());
  for (const auto& row : w.rows) {
    CHECK(row[1] < 1e-18);
    CHECK(row[2] < 1e-18);
  }

  ExperimentConfig c = config_for("monotonicity");
  c.n_max = 8;
  const ExperimentResult mono = run_monotonicity(preset_spec("cat", 4, std::nullopt), c);
  CHECK(mono.rows.size() == 4);
  CHECK(mono.summary.at("self_convolution_inequality_holds").get<bool>());
  CHECK(mono.summary.at("bath_inequality_holds").get<bool>());
}

TEST_CASE("writers") {
  ExperimentResult r;
  r.experiment = "demo";
  r.columns = {"x", "y"};
  r.rows = {{1.0, 0.1}, {2.0, std::nan("")}};
  r.summary["note"] = "hi";
  std::ostringstream csv;
  write_csv(r, csv);
  const std::string text = csv.str();
  CHECK(text.find("# experiment: demo") == 0);
  CHECK(text.find("x,y\n") != std::string::npos);
  CHECK(text.find("0.10000000000000001") != std::string::npos);
  CHECK(text.find("nan") != std::string::npos);

  std::ostringstream js;
  write_json(r, js);
  const json doc = json::parse(js.str());
  CHECK(doc.at("rows").at(1).at(1).is_null());
  CHECK(doc.at("columns").size() == 2);
}

TEST_CASE("command line: exit codes") {
  const std::string out = scratch("measures.csv").string();
  CHECK(run_cli("measures --preset reference --seed 1 --out " + out) == 0);
  CHECK(std::filesystem::file_size(out) > 0);
  CHECK(run_cli("measures --preset reference") == 2);
  CHECK(run_cli("measures --preset vacuum --modes 7 --seed 1") == 3);
  CHECK(run_cli("clt-decay --preset random-even-pure --modes 6 --n-max 64 --seed 1") == 3);
  CHECK(run_cli("bath-decay --preset cat --modes 2 --eta 1.5 --seed 1") == 2);
  CHECK(run_cli("frobnicate") != 0);

  const auto odd = scratch("odd.json");
  std::ofstream(odd) << R"({"modes": 1, "kind": "explicit-amplitudes", "amplitudes": [{"basis": "1", "re": 1}]})";
  CHECK(run_cli("measures --state " + odd.string() + " --seed 1") == 2);
}

TEST_CASE("command line: identical runs give identical bytes") {
  const auto a = scratch("a.json"), b = scratch("b.json");
  const std::string args = "clt-decay --preset random-even-pure --modes 2 --n-max 8 --seed 5 --format json --out ";
  REQUIRE(run_cli(args + a.string()) == 0);
  REQUIRE(run_cli(args + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(json::parse(slurp(a)).at("provenance").at("seed") == 5);
}
