// subjfair: command-line front end for validating, auditing and simulating
// subjective-fairness runs.
//
// Exit codes: 0 clean, 1 process judged unfair (audit --strict) or oracle
// mismatch, 2 input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "subjfair/oracle.hpp"
#include "subjfair/report.hpp"
#include "subjfair/run_file.hpp"
#include "subjfair/sweep.hpp"
#include "subjfair/synth.hpp"
#include "subjfair/version.hpp"

namespace {

constexpr int kExitClean = 0;
constexpr int kExitUnfair = 1;
constexpr int kExitInput = 2;

struct RunOptions {
  std::string input;
  std::optional<double> delta;
  std::optional<double> epsilon;
  std::optional<double> theta;
  std::optional<std::string> strategy;
  std::string format = "text";
  std::optional<std::string> group_attr;
};

void add_run_options(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("--input", o.input, "Audit run file (JSON)")->required();
  cmd->add_option("--delta", o.delta, "Cluster threshold override, in [0,1]");
  cmd->add_option("--epsilon", o.epsilon, "Treatment-similarity threshold override, in [0,1)");
  cmd->add_option("--theta", o.theta, "Majority threshold override, in [0,1)");
  cmd->add_option("--strategy", o.strategy, "majority | trust_weighted | pessimistic | veto");
  cmd->add_option("--format", o.format, "text | json")->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--group-attr", o.group_attr, "Attribute key for statistical parity");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw subjfair::InputError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

subjfair::AuditRunFile parse_with_overrides(const RunOptions& o) {
  auto run = subjfair::parse_run(read_file(o.input));
  if (o.delta) run.params.delta = *o.delta;
  if (o.epsilon) run.params.epsilon = *o.epsilon;
  if (o.theta) run.params.theta = *o.theta;
  run.strategy.theta = run.params.theta;
  if (o.strategy) {
    auto kind = subjfair::parse_strategy_kind(*o.strategy);
    if (!kind) throw subjfair::ConfigError("unknown strategy '" + *o.strategy + "'");
    run.strategy.kind = *kind;
  }
  return run;
}

subjfair::AuditRunFile load_with_overrides(const RunOptions& o) {
  auto run = parse_with_overrides(o);
  if (auto report = subjfair::validate_run(run); !report.ok()) throw subjfair::ValidationError(std::move(report));
  return run;
}

subjfair::ReportFormat format_of(const RunOptions& o) {
  return subjfair::parse_report_format(o.format).value_or(subjfair::ReportFormat::text);
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      values.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw subjfair::ConfigError("bad grid value '" + item + "'");
    }
  }
  if (values.empty()) throw subjfair::ConfigError("empty grid '" + text + "'");
  return values;
}

subjfair::Manipulation parse_manipulation(const std::string& text, std::size_t n) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw subjfair::ConfigError("manipulation must be AGENT:OWNER, got '" + text + "'");
  auto id_of = [n](const std::string& part) {
    // Bare indices are accepted as shorthand for synthetic ids.
    if (!part.empty() && part.find_first_not_of("0123456789") == std::string::npos) {
      return subjfair::synthetic_id(std::stoul(part), n);
    }
    return subjfair::IndividualId{part};
  };
  return {id_of(text.substr(0, colon)), id_of(text.substr(colon + 1))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subjective fairness auditing and decision aggregation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(subjfair::kEngineVersion));

  RunOptions validate_opts, audit_opts, decide_opts, baseline_opts, oracle_opts, report_opts;
  bool strict = false;
  std::size_t oracle_max_n = subjfair::kOracleDefaultMaxN;

  auto* validate_cmd = app.add_subcommand("validate", "Check a run file against the schema and input invariants");
  validate_cmd->add_option("--input", validate_opts.input, "Audit run file (JSON)")->required();
  validate_cmd->add_option("--format", validate_opts.format, "text | json")->check(CLI::IsMember({"text", "json"}));

  auto* audit_cmd = app.add_subcommand("audit", "Individual and process-level subjective fairness verdicts");
  add_run_options(audit_cmd, audit_opts);
  audit_cmd->add_flag("--strict", strict, "Exit with status 1 when the process is judged unfair");

  auto* decide_cmd = app.add_subcommand("decide", "Run the two-stage aggregation pipeline");
  add_run_options(decide_cmd, decide_opts);

  auto* baseline_cmd = app.add_subcommand("baseline", "Objective and perceived individual fairness, statistical parity");
  add_run_options(baseline_cmd, baseline_opts);

  auto* oracle_cmd = app.add_subcommand("oracle", "Compare the engine against the brute-force re-derivation");
  add_run_options(oracle_cmd, oracle_opts);
  oracle_cmd->add_option("--max-n", oracle_max_n, "Largest population the oracle accepts");

  auto* report_cmd = app.add_subcommand("report", "Full audit report with obligations and baselines");
  add_run_options(report_cmd, report_opts);

  subjfair::SynthProfile profile;
  std::vector<std::string> manipulations;
  std::optional<std::string> out_path;
  bool do_sweep = false;
  std::string deltas = "0,0.3,0.5,0.8,1", epsilons = "0", thetas = "0.4,0.5,0.6";
  std::string sim_strategy = "majority";
  auto* simulate_cmd = app.add_subcommand("simulate", "Generate a seeded synthetic run, optionally sweeping parameters");
  simulate_cmd->add_option("--seed", profile.seed, "Generator seed");
  simulate_cmd->add_option("--n", profile.n, "Population size")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--density", profile.cluster_density, "Probability of an off-diagonal similarity entry");
  simulate_cmd->add_option("--positive-rate", profile.base_positive_rate, "Share of positive recommendations");
  simulate_cmd->add_option("--manipulate", manipulations, "AGENT:OWNER, agent inflates similarity toward OWNER's cluster");
  simulate_cmd->add_flag("--scores", profile.scores, "Emit score recommendations instead of labels");
  simulate_cmd->add_option("--delta", profile.params.delta, "Cluster threshold");
  simulate_cmd->add_option("--epsilon", profile.params.epsilon, "Treatment-similarity threshold");
  simulate_cmd->add_option("--theta", profile.params.theta, "Majority threshold");
  simulate_cmd->add_option("--strategy", sim_strategy, "Strategy recorded in the generated run");
  simulate_cmd->add_option("--out", out_path, "Write the generated run file here");
  simulate_cmd->add_flag("--sweep", do_sweep, "Print a delta/epsilon/theta sweep table (CSV)");
  simulate_cmd->add_option("--deltas", deltas, "Comma-separated delta grid");
  simulate_cmd->add_option("--epsilons", epsilons, "Comma-separated epsilon grid");
  simulate_cmd->add_option("--thetas", thetas, "Comma-separated theta grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitClean : kExitInput;
  }

  try {
    if (*validate_cmd) {
      auto run = subjfair::parse_run(read_file(validate_opts.input));
      auto report = subjfair::validate_run(run);
      std::cout << subjfair::emit_validation(report, format_of(validate_opts));
      return report.ok() ? kExitClean : kExitInput;
    }
    if (*audit_cmd) {
      auto report = subjfair::audit_run(load_with_overrides(audit_opts));
      std::cout << subjfair::emit_audit(report, format_of(audit_opts));
      return strict && report.sf.verdict == subjfair::Verdict::unfair ? kExitUnfair : kExitClean;
    }
    if (*decide_cmd) {
      auto report = subjfair::audit_run(load_with_overrides(decide_opts));
      std::cout << subjfair::emit_decisions(report, format_of(decide_opts));
      return kExitClean;
    }
    if (*baseline_cmd) {
      auto run = load_with_overrides(baseline_opts);
      auto audit = subjfair::audit_run(run);
      auto baseline = subjfair::run_baselines(run, audit.decisions, baseline_opts.group_attr);
      std::cout << subjfair::emit_baseline(baseline, format_of(baseline_opts));
      return kExitClean;
    }
    if (*oracle_cmd) {
      auto run = load_with_overrides(oracle_opts);
      auto engine = subjfair::snapshot_of(subjfair::audit_run(run));
      auto oracle = subjfair::brute_force_oracle(run, oracle_max_n);
      auto mismatches = subjfair::compare_snapshots(engine, oracle);
      if (mismatches.empty()) {
        std::cout << "engine and oracle agree on " << run.population.size() << " individuals\n";
        return kExitClean;
      }
      std::cout << mismatches.size() << " mismatch(es)\n";
      for (const auto& m : mismatches) std::cout << "  " << m << "\n";
      return kExitUnfair;
    }
    if (*report_cmd) {
      auto run = load_with_overrides(report_opts);
      subjfair::ReportOptions options;
      options.group_attribute = report_opts.group_attr;
      options.include_baseline = run.baseline.has_value() || report_opts.group_attr.has_value();
      auto doc = subjfair::build_report(run, options);
      std::cout << subjfair::emit_report(doc, format_of(report_opts));
      return kExitClean;
    }
    if (*simulate_cmd) {
      for (const auto& m : manipulations) profile.manipulation.push_back(parse_manipulation(m, profile.n));
      auto run = subjfair::generate_population(profile);
      auto kind = subjfair::parse_strategy_kind(sim_strategy);
      if (!kind) throw subjfair::ConfigError("unknown strategy '" + sim_strategy + "'");
      run.strategy.kind = *kind;
      if (out_path) subjfair::save_run(run, *out_path);
      if (do_sweep) {
        subjfair::SweepGrid grid{parse_grid(deltas), parse_grid(epsilons), parse_grid(thetas)};
        std::cout << subjfair::sweep_csv(subjfair::sweep(run, grid));
      } else if (!out_path) {
        std::cout << subjfair::serialize_run(run);
      }
      return kExitClean;
    }
  } catch (const subjfair::ValidationError& e) {
    std::cerr << "error: invalid inputs\n" << subjfair::emit_validation(e.report(), subjfair::ReportFormat::text);
    return kExitInput;
  } catch (const subjfair::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitClean;
}
