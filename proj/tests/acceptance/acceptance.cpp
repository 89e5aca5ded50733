// Acceptance gate: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "subjfair/oracle.hpp"
#include "subjfair/report.hpp"
#include "subjfair/synth.hpp"
#include "test_support.hpp"

using namespace subjfair;
namespace st = subjfair::testing;

namespace {

// Pinned limits.
constexpr double kWorkedExampleSeconds = 1.0;
constexpr double kOracleSeconds = 60.0;
constexpr int kOraclePopulations = 200;
constexpr std::size_t kOracleMaxN = 8;
constexpr int kPropertyCases = 1000;
constexpr int kLedgerMutations = 500;
constexpr std::uint64_t kManipulationSeedLimit = 5000;

const std::vector<double> kDeltas{0.0, 0.3, 0.5, 0.8, 1.0};
const std::vector<double> kThetas{0.4, 0.5, 0.6};

struct CriterionResult {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::map<std::string, int> as_ints(const std::map<IndividualId, Label>& m) {
  std::map<std::string, int> out;
  for (const auto& [id, l] : m) out[id.str()] = to_int(l);
  return out;
}

PipelineResult pipeline(const AuditRunFile& run, double theta) {
  auto family = build_cluster_family(run.population, run.perceptions, run.params.delta);
  return run_pipeline(run.population, family, run.recommendations, AggregationStrategy::majority(theta));
}

AuditReport audit(const AuditRunFile& run) {
  return run_audit(run.population, run.perceptions, run.recommendations, run.params,
                   AggregationStrategy::majority(run.params.theta));
}

CriterionResult worked_example_stage(bool stage_one) {
  CriterionResult out;
  const auto start = Clock::now();
  auto run = load_run(st::fixture("worked_example.json"));
  auto result = pipeline(run, 0.5);
  const auto got = as_ints(stage_one ? result.set_recs.values : result.decisions.values);
  const std::map<std::string, int> want{{"x", 0}, {"y", 1}, {"u", 0}, {"v", 1}};
  const double elapsed = seconds_since(start);
  if (got != want) out.fail("aggregate labels differ from the expected {x:0, y:1, u:0, v:1}");
  if (elapsed >= kWorkedExampleSeconds) out.fail("took " + std::to_string(elapsed) + " s");
  if (out.pass) out.detail = "exact match in " + std::to_string(elapsed * 1000.0) + " ms";
  return out;
}

CriterionResult distance_counterexample() {
  CriterionResult out;
  const IndividualId x{"x"}, y{"y"};
  ObjectiveDistanceTable d;
  d.set(x, y, 0.05);
  d.set_override(x, x, y, 0.04);
  ScoreMapping scores{{{x, 0.85}, {y, 0.90}}};
  if (!dwork_if_check(scores, d).empty()) out.fail("objective check reported a violation");
  auto perceived = subjective_if_check(scores, d);
  if (perceived.size() != 1 || perceived[0].observer != x) {
    out.fail("expected exactly one violation, observed by x");
  }
  if (out.pass) out.detail = "objective: none; perceived: x only";
  return out;
}

CriterionResult oracle_equivalence() {
  CriterionResult out;
  const auto start = Clock::now();
  std::size_t comparisons = 0;
  for (int i = 0; i < kOraclePopulations && out.pass; ++i) {
    SynthProfile profile;
    profile.seed = 1000 + static_cast<std::uint64_t>(i);
    profile.n = 1 + static_cast<std::size_t>(i) % kOracleMaxN;
    profile.cluster_density = 0.2 + 0.15 * static_cast<double>(i % 5);
    profile.scores = i % 4 == 3;
    const auto base = generate_population(profile);
    for (double delta : kDeltas) {
      for (double theta : kThetas) {
        auto run = base;
        run.params = {delta, 0.0, theta};
        run.strategy = AggregationStrategy::majority(theta);
        auto diff = compare_snapshots(snapshot_of(audit_run(run)), brute_force_oracle(run, kOracleMaxN));
        ++comparisons;
        if (!diff.empty()) out.fail("seed " + std::to_string(profile.seed) + ": " + diff.front());
      }
    }
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= kOracleSeconds) out.fail("took " + std::to_string(elapsed) + " s");
  if (out.pass) {
    out.detail = std::to_string(comparisons) + " comparisons, 0 mismatches, " + std::to_string(elapsed) + " s";
  }
  return out;
}

// Each property returns an empty string on success, else a description.
using Property = std::function<std::string(std::mt19937_64&)>;

std::string delta_monotone(std::mt19937_64& rng) {
  auto run = st::random_run(rng);
  for (const auto& x : run.population.individuals) {
    for (std::size_t k = 0; k + 1 < kDeltas.size(); ++k) {
      auto loose = perceived_cluster(x, run.population, run.perceptions, kDeltas[k]).members;
      auto tight = perceived_cluster(x, run.population, run.perceptions, kDeltas[k + 1]).members;
      for (const auto& m : tight) {
        if (!loose.count(m)) return "cluster of " + x.str() + " grew with delta";
      }
    }
  }
  return {};
}

std::string theta_antitone(std::mt19937_64& rng) {
  auto run = st::random_run(rng);
  const std::array<double, 6> thetas{0.0, 0.2, 0.4, 0.5, 0.6, 0.9};
  auto prev = pipeline(run, thetas[0]);
  for (std::size_t k = 1; k < thetas.size(); ++k) {
    auto next = pipeline(run, thetas[k]);
    for (const auto& x : run.population.individuals) {
      if (to_int(next.set_recs.at(x)) > to_int(prev.set_recs.at(x)) ||
          to_int(next.decisions.at(x)) > to_int(prev.decisions.at(x))) {
        return "aggregate for " + x.str() + " rose with theta";
      }
    }
    prev = std::move(next);
  }
  return {};
}

std::string unanimity(std::mt19937_64& rng) {
  auto run = st::random_run(rng);
  const bool positive = rng() % 2 == 0;
  for (auto& [who, o] : run.recommendations.values) o = Outcome::of_label(label_of(positive));
  auto result = pipeline(run, positive ? 0.99 : 0.0);
  for (const auto& x : run.population.individuals) {
    if (result.set_recs.at(x) != label_of(positive) || result.decisions.at(x) != label_of(positive)) {
      return "unanimous input not preserved at " + x.str();
    }
  }
  return {};
}

std::string isf_implies_relaxed(std::mt19937_64& rng) {
  auto run = st::random_run(rng);
  auto report = audit(run);
  for (const auto& v : report.individuals) {
    if (v.isf == Verdict::fair && v.relaxed_isf != Verdict::fair) return "isf without relaxed isf at " + v.individual.str();
  }
  return {};
}

std::string totality(std::mt19937_64& rng) {
  auto run = st::random_run(rng);
  auto result = pipeline(run, 0.5);
  if (result.decisions.values.size() != run.population.size()) return "decision vector not total";
  for (const auto& x : run.population.individuals) {
    if (!result.decisions.values.count(x)) return "no decision for " + x.str();
  }
  return {};
}

std::string scenario_partition(std::mt19937_64& rng) {
  st::RandomRunOptions opt;
  opt.allow_scores = true;
  auto run = st::random_run(rng, opt);
  auto report = audit(run);
  if (report.individuals.size() != run.population.size()) return "scenario missing";
  const auto kind = *run.recommendations.kind();
  for (const auto& v : report.individuals) {
    const auto& rx = run.recommendations.at(v.individual);
    const bool close_to_set =
        treatment_similarity(rx, outcome_in(report.set_recs.at(v.individual), kind)) > run.params.epsilon;
    bool all_close = true;
    for (const auto& y : report.family.cluster_of(v.individual).members) {
      if (!(treatment_similarity(run.recommendations.at(y), rx) > run.params.epsilon)) all_close = false;
    }
    const bool satisfied = close_to_set && all_close;
    const bool relaxed = close_to_set && !all_close;
    const bool neither = !close_to_set;
    if (satisfied + relaxed + neither != 1) return "conditions overlap";
    const auto expected = satisfied ? ScenarioClass::isf_satisfied
                                    : (relaxed ? ScenarioClass::relaxed_only : ScenarioClass::neither);
    if (v.scenario != expected) return "wrong scenario for " + v.individual.str();
  }
  return {};
}

std::string strict_ties(std::mt19937_64& rng) {
  // Cluster of size 2k with exactly k positives; theta 0.5 sits on the tally.
  std::uniform_int_distribution<int> half(1, 4);
  const int k = half(rng);
  PerceivedCluster cluster{IndividualId{"m0"}, {}};
  RecommendationVector recs;
  std::vector<int> labels(static_cast<std::size_t>(2 * k), 0);
  std::fill(labels.begin(), labels.begin() + k, 1);
  std::shuffle(labels.begin(), labels.end(), rng);
  for (int i = 0; i < 2 * k; ++i) {
    IndividualId id{"m" + std::to_string(i)};
    cluster.members.insert(id);
    recs.values.emplace(id, Outcome::of_label(label_of(labels[static_cast<std::size_t>(i)] == 1)));
  }
  if (aggregate_set_recommendation(cluster, recs, 0.5) != Label::negative) return "tie resolved to 1 at stage one";

  // Stage two: an individual in 2k clusters, k of them positive.
  ClusterFamily family;
  SetRecommendationVector set_recs;
  const IndividualId target{"t"};
  for (int i = 0; i < 2 * k; ++i) {
    IndividualId owner{"o" + std::to_string(i)};
    family.clusters[owner] = PerceivedCluster{owner, {owner, target}};
    family.membership_index[target].insert(owner);
    set_recs.values[owner] = label_of(labels[static_cast<std::size_t>(i)] == 1);
  }
  if (aggregate_individual_decision(target, family, set_recs, 0.5) != Label::negative) {
    return "tie resolved to 1 at stage two";
  }
  return {};
}

std::string perceived_equals_objective(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(2, 8), hundredths(0, 100);
  std::bernoulli_distribution present(0.7);
  ScoreMapping scores;
  ObjectiveDistanceTable d;
  const int n = size(rng);
  std::vector<IndividualId> people;
  for (int i = 0; i < n; ++i) {
    people.emplace_back("p" + std::to_string(i));
    scores.values[people.back()] = hundredths(rng) / 100.0;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (present(rng)) d.set(people[static_cast<std::size_t>(i)], people[static_cast<std::size_t>(j)], hundredths(rng) / 100.0);
    }
  }
  std::set<IdPair> objective;
  for (const auto& v : dwork_if_check(scores, d)) objective.insert(v.pair);
  std::map<IdPair, std::set<IndividualId>> perceived;
  for (const auto& v : subjective_if_check(scores, d)) perceived[v.pair].insert(v.observer);
  std::set<IdPair> perceived_pairs;
  for (const auto& [pair, observers] : perceived) {
    if (observers != std::set<IndividualId>{pair.first(), pair.second()}) return "observers disagree without overrides";
    perceived_pairs.insert(pair);
  }
  if (perceived_pairs != objective) return "violation sets differ";
  return {};
}

CriterionResult property_suite() {
  CriterionResult out;
  const std::vector<std::pair<std::string, Property>> properties{
      {"delta-monotonicity", delta_monotone},
      {"theta-antitonicity", theta_antitone},
      {"unanimity", unanimity},
      {"isf-implies-relaxed", isf_implies_relaxed},
      {"totality", totality},
      {"scenario-partition", scenario_partition},
      {"strict-ties", strict_ties},
      {"perceived-equals-objective", perceived_equals_objective},
  };
  std::uint64_t seed = 500;
  for (const auto& [name, property] : properties) {
    std::mt19937_64 rng(seed++);
    for (int i = 0; i < kPropertyCases; ++i) {
      auto problem = property(rng);
      if (!problem.empty()) {
        out.fail(name + " case " + std::to_string(i) + ": " + problem);
        break;
      }
    }
  }
  if (out.pass) {
    out.detail = std::to_string(properties.size()) + " properties x " + std::to_string(kPropertyCases) + " cases";
  }
  return out;
}

CriterionResult manipulation_mitigation() {
  CriterionResult out;
  constexpr std::size_t n = 8;
  for (std::uint64_t seed = 0; seed < kManipulationSeedLimit; ++seed) {
    SynthProfile profile;
    profile.seed = seed;
    profile.n = n;
    profile.cluster_density = 0.3;
    const auto agent = synthetic_id(seed % n, n);
    const auto owner = synthetic_id((seed / n + 1 + seed) % n, n);
    if (agent == owner) continue;
    profile.manipulation.push_back({agent, owner});
    auto run = generate_population(profile);

    auto engine = audit_run(run);
    if (engine.set_recs.at(owner) != Label::positive) continue;
    if (engine.set_recs.at(agent) != Label::positive) continue;
    if (engine.decisions.at(agent) != Label::negative) continue;

    auto oracle = brute_force_oracle(run);
    const bool joined = engine.family.cluster_of(agent).members.size() > 1;
    if (joined && oracle.set_recs.at(owner.str()) == 1 && oracle.set_recs.at(agent.str()) == 1 &&
        oracle.decisions.at(agent.str()) == 0) {
      out.detail = "seed " + std::to_string(seed) + ": agent " + agent.str() + " -> cluster of " + owner.str() +
                   ", favored label 1, decision 0 (oracle agrees)";
      return out;
    }
  }
  out.fail("no instance within " + std::to_string(kManipulationSeedLimit) + " seeds");
  return out;
}

int rank(ExplanationVerdict v) {
  return v == ExplanationVerdict::unfair ? 0 : (v == ExplanationVerdict::pending ? 1 : 2);
}

CriterionResult explanation_state_machine() {
  CriterionResult out;

  auto unanimous = build_report(load_run(st::fixture("unanimous.json")));
  if (!unanimous.obligations.empty() || unanimous.explanation_verdict != ExplanationVerdict::fair) {
    out.fail("zero obligations did not yield fair");
  }

  auto worked = build_report(load_run(st::fixture("worked_example.json")));
  AcceptanceLedger ledger;
  for (std::size_t i = 0; i < worked.obligations.size(); ++i) {
    ledger.record(worked.obligations[i].key(), i == 0 ? AcceptanceState::rejected : AcceptanceState::accepted);
  }
  if (worked.obligations.empty() ||
      fairness_through_explanations(worked.obligations, ledger) != ExplanationVerdict::unfair) {
    out.fail("a single rejection did not yield unfair");
  }

  std::mt19937_64 rng(700);
  const std::array states{AcceptanceState::accepted, AcceptanceState::rejected, AcceptanceState::pending};
  const auto& obligations = worked.obligations;
  std::uniform_int_distribution<std::size_t> pick(0, obligations.size() - 1), state(0, 2);
  AcceptanceLedger random;
  for (int i = 0; i < kLedgerMutations && out.pass; ++i) {
    random.record(obligations[pick(rng)].key(), states[state(rng)]);
    const auto before = fairness_through_explanations(obligations, random);
    auto accepted = random;
    accepted.record(obligations[pick(rng)].key(), AcceptanceState::accepted);
    if (rank(fairness_through_explanations(obligations, accepted)) < rank(before)) {
      out.fail("acceptance moved the verdict away from fair at mutation " + std::to_string(i));
    }
  }
  if (out.pass) {
    out.detail = "vacuous fair, single rejection unfair, " + std::to_string(kLedgerMutations) + " monotone mutations";
  }
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<CriterionResult()>>> criteria{
      {"AC1 stage-one labels on the worked example", [] { return worked_example_stage(true); }},
      {"AC2 stage-two decisions on the worked example", [] { return worked_example_stage(false); }},
      {"AC3 objective vs perceived distance counterexample", distance_counterexample},
      {"AC4 engine equals brute-force oracle", oracle_equivalence},
      {"AC5 property suite", property_suite},
      {"AC6 manipulation mitigation instance", manipulation_mitigation},
      {"AC7 explanation acceptance state machine", explanation_state_machine},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    CriterionResult result;
    try {
      result = check();
    } catch (const std::exception& e) {
      result.fail(std::string("exception: ") + e.what());
    }
    failures += result.pass ? 0 : 1;
    std::printf("%s  %s: %s\n", result.pass ? "PASS" : "FAIL", name.c_str(), result.detail.c_str());
  }
  std::fflush(stdout);
  return failures;
}
