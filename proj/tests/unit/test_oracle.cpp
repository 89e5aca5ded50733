#include <doctest.h>

#include <random>

#include "subjfair/oracle.hpp"
#include "subjfair/report.hpp"
#include "subjfair/synth.hpp"
#include "test_support.hpp"

using namespace subjfair;
namespace st = subjfair::testing;

namespace {

std::vector<std::string> mismatches(const AuditRunFile& run) {
  return compare_snapshots(snapshot_of(audit_run(run)), brute_force_oracle(run));
}

}  // namespace

TEST_CASE("worked example agrees with the oracle") {
  CHECK(mismatches(st::worked_example_run()).empty());
  CHECK(mismatches(load_run(st::fixture("worked_example.json"))).empty());
  CHECK(mismatches(load_run(st::fixture("unanimous.json"))).empty());
}

TEST_CASE("oracle on the worked example") {
  auto s = brute_force_oracle(st::worked_example_run());
  CHECK(s.set_recs == std::map<std::string, int>{{"x", 0}, {"y", 1}, {"u", 0}, {"v", 1}});
  CHECK(s.decisions == std::map<std::string, int>{{"x", 0}, {"y", 1}, {"u", 0}, {"v", 1}});
  CHECK(s.sf == "unfair");
}

TEST_CASE("single individual") {
  AuditRunFile run;
  run.population = st::population({"x"});
  run.perceptions = st::table_from_clusters({{"x", {}}});
  for (int label : {0, 1}) {
    run.recommendations = st::labels({{"x", label}});
    auto s = brute_force_oracle(run);
    CHECK(s.sf == "fair");
    CHECK(s.decisions.at("x") == label);
    CHECK(s.isf.at("x") == "fair");
    CHECK(s.relaxed_isf.at("x") == "fair");
    CHECK(mismatches(run).empty());
  }
}

TEST_CASE("oracle refusals") {
  SynthProfile profile;
  profile.n = kOracleDefaultMaxN + 1;
  auto big = generate_population(profile);
  CHECK_THROWS_AS(brute_force_oracle(big), PreconditionError);
  CHECK_NOTHROW(brute_force_oracle(big, big.population.size()));

  auto run = st::worked_example_run();
  run.strategy = AggregationStrategy::pessimistic();
  CHECK_THROWS_AS(brute_force_oracle(run), PreconditionError);
}

TEST_CASE("random runs agree with the oracle") {
  std::mt19937_64 rng(81);
  st::RandomRunOptions opt;
  opt.allow_scores = true;
  for (int i = 0; i < 500; ++i) {
    auto run = st::random_run(rng, opt);
    run.params.epsilon = (i % 4) * 0.2;
    run.params.theta = 0.4 + (i % 3) * 0.1;
    auto diff = mismatches(run);
    CHECK_MESSAGE(diff.empty(), (diff.empty() ? "" : diff.front()));
  }
}

TEST_CASE("comparison reports each differing field") {
  auto a = brute_force_oracle(st::worked_example_run());
  auto b = a;
  b.decisions["x"] = 1;
  b.sf = "fair";
  auto diff = compare_snapshots(a, b);
  REQUIRE(diff.size() == 2);
  CHECK(diff[0] == "decisions[x]: engine 0 vs oracle 1");
}
