#include <doctest.h>

#include "subjfair/clustering.hpp"
#include "subjfair/synth.hpp"
#include "test_support.hpp"

using namespace subjfair;

TEST_CASE("generation is deterministic in the seed") {
  SynthProfile profile;
  profile.seed = 42;
  CHECK(serialize_run(generate_population(profile)) == serialize_run(generate_population(profile)));
  auto other = profile;
  other.seed = 43;
  CHECK(serialize_run(generate_population(profile)) != serialize_run(generate_population(other)));
}

TEST_CASE("generated runs validate") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    SynthProfile profile;
    profile.seed = seed;
    profile.n = 1 + seed % 12;
    profile.cluster_density = static_cast<double>(seed % 5) / 4.0;
    profile.scores = seed % 2 == 0;
    auto run = generate_population(profile);
    CHECK(validate_run(run).ok());
    CHECK(run.population.size() == profile.n);
    CHECK(run.meta.seed == seed);
  }
}

TEST_CASE("zero density gives singleton clusters") {
  SynthProfile profile;
  profile.n = 10;
  profile.cluster_density = 0.0;
  profile.seed = 9;
  auto run = generate_population(profile);
  for (double delta : {0.01, 0.5, 1.0}) {
    auto family = build_cluster_family(run.population, run.perceptions, delta);
    for (const auto& [owner, cluster] : family.clusters) CHECK(cluster.members == std::set<IndividualId>{owner});
  }
}

TEST_CASE("manipulating agents join the target cluster") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    SynthProfile profile;
    profile.seed = seed;
    profile.n = 8;
    profile.params.delta = 0.3 + 0.1 * static_cast<double>(seed % 6);
    const auto agent = synthetic_id(seed % 8, 8);
    const auto owner = synthetic_id((seed + 3) % 8, 8);
    profile.manipulation.push_back({agent, owner});

    auto honest = profile;
    honest.manipulation.clear();
    auto before = generate_population(honest);
    auto target = perceived_cluster(owner, before.population, before.perceptions, profile.params.delta);

    auto run = generate_population(profile);
    CHECK(validate_run(run).ok());
    auto mine = perceived_cluster(agent, run.population, run.perceptions, profile.params.delta);
    for (const auto& m : target.members) CHECK(mine.contains(m));
  }
}

TEST_CASE("synthetic ids sort by index") {
  CHECK(synthetic_id(3, 12).str() == "i03");
  CHECK(synthetic_id(3, 12) < synthetic_id(10, 12));
  CHECK(synthetic_id(0, 1).str() == "i0");
}

TEST_CASE("invalid profiles") {
  SynthProfile profile;
  profile.cluster_density = 1.5;
  CHECK_THROWS_AS(generate_population(profile), ConfigError);
  profile = {};
  profile.manipulation.push_back({IndividualId{"nobody"}, synthetic_id(0, 8)});
  CHECK_THROWS_AS(generate_population(profile), Error);
}
