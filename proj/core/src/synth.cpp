#include "subjfair/synth.hpp"

#include <algorithm>
#include <string>

#include "subjfair/clustering.hpp"
#include "subjfair/version.hpp"

namespace subjfair {

IndividualId synthetic_id(std::size_t index, std::size_t n) {
  const std::size_t width = std::to_string(n > 0 ? n - 1 : 0).size();
  std::string digits = std::to_string(index);
  return IndividualId{"i" + std::string(width - std::min(width, digits.size()), '0') + digits};
}

namespace {

void check_profile(const SynthProfile& p) {
  if (p.n == 0) throw ConfigError("profile needs n >= 1");
  if (!(p.cluster_density >= 0.0 && p.cluster_density <= 1.0)) throw ConfigError("cluster_density outside [0,1]");
  if (!(p.base_positive_rate >= 0.0 && p.base_positive_rate <= 1.0)) {
    throw ConfigError("base_positive_rate outside [0,1]");
  }
  p.params.validate();
}

}  // namespace

AuditRunFile generate_population(const SynthProfile& profile) {
  check_profile(profile);
  std::mt19937_64 rng(profile.seed);

  AuditRunFile run;
  run.purpose.id = "synthetic";
  for (std::size_t i = 0; i < profile.n; ++i) run.population.individuals.push_back(synthetic_id(i, profile.n));
  for (const auto& m : profile.manipulation) {
    if (!run.population.contains(m.agent) || !run.population.contains(m.target_owner)) {
      throw ConfigError("manipulation references unknown id " + m.agent.str() + " -> " + m.target_owner.str());
    }
  }

  run.perceptions.set_provenance(Provenance::sampled);
  for (const auto& x : run.population.individuals) {
    for (const auto& z : run.population.individuals) {
      if (x == z) {
        run.perceptions.set(x, z, 1.0);
        continue;
      }
      const bool present = unit_interval(rng) < profile.cluster_density;
      const double value = static_cast<double>(rng() % 101) / 100.0;
      if (present) run.perceptions.set(x, z, value);
    }
  }

  run.recommendations.purpose = run.purpose;
  for (const auto& x : run.population.individuals) {
    const double u = unit_interval(rng);
    const double score = static_cast<double>(rng() % 101) / 100.0;
    if (profile.scores) {
      run.recommendations.values.emplace(x, Outcome::of_score(score));
    } else {
      run.recommendations.values.emplace(x, Outcome::of_label(label_of(u < profile.base_positive_rate)));
    }
  }

  const double delta = profile.params.delta;
  const double inflated = std::min(1.0, delta + 0.25);
  for (const auto& m : profile.manipulation) {
    const auto target = perceived_cluster(m.target_owner, run.population, run.perceptions, delta);
    for (const auto& member : target.members) {
      if (member == m.agent) continue;
      run.perceptions.set(m.agent, member, std::max(run.perceptions.similarity(m.agent, member), inflated));
    }
  }

  run.params = profile.params;
  run.strategy = AggregationStrategy::majority(profile.params.theta);
  run.meta.seed = profile.seed;
  run.meta.engine_version = std::string(kEngineVersion);
  return run;
}

}  // namespace subjfair
