#include "subjfair/clustering.hpp"

#include <string>

namespace subjfair {

const PerceivedCluster& ClusterFamily::cluster_of(const IndividualId& owner) const {
  auto it = clusters.find(owner);
  if (it == clusters.end()) throw UnknownIdError("no cluster owned by " + owner.str());
  return it->second;
}

const std::set<IndividualId>& ClusterFamily::owners_containing(const IndividualId& id) const {
  auto it = membership_index.find(id);
  if (it == membership_index.end()) throw UnknownIdError("no membership entry for " + id.str());
  return it->second;
}

namespace {

void check_delta(double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw ConfigError("delta = " + std::to_string(delta) + " is outside [0,1]");
  }
}

PerceivedCluster threshold_row(const IndividualId& x,
                               const Population& pop,
                               const PerceptionTable& perceptions,
                               double delta) {
  PerceivedCluster cluster{x, {}};
  for (const auto& z : pop.individuals) {
    if (perceptions.similarity(x, z) >= delta) cluster.members.insert(z);
  }
  return cluster;
}

}  // namespace

PerceivedCluster perceived_cluster(const IndividualId& x,
                                   const Population& pop,
                                   const PerceptionTable& perceptions,
                                   double delta) {
  check_delta(delta);
  if (!pop.contains(x)) throw UnknownIdError("unknown individual " + x.str());
  if (perceptions.similarity(x, x) != 1.0) {
    throw ValidationError(ValidationReport{
        {{"sim[" + x.str() + "][" + x.str() + "]", "self-similarity must be 1.0 for " + x.str()}}});
  }
  return threshold_row(x, pop, perceptions, delta);
}

ClusterFamily build_cluster_family(const Population& pop,
                                   const PerceptionTable& perceptions,
                                   double delta) {
  check_delta(delta);
  if (auto report = validate_perceptions(pop, perceptions); !report.ok()) {
    throw ValidationError(std::move(report));
  }

  ClusterFamily family;
  for (const auto& id : pop.individuals) family.membership_index[id];
  for (const auto& x : pop.individuals) {
    auto cluster = threshold_row(x, pop, perceptions, delta);
    for (const auto& member : cluster.members) family.membership_index[member].insert(x);
    family.clusters.emplace(x, std::move(cluster));
  }
  return family;
}

}  // namespace subjfair
