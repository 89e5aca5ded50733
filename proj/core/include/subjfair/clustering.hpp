#pragma once

#include <map>
#include <set>

#include "subjfair/model.hpp"

namespace subjfair {

/// The set of individuals the owner rates at least delta-similar to themself.
struct PerceivedCluster {
  IndividualId owner;
  std::set<IndividualId> members;

  bool contains(const IndividualId& id) const { return members.count(id) != 0; }
  std::size_t size() const noexcept { return members.size(); }

  friend bool operator==(const PerceivedCluster&, const PerceivedCluster&) = default;
};

/// One cluster per individual plus the inverse relation: for each individual,
/// the owners whose cluster contains them.
struct ClusterFamily {
  std::map<IndividualId, PerceivedCluster> clusters;
  std::map<IndividualId, std::set<IndividualId>> membership_index;

  const PerceivedCluster& cluster_of(const IndividualId& owner) const;
  const std::set<IndividualId>& owners_containing(const IndividualId& id) const;
};

/// Members are every z in the population with sim_x(x, z) >= delta.
/// Throws UnknownIdError for an x outside the population, ConfigError for a
/// delta outside [0,1], and ValidationError if x's self-similarity is not 1.
PerceivedCluster perceived_cluster(const IndividualId& x,
                                   const Population& pop,
                                   const PerceptionTable& perceptions,
                                   double delta);

/// Validates the perception table, then builds every cluster and the
/// membership index.
ClusterFamily build_cluster_family(const Population& pop,
                                   const PerceptionTable& perceptions,
                                   double delta);

}  // namespace subjfair
