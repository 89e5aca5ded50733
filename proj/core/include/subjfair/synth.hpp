#pragma once

// Seeded synthetic populations, including agents who inflate their perceived
// similarity toward a cluster with a favorable recommendation.

#include <cstdint>
#include <random>
#include <vector>

#include "subjfair/run_file.hpp"

namespace subjfair {

struct Manipulation {
  IndividualId agent;
  /// Owner of the cluster the agent wants to join.
  IndividualId target_owner;
};

struct SynthProfile {
  std::size_t n = 8;
  /// Probability that an off-diagonal similarity entry is present.
  double cluster_density = 0.3;
  double base_positive_rate = 0.5;
  std::vector<Manipulation> manipulation;
  std::uint64_t seed = 0;
  AuditParams params;
  /// Score recommendations instead of labels.
  bool scores = false;
};

/// Synthetic id for position `index` in a population of size `n` ("i0".."i9",
/// zero-padded so that id order matches index order).
IndividualId synthetic_id(std::size_t index, std::size_t n);

/// Deterministic in the profile. Present entries are drawn from {0.00, 0.01, ..., 1.00};
/// absent entries read as 0. Each manipulation raises sim(agent, m) to at least
/// min(1, delta + 0.25) for every member m of the target cluster at profile.params.delta,
/// applied in order. Throws ConfigError on an invalid profile.
AuditRunFile generate_population(const SynthProfile& profile);

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace subjfair
