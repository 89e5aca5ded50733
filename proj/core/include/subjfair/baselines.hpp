#pragma once

// Classical auditors kept for comparison: the Lipschitz individual-fairness
// property under an objective distance, the same property evaluated with each
// observer's own (possibly asymmetric) distance, and statistical parity.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "subjfair/model.hpp"

namespace subjfair {

/// Score differences within this slack of the distance count as satisfying it,
/// so decimal inputs like |0.85 - 0.90| <= 0.05 compare as written.
inline constexpr double kDistanceSlack = 1e-9;

/// Unordered pair; construction sorts the two ids.
class IdPair {
 public:
  IdPair(IndividualId a, IndividualId b);

  const IndividualId& first() const noexcept { return first_; }
  const IndividualId& second() const noexcept { return second_; }

  friend auto operator<=>(const IdPair&, const IdPair&) = default;
  friend bool operator==(const IdPair&, const IdPair&) = default;

 private:
  IndividualId first_;
  IndividualId second_;
};

class ObjectiveDistanceTable {
 public:
  void set(const IndividualId& a, const IndividualId& b, double distance);
  /// Observer-specific distance for the pair (a, b).
  void set_override(const IndividualId& observer, const IndividualId& a, const IndividualId& b, double distance);

  /// Throws InputError when the pair has no objective distance.
  double objective(const IndividualId& a, const IndividualId& b) const;
  /// The observer's override if present, otherwise the objective distance.
  double perceived_by(const IndividualId& observer, const IndividualId& a, const IndividualId& b) const;

  const std::map<IdPair, double>& objective_entries() const noexcept { return objective_; }
  const std::map<std::pair<IndividualId, IdPair>, double>& overrides() const noexcept { return overrides_; }

  friend bool operator==(const ObjectiveDistanceTable&, const ObjectiveDistanceTable&) = default;

 private:
  std::map<IdPair, double> objective_;
  std::map<std::pair<IndividualId, IdPair>, double> overrides_;
};

struct ScoreMapping {
  std::map<IndividualId, double> values;

  /// Throws InputError for a missing score.
  double at(const IndividualId& id) const;

  friend bool operator==(const ScoreMapping&, const ScoreMapping&) = default;
};

struct PairViolation {
  IdPair pair;
  double score_gap;
  double distance;

  friend bool operator==(const PairViolation&, const PairViolation&) = default;
};

struct ObserverViolation {
  IndividualId observer;
  IdPair pair;
  double score_gap;
  double distance;

  friend bool operator==(const ObserverViolation&, const ObserverViolation&) = default;
};

/// Pairs to check; an empty span means every pair with an objective distance.
std::vector<IdPair> resolve_pairs(std::span<const IdPair> pairs, const ObjectiveDistanceTable& distances);

/// Pairs with |M(x) - M(y)| > d(x, y), in pair order.
std::vector<PairViolation> dwork_if_check(const ScoreMapping& scores,
                                          const ObjectiveDistanceTable& distances,
                                          std::span<const IdPair> pairs = {});

/// Each member of each pair judges it with their own distance.
std::vector<ObserverViolation> subjective_if_check(const ScoreMapping& scores,
                                                   const ObjectiveDistanceTable& distances,
                                                   std::span<const IdPair> pairs = {});

struct ParityResult {
  std::map<std::string, double> positive_rate;
  double gap = 0.0;
};

/// Positive-decision rate per value of `group_attribute`, and max - min.
/// Throws InputError when an individual lacks the attribute.
ParityResult statistical_parity_gap(const DecisionVector& decisions,
                                    const Population& pop,
                                    const std::string& group_attribute);

}  // namespace subjfair
