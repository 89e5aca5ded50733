#pragma once

// Two-stage decision pipeline: recommendations are first aggregated within
// each perceived cluster, then every individual's decision is aggregated over
// all clusters that contain them. Alternative strategies (trust weighting,
// pessimistic resolution, attribute vetoes) plug into the same two stages.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "subjfair/clustering.hpp"
#include "subjfair/model.hpp"

namespace subjfair {

/// One aggregated label per cluster owner.
struct SetRecommendationVector {
  Purpose purpose;
  std::map<IndividualId, Label> values;

  Label at(const IndividualId& owner) const;
};

enum class StrategyKind { majority, trust_weighted, pessimistic, veto };

std::string_view to_string(StrategyKind kind);
std::optional<StrategyKind> parse_strategy_kind(std::string_view text);

enum class Comparison { less, less_equal, greater, greater_equal, equal, not_equal };

std::string_view to_string(Comparison op);
std::optional<Comparison> parse_comparison(std::string_view text);

/// `attribute op operand` forces `vetoed` to the negative label when it holds.
struct VetoRule {
  std::string attribute;
  Comparison op = Comparison::equal;
  AttributeValue operand;
  Label vetoed = Label::positive;

  /// False when the attribute is absent or of a different type than the operand.
  bool matches(const AttributeMap& attributes) const;

  friend bool operator==(const VetoRule&, const VetoRule&) = default;
};

struct AggregationStrategy {
  StrategyKind kind = StrategyKind::majority;
  double theta = 0.5;
  /// Only consulted by StrategyKind::veto.
  std::vector<VetoRule> vetoes;
  /// Per-individual thresholds replacing `theta` for the owner's cluster tally
  /// and for that individual's decision. Recorded as non-uniform treatment by
  /// the procedural check.
  std::map<IndividualId, double> theta_overrides;

  static AggregationStrategy majority(double theta) { return {StrategyKind::majority, theta, {}, {}}; }
  static AggregationStrategy trust_weighted(double theta) {
    return {StrategyKind::trust_weighted, theta, {}, {}};
  }
  static AggregationStrategy pessimistic() { return {StrategyKind::pessimistic, 0.5, {}, {}}; }
  static AggregationStrategy veto(double theta, std::vector<VetoRule> rules) {
    return {StrategyKind::veto, theta, std::move(rules), {}};
  }

  double theta_for(const IndividualId& id) const;
  /// Throws ConfigError on a threshold outside [0,1).
  void validate() const;

  friend bool operator==(const AggregationStrategy&, const AggregationStrategy&) = default;
};

/// Scores are binarized at 0.5 (strictly greater is positive).
Label binarize(const Outcome& outcome) noexcept;

/// 1 iff the mean binarized recommendation over the cluster is strictly above theta.
Label aggregate_set_recommendation(const PerceivedCluster& cluster,
                                   const RecommendationVector& recs,
                                   double theta);

/// 1 iff the mean set recommendation over every cluster containing `i` is
/// strictly above theta.
Label aggregate_individual_decision(const IndividualId& i,
                                    const ClusterFamily& family,
                                    const SetRecommendationVector& set_recs,
                                    double theta);

/// T(r_x, majority of S_x): 1.0 when x agrees with their own cluster, else 0.0.
double trust_weight(const IndividualId& x,
                    const ClusterFamily& family,
                    const RecommendationVector& recs,
                    double theta);

/// Favors the bad outcome: negative if any input is negative.
/// Throws PreconditionError on an empty input.
Label resolve_pessimistic(std::span<const Label> conflicting);

/// Forces the decision to negative when any rule matches and targets the decided label.
Label apply_veto(const IndividualId& i,
                 Label decision,
                 std::span<const VetoRule> rules,
                 const Population& pop);

/// Throws ConfigError when a rule names an attribute key absent from the population.
void validate_veto_rules(std::span<const VetoRule> rules, const Population& pop);

struct PipelineResult {
  SetRecommendationVector set_recs;
  DecisionVector decisions;
};

PipelineResult run_pipeline(const Population& pop,
                            const ClusterFamily& family,
                            const RecommendationVector& recs,
                            const AggregationStrategy& strategy);

}  // namespace subjfair
