#pragma once

// Individual and process-level subjective fairness verdicts, plus the
// scenario and conflict taxonomies that drive explanation obligations.
//
// Comparisons between a recommendation and an aggregated label (r_{S_x},
// d_x) lift the label into the recommendation's outcome kind, so score
// recommendations are compared against 0.0 / 1.0.

#include <set>
#include <string_view>
#include <vector>

#include "subjfair/aggregation.hpp"
#include "subjfair/clustering.hpp"
#include "subjfair/model.hpp"

namespace subjfair {

enum class Verdict { fair, unfair };

enum class ScenarioClass { isf_satisfied, relaxed_only, neither };

enum class ConflictClass { no_conflict, justifiable_by_group, system_suspect };

std::string_view to_string(Verdict v);
std::string_view to_string(ScenarioClass s);
std::string_view to_string(ConflictClass c);

/// Fair iff every y in S_x satisfies T(r_x, r_y) > epsilon.
Verdict isf(const IndividualId& x,
            const ClusterFamily& family,
            const RecommendationVector& recs,
            double epsilon);

/// Fraction of S_x whose treatment is epsilon-similar to x's. Reported only.
double satisfaction_ratio(const IndividualId& x,
                          const ClusterFamily& family,
                          const RecommendationVector& recs,
                          double epsilon);

/// Fair iff T(r_x, majority label of S_x at theta) > epsilon.
Verdict relaxed_isf(const IndividualId& x,
                    const ClusterFamily& family,
                    const RecommendationVector& recs,
                    double epsilon,
                    double theta);

struct SfResult {
  Verdict verdict = Verdict::fair;
  std::set<IndividualId> dissenters;
};

/// The process is fair iff every individual is ISF-fair; dissenters are the rest.
SfResult sf_process(const Population& pop,
                    const ClusterFamily& family,
                    const RecommendationVector& recs,
                    const AuditParams& params);

ScenarioClass classify_scenario(const IndividualId& x,
                                const ClusterFamily& family,
                                const RecommendationVector& recs,
                                const SetRecommendationVector& set_recs,
                                const AuditParams& params);

ConflictClass classify_conflict(const IndividualId& x,
                                const RecommendationVector& recs,
                                const SetRecommendationVector& set_recs,
                                const DecisionVector& decisions,
                                double epsilon);

struct FairnessVerdict {
  IndividualId individual;
  Verdict isf = Verdict::fair;
  Verdict relaxed_isf = Verdict::fair;
  double satisfaction_ratio = 1.0;
  ScenarioClass scenario = ScenarioClass::isf_satisfied;
  ConflictClass conflict = ConflictClass::no_conflict;
};

struct AuditReport {
  Purpose purpose;
  AuditParams params;
  AggregationStrategy strategy;
  OutcomeKind outcome_kind = OutcomeKind::label;
  ValidationReport validation;
  ClusterFamily family;
  RecommendationVector recommendations;
  SetRecommendationVector set_recs;
  DecisionVector decisions;
  /// Ordered by individual id.
  std::vector<FairnessVerdict> individuals;
  SfResult sf;
};

/// Validates, clusters, runs the pipeline under `strategy`, and evaluates
/// every verdict. Relaxed ISF and scenarios use params.theta.
/// Throws ValidationError on invalid inputs, ConfigError on bad parameters.
AuditReport run_audit(const Population& pop,
                      const PerceptionTable& perceptions,
                      const RecommendationVector& recs,
                      const AuditParams& params,
                      const AggregationStrategy& strategy);

}  // namespace subjfair
