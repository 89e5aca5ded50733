#include "subjfair/audit.hpp"

namespace subjfair {

std::string_view to_string(Verdict v) { return v == Verdict::fair ? "fair" : "unfair"; }

std::string_view to_string(ScenarioClass s) {
  switch (s) {
    case ScenarioClass::isf_satisfied: return "ISF_SATISFIED";
    case ScenarioClass::relaxed_only: return "RELAXED_ONLY";
    case ScenarioClass::neither: return "NEITHER";
  }
  return "NEITHER";
}

std::string_view to_string(ConflictClass c) {
  switch (c) {
    case ConflictClass::no_conflict: return "NO_CONFLICT";
    case ConflictClass::justifiable_by_group: return "JUSTIFIABLE_BY_GROUP";
    case ConflictClass::system_suspect: return "SYSTEM_SUSPECT";
  }
  return "NO_CONFLICT";
}

namespace {

// T between x's own recommendation and an aggregated label.
double similarity_to_label(const Outcome& own, Label aggregated) {
  return treatment_similarity(own, outcome_in(aggregated, own.kind()));
}

}  // namespace

Verdict isf(const IndividualId& x,
            const ClusterFamily& family,
            const RecommendationVector& recs,
            double epsilon) {
  const Outcome& own = recs.at(x);
  for (const auto& y : family.cluster_of(x).members) {
    if (!(treatment_similarity(own, recs.at(y)) > epsilon)) return Verdict::unfair;
  }
  return Verdict::fair;
}

double satisfaction_ratio(const IndividualId& x,
                          const ClusterFamily& family,
                          const RecommendationVector& recs,
                          double epsilon) {
  const Outcome& own = recs.at(x);
  const auto& members = family.cluster_of(x).members;
  std::size_t satisfied = 0;
  for (const auto& y : members) {
    if (treatment_similarity(own, recs.at(y)) > epsilon) ++satisfied;
  }
  return static_cast<double>(satisfied) / static_cast<double>(members.size());
}

Verdict relaxed_isf(const IndividualId& x,
                    const ClusterFamily& family,
                    const RecommendationVector& recs,
                    double epsilon,
                    double theta) {
  const Label agg = aggregate_set_recommendation(family.cluster_of(x), recs, theta);
  return similarity_to_label(recs.at(x), agg) > epsilon ? Verdict::fair : Verdict::unfair;
}

SfResult sf_process(const Population& pop,
                    const ClusterFamily& family,
                    const RecommendationVector& recs,
                    const AuditParams& params) {
  SfResult result;
  for (const auto& x : pop.individuals) {
    if (isf(x, family, recs, params.epsilon) == Verdict::unfair) result.dissenters.insert(x);
  }
  result.verdict = result.dissenters.empty() ? Verdict::fair : Verdict::unfair;
  return result;
}

ScenarioClass classify_scenario(const IndividualId& x,
                                const ClusterFamily& family,
                                const RecommendationVector& recs,
                                const SetRecommendationVector& set_recs,
                                const AuditParams& params) {
  const Outcome& own = recs.at(x);
  if (!(similarity_to_label(own, set_recs.at(x)) > params.epsilon)) return ScenarioClass::neither;
  for (const auto& y : family.cluster_of(x).members) {
    if (!(treatment_similarity(recs.at(y), own) > params.epsilon)) return ScenarioClass::relaxed_only;
  }
  return ScenarioClass::isf_satisfied;
}

ConflictClass classify_conflict(const IndividualId& x,
                                const RecommendationVector& recs,
                                const SetRecommendationVector& set_recs,
                                const DecisionVector& decisions,
                                double epsilon) {
  const Outcome& own = recs.at(x);
  if (similarity_to_label(own, set_recs.at(x)) > epsilon) return ConflictClass::no_conflict;
  if (similarity_to_label(own, decisions.at(x)) > epsilon) return ConflictClass::justifiable_by_group;
  return ConflictClass::system_suspect;
}

AuditReport run_audit(const Population& pop,
                      const PerceptionTable& perceptions,
                      const RecommendationVector& recs,
                      const AuditParams& params,
                      const AggregationStrategy& strategy) {
  params.validate();
  AuditReport report;
  report.validation = validate_population(pop, perceptions, recs);
  if (!report.validation.ok()) throw ValidationError(report.validation);

  report.purpose = recs.purpose;
  report.params = params;
  report.strategy = strategy;
  report.outcome_kind = recs.kind().value_or(OutcomeKind::label);
  report.recommendations = recs;
  report.family = build_cluster_family(pop, perceptions, params.delta);

  auto pipeline = run_pipeline(pop, report.family, recs, strategy);
  report.set_recs = std::move(pipeline.set_recs);
  report.decisions = std::move(pipeline.decisions);
  report.sf = sf_process(pop, report.family, recs, params);

  // Clusters are keyed by id, so iterating them yields id order.
  for (const auto& [x, cluster] : report.family.clusters) {
    FairnessVerdict v;
    v.individual = x;
    v.isf = report.sf.dissenters.count(x) ? Verdict::unfair : Verdict::fair;
    v.relaxed_isf = relaxed_isf(x, report.family, recs, params.epsilon, params.theta);
    v.satisfaction_ratio = satisfaction_ratio(x, report.family, recs, params.epsilon);
    v.scenario = classify_scenario(x, report.family, recs, report.set_recs, params);
    v.conflict = classify_conflict(x, recs, report.set_recs, report.decisions, params.epsilon);
    report.individuals.push_back(std::move(v));
  }
  return report;
}

}  // namespace subjfair
