#include "subjfair/explanations.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace subjfair {

namespace {

constexpr std::array<std::pair<ObligationKind, std::string_view>, 4> kObligationNames{{
    {ObligationKind::system_recommendation, "SYSTEM_RECOMMENDATION"},
    {ObligationKind::aggregation_method, "AGGREGATION_METHOD"},
    {ObligationKind::group_identification, "GROUP_IDENTIFICATION"},
    {ObligationKind::system_error_review, "SYSTEM_ERROR_REVIEW"},
}};

constexpr std::array<std::pair<AcceptanceState, std::string_view>, 3> kStateNames{{
    {AcceptanceState::accepted, "accepted"},
    {AcceptanceState::rejected, "rejected"},
    {AcceptanceState::pending, "pending"},
}};

}  // namespace

std::string_view to_string(ObligationKind k) {
  for (const auto& [kind, name] : kObligationNames) {
    if (kind == k) return name;
  }
  return "SYSTEM_RECOMMENDATION";
}

std::optional<ObligationKind> parse_obligation_kind(std::string_view text) {
  for (const auto& [kind, name] : kObligationNames) {
    if (name == text) return kind;
  }
  return std::nullopt;
}

std::string_view to_string(ProceduralTag t) {
  switch (t) {
    case ProceduralTag::consistency: return "consistency";
    case ProceduralTag::accuracy: return "accuracy";
    case ProceduralTag::ethicality: return "ethicality";
  }
  return "consistency";
}

std::string_view to_string(AcceptanceState s) {
  for (const auto& [state, name] : kStateNames) {
    if (state == s) return name;
  }
  return "pending";
}

std::optional<AcceptanceState> parse_acceptance_state(std::string_view text) {
  for (const auto& [state, name] : kStateNames) {
    if (name == text) return state;
  }
  return std::nullopt;
}

std::string_view to_string(ExplanationVerdict v) {
  switch (v) {
    case ExplanationVerdict::fair: return "fair";
    case ExplanationVerdict::unfair: return "unfair";
    case ExplanationVerdict::pending: return "pending";
  }
  return "pending";
}

std::set<ProceduralTag> tags_for(ObligationKind kind) {
  switch (kind) {
    case ObligationKind::system_recommendation: return {ProceduralTag::accuracy};
    case ObligationKind::aggregation_method: return {ProceduralTag::consistency, ProceduralTag::ethicality};
    case ObligationKind::group_identification: return {ProceduralTag::consistency};
    case ObligationKind::system_error_review: return {ProceduralTag::accuracy};
  }
  return {};
}

std::vector<ExplanationObligation> derive_obligations(const AuditReport& report) {
  std::vector<ExplanationObligation> out;
  auto issue = [&](const IndividualId& id, ObligationKind kind) {
    out.push_back({id, kind, tags_for(kind)});
  };
  for (const auto& v : report.individuals) {
    if (v.scenario != ScenarioClass::isf_satisfied) {
      issue(v.individual, ObligationKind::system_recommendation);
      issue(v.individual, ObligationKind::aggregation_method);
    }
    if (v.conflict == ConflictClass::justifiable_by_group) {
      issue(v.individual, ObligationKind::group_identification);
    } else if (v.conflict == ConflictClass::system_suspect) {
      issue(v.individual, ObligationKind::system_error_review);
    }
  }
  return out;
}

ExplanationVerdict fairness_through_explanations(std::span<const ExplanationObligation> obligations,
                                                 const AcceptanceLedger& ledger) {
  std::set<ObligationKey> issued;
  for (const auto& o : obligations) issued.insert(o.key());
  for (const auto& [key, history] : ledger.entries()) {
    if (!issued.count(key)) {
      throw IntegrityError("ledger entry for " + key.individual.str() + "/" + std::string(to_string(key.kind)) +
                           " has no matching obligation");
    }
  }

  bool all_accepted = true;
  bool any_rejected = false;
  for (const auto& key : issued) {
    auto it = ledger.entries().find(key);
    if (it == ledger.entries().end() || it->second.empty()) {
      all_accepted = false;
      continue;
    }
    const auto& history = it->second;
    if (history.back() != AcceptanceState::accepted) all_accepted = false;

    auto last_reject = std::find(history.rbegin(), history.rend(), AcceptanceState::rejected);
    if (last_reject != history.rend()) {
      bool superseded = std::find(history.rbegin(), last_reject, AcceptanceState::accepted) != last_reject;
      if (!superseded) any_rejected = true;
    }
  }
  if (any_rejected) return ExplanationVerdict::unfair;
  return all_accepted ? ExplanationVerdict::fair : ExplanationVerdict::pending;
}

std::set<ProceduralTag> ProceduralReport::satisfied() const {
  std::set<ProceduralTag> tags;
  if (consistency) tags.insert(ProceduralTag::consistency);
  if (accuracy) tags.insert(ProceduralTag::accuracy);
  if (ethicality.value_or(false)) tags.insert(ProceduralTag::ethicality);
  return tags;
}

ProceduralReport procedural_check(const RunConfig& config) {
  ProceduralReport report;
  const bool uniform_theta = config.strategy.kind == StrategyKind::pessimistic ||
                             config.strategy.theta == config.params.theta;
  report.consistency = config.strategy.theta_overrides.empty() && uniform_theta;
  report.accuracy = config.validation.ok();
  report.ethicality = config.ethicality_asserted;
  return report;
}

}  // namespace subjfair
