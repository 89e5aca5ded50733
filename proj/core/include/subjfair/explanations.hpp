#pragma once

// Explanation obligations owed to individuals whose treatment conflicts with
// their perceived cluster, and the acceptance ledger that decides whether the
// process is fair once every obligation has been answered.

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <vector>

#include "subjfair/audit.hpp"

namespace subjfair {

enum class ObligationKind {
  system_recommendation,  // justify r_x causally
  aggregation_method,     // justify how r_{S_x} was aggregated
  group_identification,   // reasons x differs from the group they claimed
  system_error_review,    // the pipeline output itself looks wrong
};

enum class ProceduralTag { consistency, accuracy, ethicality };

std::string_view to_string(ObligationKind k);
std::optional<ObligationKind> parse_obligation_kind(std::string_view text);
std::string_view to_string(ProceduralTag t);

struct ObligationKey {
  IndividualId individual;
  ObligationKind kind = ObligationKind::system_recommendation;

  friend auto operator<=>(const ObligationKey&, const ObligationKey&) = default;
  friend bool operator==(const ObligationKey&, const ObligationKey&) = default;
};

struct ExplanationObligation {
  IndividualId individual;
  ObligationKind kind = ObligationKind::system_recommendation;
  std::set<ProceduralTag> procedural_tags;

  ObligationKey key() const { return {individual, kind}; }

  friend bool operator==(const ExplanationObligation&, const ExplanationObligation&) = default;
};

/// Fixed procedural tags attached to each obligation kind.
std::set<ProceduralTag> tags_for(ObligationKind kind);

/// Ordered by individual id, then by obligation kind.
std::vector<ExplanationObligation> derive_obligations(const AuditReport& report);

enum class AcceptanceState { accepted, rejected, pending };

std::string_view to_string(AcceptanceState s);
std::optional<AcceptanceState> parse_acceptance_state(std::string_view text);

/// Response history per obligation, one entry per explanation round.
/// Later entries supersede earlier ones.
class AcceptanceLedger {
 public:
  using History = std::vector<AcceptanceState>;

  void record(const ObligationKey& key, AcceptanceState state) { entries_[key].push_back(state); }
  const std::map<ObligationKey, History>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }

  friend bool operator==(const AcceptanceLedger&, const AcceptanceLedger&) = default;

 private:
  std::map<ObligationKey, History> entries_;
};

enum class ExplanationVerdict { fair, unfair, pending };

std::string_view to_string(ExplanationVerdict v);

/// Fair when every obligation's latest response is an acceptance (vacuously
/// fair with no obligations). Unfair when some obligation has a rejection not
/// followed by an acceptance. Pending otherwise, including obligations with no
/// response yet. Throws IntegrityError on ledger entries for unknown obligations.
ExplanationVerdict fairness_through_explanations(std::span<const ExplanationObligation> obligations,
                                                 const AcceptanceLedger& ledger);

/// Run metadata inspected by the procedural check.
struct RunConfig {
  AuditParams params;
  AggregationStrategy strategy;
  ValidationReport validation;
  std::optional<bool> ethicality_asserted;
};

struct ProceduralReport {
  bool consistency = false;
  bool accuracy = false;
  /// Echoed from the operator; never computed.
  std::optional<bool> ethicality;

  std::set<ProceduralTag> satisfied() const;
  static constexpr std::string_view ethicality_provenance = "asserted";
};

ProceduralReport procedural_check(const RunConfig& config);

}  // namespace subjfair
