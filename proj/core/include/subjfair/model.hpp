#pragma once

// Domain types shared by every stage of the engine: individuals, the
// per-observer perception table, outcomes, and audit parameters.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "subjfair/error.hpp"

namespace subjfair {

/// Opaque token identifying one individual within a population.
class IndividualId {
 public:
  IndividualId() = default;
  explicit IndividualId(std::string value) : value_(std::move(value)) {}

  const std::string& str() const noexcept { return value_; }

  friend auto operator<=>(const IndividualId&, const IndividualId&) = default;
  friend bool operator==(const IndividualId&, const IndividualId&) = default;

 private:
  std::string value_;
};

namespace literals {
inline IndividualId operator""_id(const char* text, std::size_t len) {
  return IndividualId{std::string(text, len)};
}
}  // namespace literals

/// Names the issue under decision. One audit run concerns one purpose.
struct Purpose {
  std::string id;

  friend bool operator==(const Purpose&, const Purpose&) = default;
};

/// Objective features and group labels. Numbers and strings only.
using AttributeValue = std::variant<double, std::string>;
using AttributeMap = std::map<std::string, AttributeValue>;

std::string to_string(const AttributeValue& value);

struct Population {
  std::vector<IndividualId> individuals;
  std::map<IndividualId, AttributeMap> attributes;

  std::size_t size() const noexcept { return individuals.size(); }
  bool contains(const IndividualId& id) const;
  /// Attributes of `id`; empty map when none were supplied.
  const AttributeMap& attributes_of(const IndividualId& id) const;
};

/// How a perception table was obtained. Recorded for provenance only.
enum class Provenance { declared, fitted, sampled, dynamic };

std::string_view to_string(Provenance p);
std::optional<Provenance> parse_provenance(std::string_view text);

/// Non-symmetric subjective similarity: row `observer` holds the observer's
/// own similarity to every target. Absent entries read as 0.0.
class PerceptionTable {
 public:
  using Row = std::map<IndividualId, double>;

  PerceptionTable() = default;
  explicit PerceptionTable(Provenance provenance) : provenance_(provenance) {}

  void set(const IndividualId& observer, const IndividualId& target, double similarity);
  double similarity(const IndividualId& observer, const IndividualId& target) const;
  std::optional<double> entry(const IndividualId& observer, const IndividualId& target) const;

  const std::map<IndividualId, Row>& rows() const noexcept { return rows_; }
  Provenance provenance() const noexcept { return provenance_; }
  void set_provenance(Provenance p) noexcept { provenance_ = p; }

  friend bool operator==(const PerceptionTable&, const PerceptionTable&) = default;

 private:
  std::map<IndividualId, Row> rows_;
  Provenance provenance_ = Provenance::declared;
};

/// Binary outcome; `positive` (1) is the good outcome.
enum class Label : std::uint8_t { negative = 0, positive = 1 };

constexpr int to_int(Label l) noexcept { return static_cast<int>(l); }
constexpr Label label_of(bool positive) noexcept {
  return positive ? Label::positive : Label::negative;
}

enum class OutcomeKind { label, score };

std::string_view to_string(OutcomeKind kind);

/// A system output for one individual: either a binary label or a score in [0,1].
class Outcome {
 public:
  static Outcome of_label(Label l) noexcept { return Outcome(OutcomeKind::label, to_int(l)); }
  static Outcome of_score(double s) noexcept { return Outcome(OutcomeKind::score, s); }

  OutcomeKind kind() const noexcept { return kind_; }
  /// Throws KindMismatchError on a score.
  Label label() const;
  /// Raw numeric value: 0/1 for labels, the score otherwise.
  double value() const noexcept { return value_; }

  friend bool operator==(const Outcome&, const Outcome&) = default;

 private:
  Outcome(OutcomeKind kind, double value) : kind_(kind), value_(value) {}

  OutcomeKind kind_;
  double value_;
};

/// Lifts a binary label into the outcome space of `kind` (0.0/1.0 for scores).
Outcome outcome_in(Label l, OutcomeKind kind) noexcept;

/// Treatment similarity T. Labels: 1 when equal else 0. Scores: 1 - |a - b|.
double treatment_similarity(const Outcome& a, const Outcome& b);

struct RecommendationVector {
  Purpose purpose;
  std::map<IndividualId, Outcome> values;

  const Outcome& at(const IndividualId& id) const;
  /// Kind of the first value; nullopt when empty.
  std::optional<OutcomeKind> kind() const;
};

struct DecisionVector {
  Purpose purpose;
  std::map<IndividualId, Label> values;

  Label at(const IndividualId& id) const;
};

struct AuditParams {
  double delta = 0.5;    // cluster threshold, inclusive
  double epsilon = 0.0;  // treatment-similarity threshold, strict
  double theta = 0.5;    // majority threshold, strict

  /// Throws ConfigError when a parameter is outside its range.
  void validate() const;

  friend bool operator==(const AuditParams&, const AuditParams&) = default;
};

struct Violation {
  std::string location;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  std::string summary() const;
};

/// Raised when an operation requires validated inputs and receives invalid ones.
class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

/// Population and perception checks only (ids, ranges, self-similarity).
ValidationReport validate_perceptions(const Population& pop, const PerceptionTable& perceptions);

/// Every invariant of a run's inputs; an empty report means the inputs are usable.
ValidationReport validate_population(const Population& pop,
                                     const PerceptionTable& perceptions,
                                     const RecommendationVector& recs);

}  // namespace subjfair
