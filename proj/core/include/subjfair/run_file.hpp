#pragma once

// Self-contained audit run documents (JSON). The schema is described in
// docs/run-file.md; field names follow the usual symbols (sim, rec, delta,
// epsilon, theta).

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "subjfair/aggregation.hpp"
#include "subjfair/baselines.hpp"
#include "subjfair/explanations.hpp"
#include "subjfair/model.hpp"

namespace subjfair {

inline constexpr std::string_view kRunSchema = "subjfair-run/1";

/// Malformed document or schema violation. `location` is a JSON pointer, or
/// "line L, column C" for syntax errors.
class RunFileError : public Error {
 public:
  RunFileError(std::string location, const std::string& message)
      : Error(location + ": " + message), location_(std::move(location)) {}

  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

struct BaselineInputs {
  ScoreMapping scores;
  ObjectiveDistanceTable distances;
  /// Empty means every pair with an objective distance.
  std::vector<IdPair> pairs;
  std::optional<std::string> group_attribute;

  friend bool operator==(const BaselineInputs&, const BaselineInputs&) = default;
};

struct RunMetadata {
  std::optional<std::uint64_t> seed;
  std::string timestamp;
  std::string engine_version;

  friend bool operator==(const RunMetadata&, const RunMetadata&) = default;
};

struct AuditRunFile {
  Purpose purpose;
  Population population;
  PerceptionTable perceptions;
  RecommendationVector recommendations;
  AuditParams params;
  /// strategy.theta mirrors params.theta; only the kind, vetoes and overrides are stored.
  AggregationStrategy strategy;
  std::optional<bool> ethicality_asserted;
  AcceptanceLedger ledger;
  std::optional<BaselineInputs> baseline;
  RunMetadata meta;
};

/// Schema-level parse only; invariants are not checked. Throws RunFileError.
AuditRunFile parse_run(std::string_view text);

/// Canonical JSON form (2-space indent, keys sorted, trailing newline).
std::string serialize_run(const AuditRunFile& run);

/// Validation of everything a run needs before it can be audited: population
/// invariants, parameter ranges, and veto rules.
ValidationReport validate_run(const AuditRunFile& run);

/// Reads, parses and validates. Throws RunFileError, ValidationError or InputError.
AuditRunFile load_run(const std::filesystem::path& path);

/// Throws InputError when the file cannot be written.
void save_run(const AuditRunFile& run, const std::filesystem::path& path);

}  // namespace subjfair
