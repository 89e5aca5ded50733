#pragma once

// Brute-force re-derivation of an audit by exhaustive loops over plain
// index arrays. Shares no code path with the engine beyond reading the run
// file, and is used to cross-check engine reports field by field.

#include <map>
#include <string>
#include <vector>

#include "subjfair/audit.hpp"
#include "subjfair/run_file.hpp"

namespace subjfair {

inline constexpr std::size_t kOracleDefaultMaxN = 10;

/// Field-comparable digest of an audit, keyed by id strings.
struct AuditSnapshot {
  std::map<std::string, std::vector<std::string>> clusters;
  std::map<std::string, int> set_recs;
  std::map<std::string, int> decisions;
  std::map<std::string, std::string> isf;
  std::map<std::string, std::string> relaxed_isf;
  std::map<std::string, double> satisfaction_ratio;
  std::map<std::string, std::string> scenario;
  std::map<std::string, std::string> conflict;
  std::string sf;
  std::vector<std::string> dissenters;

  friend bool operator==(const AuditSnapshot&, const AuditSnapshot&) = default;
};

AuditSnapshot snapshot_of(const AuditReport& report);

/// One human-readable line per differing field; empty when identical.
std::vector<std::string> compare_snapshots(const AuditSnapshot& engine, const AuditSnapshot& oracle);

/// Refuses (PreconditionError) populations larger than `max_n` and strategies
/// other than plain majority without per-individual overrides.
AuditSnapshot brute_force_oracle(const AuditRunFile& run, std::size_t max_n = kOracleDefaultMaxN);

}  // namespace subjfair
