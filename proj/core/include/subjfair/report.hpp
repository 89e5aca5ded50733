#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "subjfair/audit.hpp"
#include "subjfair/baselines.hpp"
#include "subjfair/explanations.hpp"
#include "subjfair/run_file.hpp"

namespace subjfair {

enum class ReportFormat { text, json };

std::optional<ReportFormat> parse_report_format(std::string_view text);

struct BaselineReport {
  std::size_t pairs_checked = 0;
  std::vector<PairViolation> dwork;
  std::vector<ObserverViolation> subjective;
  std::optional<std::string> group_attribute;
  std::optional<ParityResult> parity;
};

/// IF checks need the run's baseline section; parity needs a group attribute
/// (argument first, then the baseline section). Throws InputError when neither
/// is available.
BaselineReport run_baselines(const AuditRunFile& run,
                             const DecisionVector& decisions,
                             const std::optional<std::string>& group_attribute = std::nullopt);

struct ReportOptions {
  bool include_baseline = false;
  std::optional<std::string> group_attribute;
};

struct ReportDocument {
  AuditReport audit;
  std::vector<ExplanationObligation> obligations;
  ExplanationVerdict explanation_verdict = ExplanationVerdict::pending;
  ProceduralReport procedural;
  std::optional<BaselineReport> baseline;
  RunMetadata meta;
};

AuditReport audit_run(const AuditRunFile& run);

ReportDocument build_report(const AuditRunFile& run, const ReportOptions& options = {});

/// Full report: verdict counts, dissenters, histograms, obligations, and
/// baselines when present. Ordering is by individual id throughout.
std::string emit_report(const ReportDocument& doc, ReportFormat format);

/// Per-individual verdicts, scenarios and the process-level verdict.
std::string emit_audit(const AuditReport& report, ReportFormat format);

/// Set recommendations and decisions only.
std::string emit_decisions(const AuditReport& report, ReportFormat format);

std::string emit_baseline(const BaselineReport& report, ReportFormat format);

std::string emit_validation(const ValidationReport& report, ReportFormat format);

}  // namespace subjfair
