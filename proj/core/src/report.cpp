#include "subjfair/report.hpp"

#include <array>
#include <map>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace subjfair {

using nlohmann::json;

std::optional<ReportFormat> parse_report_format(std::string_view text) {
  if (text == "text") return ReportFormat::text;
  if (text == "json") return ReportFormat::json;
  return std::nullopt;
}

BaselineReport run_baselines(const AuditRunFile& run,
                             const DecisionVector& decisions,
                             const std::optional<std::string>& group_attribute) {
  BaselineReport out;
  out.group_attribute = group_attribute;
  if (!out.group_attribute && run.baseline) out.group_attribute = run.baseline->group_attribute;
  if (!run.baseline && !out.group_attribute) {
    throw InputError("baseline audit needs a 'baseline' section or a group attribute");
  }
  if (run.baseline) {
    const auto& b = *run.baseline;
    out.pairs_checked = resolve_pairs(b.pairs, b.distances).size();
    out.dwork = dwork_if_check(b.scores, b.distances, b.pairs);
    out.subjective = subjective_if_check(b.scores, b.distances, b.pairs);
  }
  if (out.group_attribute) out.parity = statistical_parity_gap(decisions, run.population, *out.group_attribute);
  return out;
}

AuditReport audit_run(const AuditRunFile& run) {
  AggregationStrategy strategy = run.strategy;
  strategy.theta = run.params.theta;
  if (strategy.kind == StrategyKind::veto) validate_veto_rules(strategy.vetoes, run.population);
  return run_audit(run.population, run.perceptions, run.recommendations, run.params, strategy);
}

ReportDocument build_report(const AuditRunFile& run, const ReportOptions& options) {
  ReportDocument doc;
  doc.audit = audit_run(run);
  doc.obligations = derive_obligations(doc.audit);
  doc.explanation_verdict = fairness_through_explanations(doc.obligations, run.ledger);
  doc.procedural = procedural_check({run.params, doc.audit.strategy, doc.audit.validation, run.ethicality_asserted});
  if (options.include_baseline) doc.baseline = run_baselines(run, doc.audit.decisions, options.group_attribute);
  doc.meta = run.meta;
  return doc;
}

namespace {

constexpr std::array kScenarios{ScenarioClass::isf_satisfied, ScenarioClass::relaxed_only, ScenarioClass::neither};
constexpr std::array kConflicts{ConflictClass::no_conflict, ConflictClass::justifiable_by_group,
                                ConflictClass::system_suspect};

constexpr std::string_view kReviewFlag = "ADMS recommendation requires review";

std::string outcome_text(const Outcome& o) {
  return o.kind() == OutcomeKind::label ? fmt::format("{}", to_int(o.label())) : fmt::format("{}", o.value());
}

json outcome_json(const Outcome& o) {
  if (o.kind() == OutcomeKind::label) return to_int(o.label());
  return o.value();
}

struct Counts {
  std::size_t isf_fair = 0;
  std::size_t relaxed_fair = 0;
  std::map<ScenarioClass, std::size_t> scenarios;
  std::map<ConflictClass, std::size_t> conflicts;
  std::vector<std::string> suspects;
};

Counts count(const AuditReport& report) {
  Counts c;
  for (auto s : kScenarios) c.scenarios[s] = 0;
  for (auto k : kConflicts) c.conflicts[k] = 0;
  for (const auto& v : report.individuals) {
    if (v.isf == Verdict::fair) ++c.isf_fair;
    if (v.relaxed_isf == Verdict::fair) ++c.relaxed_fair;
    ++c.scenarios[v.scenario];
    ++c.conflicts[v.conflict];
    if (v.conflict == ConflictClass::system_suspect) c.suspects.push_back(v.individual.str());
  }
  return c;
}

std::string join_ids(const std::vector<std::string>& ids) {
  return ids.empty() ? std::string("(none)") : fmt::format("{}", fmt::join(ids, ", "));
}

std::vector<std::string> dissenter_ids(const AuditReport& report) {
  std::vector<std::string> out;
  for (const auto& d : report.sf.dissenters) out.push_back(d.str());
  return out;
}

std::string strategy_text(const AggregationStrategy& s) {
  std::string text(to_string(s.kind));
  if (!s.vetoes.empty()) text += fmt::format(" ({} veto rules)", s.vetoes.size());
  if (!s.theta_overrides.empty()) text += fmt::format(" ({} theta overrides)", s.theta_overrides.size());
  return text;
}

void append_header(std::string& out, const AuditReport& report) {
  out += fmt::format("purpose: {}\n", report.purpose.id);
  out += fmt::format("params: delta={} epsilon={} theta={} strategy={}\n", report.params.delta,
                     report.params.epsilon, report.params.theta, strategy_text(report.strategy));
  out += fmt::format("population: {} ({} recommendations)\n", report.individuals.size(),
                     to_string(report.outcome_kind));
}

void append_histograms(std::string& out, const AuditReport& report, const Counts& c) {
  const auto n = report.individuals.size();
  out += fmt::format("ISF: {} fair, {} unfair\n", c.isf_fair, n - c.isf_fair);
  out += fmt::format("relaxed ISF: {} fair, {} unfair\n", c.relaxed_fair, n - c.relaxed_fair);
  out += "scenarios:";
  for (auto s : kScenarios) out += fmt::format(" {}={}", to_string(s), c.scenarios.at(s));
  out += "\nconflicts:";
  for (auto k : kConflicts) out += fmt::format(" {}={}", to_string(k), c.conflicts.at(k));
  out += "\n";
}

void append_individual_table(std::string& out, const AuditReport& report) {
  out += fmt::format("{:<10} {:>6} {:>4} {:>4} {:<7} {:<8} {:>6}  {:<14} {}\n", "id", "rec", "r_S", "dec", "isf",
                     "relaxed", "ratio", "scenario", "conflict");
  for (const auto& v : report.individuals) {
    out += fmt::format("{:<10} {:>6} {:>4} {:>4} {:<7} {:<8} {:>6.3f}  {:<14} {}\n", v.individual.str(),
                       outcome_text(report.recommendations.at(v.individual)),
                       to_int(report.set_recs.at(v.individual)), to_int(report.decisions.at(v.individual)),
                       to_string(v.isf), to_string(v.relaxed_isf), v.satisfaction_ratio, to_string(v.scenario),
                       to_string(v.conflict));
  }
}

std::string decisions_line(const DecisionVector& d) {
  std::vector<std::string> parts;
  for (const auto& [id, label] : d.values) parts.push_back(fmt::format("{}:{}", id.str(), to_int(label)));
  return fmt::format("{{{}}}", fmt::join(parts, ", "));
}

json audit_json(const AuditReport& report, const Counts& c) {
  json individuals = json::array();
  for (const auto& v : report.individuals) {
    json members = json::array();
    for (const auto& m : report.family.cluster_of(v.individual).members) members.push_back(m.str());
    individuals.push_back({{"id", v.individual.str()},
                           {"rec", outcome_json(report.recommendations.at(v.individual))},
                           {"cluster", std::move(members)},
                           {"rec_set", to_int(report.set_recs.at(v.individual))},
                           {"dec", to_int(report.decisions.at(v.individual))},
                           {"isf", to_string(v.isf)},
                           {"relaxed_isf", to_string(v.relaxed_isf)},
                           {"satisfaction_ratio", v.satisfaction_ratio},
                           {"scenario", to_string(v.scenario)},
                           {"conflict", to_string(v.conflict)}});
  }
  json scenarios = json::object();
  for (auto s : kScenarios) scenarios[std::string(to_string(s))] = c.scenarios.at(s);
  json conflicts = json::object();
  for (auto k : kConflicts) conflicts[std::string(to_string(k))] = c.conflicts.at(k);
  const auto n = report.individuals.size();
  return {{"purpose", report.purpose.id},
          {"params",
           {{"delta", report.params.delta}, {"epsilon", report.params.epsilon}, {"theta", report.params.theta}}},
          {"strategy", to_string(report.strategy.kind)},
          {"outcome_kind", to_string(report.outcome_kind)},
          {"sf", to_string(report.sf.verdict)},
          {"dissenters", dissenter_ids(report)},
          {"counts",
           {{"isf_fair", c.isf_fair},
            {"isf_unfair", n - c.isf_fair},
            {"relaxed_fair", c.relaxed_fair},
            {"relaxed_unfair", n - c.relaxed_fair}}},
          {"scenarios", std::move(scenarios)},
          {"conflicts", std::move(conflicts)},
          {"review_required", c.suspects},
          {"individuals", std::move(individuals)}};
}

json baseline_json(const BaselineReport& b) {
  json dwork = json::array();
  for (const auto& v : b.dwork) {
    dwork.push_back({{"a", v.pair.first().str()}, {"b", v.pair.second().str()}, {"gap", v.score_gap},
                     {"d", v.distance}});
  }
  json subjective = json::array();
  for (const auto& v : b.subjective) {
    subjective.push_back({{"observer", v.observer.str()}, {"a", v.pair.first().str()}, {"b", v.pair.second().str()},
                          {"gap", v.score_gap}, {"d", v.distance}});
  }
  json out{{"pairs_checked", b.pairs_checked}, {"dwork_violations", std::move(dwork)},
           {"subjective_violations", std::move(subjective)}};
  if (b.parity) {
    out["parity"] = {{"group_attr", *b.group_attribute}, {"positive_rate", b.parity->positive_rate},
                     {"gap", b.parity->gap}};
  }
  return out;
}

std::string baseline_text(const BaselineReport& b) {
  std::string out;
  out += fmt::format("individual fairness (objective distance): {} of {} pairs violate\n", b.dwork.size(),
                     b.pairs_checked);
  for (const auto& v : b.dwork) {
    out += fmt::format("  ({}, {}) |gap|={:.6g} > d={:.6g}\n", v.pair.first().str(), v.pair.second().str(), v.score_gap,
                       v.distance);
  }
  out += fmt::format("individual fairness (perceived distance): {} observer violations\n", b.subjective.size());
  for (const auto& v : b.subjective) {
    out += fmt::format("  {} on ({}, {}) |gap|={:.6g} > d={:.6g}\n", v.observer.str(), v.pair.first().str(),
                       v.pair.second().str(), v.score_gap, v.distance);
  }
  if (b.parity) {
    out += fmt::format("statistical parity on '{}': gap={}\n", *b.group_attribute, b.parity->gap);
    for (const auto& [group, rate] : b.parity->positive_rate) out += fmt::format("  {}: {}\n", group, rate);
  }
  return out;
}

std::string tag_list(const std::set<ProceduralTag>& tags) {
  std::vector<std::string_view> names;
  for (auto t : tags) names.push_back(to_string(t));
  return fmt::format("{}", fmt::join(names, ","));
}

std::string ethicality_text(const ProceduralReport& p) {
  if (!p.ethicality) return "not asserted";
  return fmt::format("{} ({})", *p.ethicality ? "yes" : "no", ProceduralReport::ethicality_provenance);
}

}  // namespace

std::string emit_audit(const AuditReport& report, ReportFormat format) {
  const Counts c = count(report);
  if (format == ReportFormat::json) return audit_json(report, c).dump(2) + "\n";

  std::string out;
  append_header(out, report);
  out += fmt::format("SF: {}\n", to_string(report.sf.verdict));
  out += fmt::format("dissenters: {}\n", join_ids(dissenter_ids(report)));
  append_histograms(out, report, c);
  append_individual_table(out, report);
  if (!c.suspects.empty()) out += fmt::format("{}: {}\n", kReviewFlag, join_ids(c.suspects));
  return out;
}

std::string emit_decisions(const AuditReport& report, ReportFormat format) {
  if (format == ReportFormat::json) {
    json set_recs = json::object();
    for (const auto& [owner, l] : report.set_recs.values) set_recs[owner.str()] = to_int(l);
    json dec = json::object();
    for (const auto& [id, l] : report.decisions.values) dec[id.str()] = to_int(l);
    return json{{"purpose", report.purpose.id},
                {"strategy", to_string(report.strategy.kind)},
                {"rec_set", std::move(set_recs)},
                {"dec", std::move(dec)}}
               .dump(2) +
           "\n";
  }
  std::string out;
  append_header(out, report);
  std::vector<std::string> parts;
  for (const auto& [owner, l] : report.set_recs.values) parts.push_back(fmt::format("S_{}:{}", owner.str(), to_int(l)));
  out += fmt::format("set recommendations: {{{}}}\n", fmt::join(parts, ", "));
  out += fmt::format("decisions: {}\n", decisions_line(report.decisions));
  return out;
}

std::string emit_baseline(const BaselineReport& report, ReportFormat format) {
  if (format == ReportFormat::json) return baseline_json(report).dump(2) + "\n";
  return baseline_text(report);
}

std::string emit_validation(const ValidationReport& report, ReportFormat format) {
  if (format == ReportFormat::json) {
    json violations = json::array();
    for (const auto& v : report.violations) violations.push_back({{"location", v.location}, {"message", v.message}});
    return json{{"ok", report.ok()}, {"violations", std::move(violations)}}.dump(2) + "\n";
  }
  if (report.ok()) return "valid\n";
  std::string out = fmt::format("{} violation(s)\n", report.violations.size());
  for (const auto& v : report.violations) out += fmt::format("  {}: {}\n", v.location, v.message);
  return out;
}

std::string emit_report(const ReportDocument& doc, ReportFormat format) {
  const AuditReport& audit = doc.audit;
  const Counts c = count(audit);

  if (format == ReportFormat::json) {
    json out = audit_json(audit, c);
    out["dec"] = json::object();
    for (const auto& [id, l] : audit.decisions.values) out["dec"][id.str()] = to_int(l);
    json obligations = json::array();
    for (const auto& o : doc.obligations) {
      json tags = json::array();
      for (auto t : o.procedural_tags) tags.push_back(to_string(t));
      obligations.push_back({{"id", o.individual.str()}, {"kind", to_string(o.kind)}, {"tags", std::move(tags)}});
    }
    out["obligations"] = std::move(obligations);
    out["explanations"] = to_string(doc.explanation_verdict);
    json procedural{{"consistency", doc.procedural.consistency}, {"accuracy", doc.procedural.accuracy}};
    if (doc.procedural.ethicality) {
      procedural["ethicality"] = {{"value", *doc.procedural.ethicality},
                                  {"provenance", ProceduralReport::ethicality_provenance}};
    }
    out["procedural"] = std::move(procedural);
    if (doc.baseline) out["baseline"] = baseline_json(*doc.baseline);
    json meta{{"engine_version", doc.meta.engine_version}, {"timestamp", doc.meta.timestamp}};
    if (doc.meta.seed) meta["seed"] = *doc.meta.seed;
    out["meta"] = std::move(meta);
    return out.dump(2) + "\n";
  }

  std::string out = "subjective fairness report\n";
  append_header(out, audit);
  if (!doc.meta.engine_version.empty()) out += fmt::format("engine: {}\n", doc.meta.engine_version);
  if (doc.meta.seed) out += fmt::format("seed: {}\n", *doc.meta.seed);
  out += "\n";
  out += fmt::format("SF: {}, {} obligations\n", to_string(audit.sf.verdict), doc.obligations.size());
  out += fmt::format("dissenters: {}\n", join_ids(dissenter_ids(audit)));
  append_histograms(out, audit, c);
  out += fmt::format("decisions: {}\n", decisions_line(audit.decisions));
  if (!c.suspects.empty()) out += fmt::format("{}: {}\n", kReviewFlag, join_ids(c.suspects));
  out += "\n";
  append_individual_table(out, audit);
  out += "\nobligations:\n";
  if (doc.obligations.empty()) out += "  (none)\n";
  for (const auto& o : doc.obligations) {
    out += fmt::format("  {:<10} {:<22} [{}]\n", o.individual.str(), to_string(o.kind), tag_list(o.procedural_tags));
  }
  out += fmt::format("explanations: {}\n", to_string(doc.explanation_verdict));
  out += fmt::format("procedural: consistency={} accuracy={} ethicality={}\n",
                     doc.procedural.consistency ? "yes" : "no", doc.procedural.accuracy ? "yes" : "no",
                     ethicality_text(doc.procedural));
  if (doc.baseline) out += "\n" + baseline_text(*doc.baseline);
  return out;
}

}  // namespace subjfair
