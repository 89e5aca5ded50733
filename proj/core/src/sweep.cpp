#include "subjfair/sweep.hpp"

#include <fmt/format.h>

#include "subjfair/explanations.hpp"
#include "subjfair/report.hpp"

namespace subjfair {

const std::vector<std::string>& sweep_metrics() {
  static const std::vector<std::string> names{
      "sf_fair",      "dissenters",  "isf_fair",     "relaxed_fair",         "isf_satisfied",
      "relaxed_only", "neither",     "no_conflict",  "justifiable_by_group", "system_suspect",
      "obligations",  "positive_rate"};
  return names;
}

namespace {

std::vector<double> cell_metrics(const AuditRunFile& run) {
  const AuditReport report = audit_run(run);
  const auto obligations = derive_obligations(report);
  double isf_fair = 0, relaxed_fair = 0, positives = 0;
  double scenario[3] = {0, 0, 0};
  double conflict[3] = {0, 0, 0};
  for (const auto& v : report.individuals) {
    isf_fair += v.isf == Verdict::fair;
    relaxed_fair += v.relaxed_isf == Verdict::fair;
    scenario[static_cast<int>(v.scenario)] += 1;
    conflict[static_cast<int>(v.conflict)] += 1;
    positives += report.decisions.at(v.individual) == Label::positive;
  }
  const double n = static_cast<double>(report.individuals.size());
  return {report.sf.verdict == Verdict::fair ? 1.0 : 0.0,
          static_cast<double>(report.sf.dissenters.size()),
          isf_fair,
          relaxed_fair,
          scenario[0],
          scenario[1],
          scenario[2],
          conflict[0],
          conflict[1],
          conflict[2],
          static_cast<double>(obligations.size()),
          positives / n};
}

}  // namespace

std::vector<SweepRow> sweep(const AuditRunFile& base, const SweepGrid& grid) {
  std::vector<SweepRow> rows;
  const auto& names = sweep_metrics();
  for (double delta : grid.deltas) {
    for (double epsilon : grid.epsilons) {
      for (double theta : grid.thetas) {
        AuditRunFile cell = base;
        cell.params = {delta, epsilon, theta};
        const auto values = cell_metrics(cell);
        for (std::size_t m = 0; m < names.size(); ++m) rows.push_back({delta, epsilon, theta, names[m], values[m]});
      }
    }
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "delta,epsilon,theta,metric,value\n";
  for (const auto& r : rows) out += fmt::format("{},{},{},{},{}\n", r.delta, r.epsilon, r.theta, r.metric, r.value);
  return out;
}

}  // namespace subjfair
