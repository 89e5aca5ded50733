#include "subjfair/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace subjfair {

AuditSnapshot snapshot_of(const AuditReport& report) {
  AuditSnapshot s;
  for (const auto& [owner, cluster] : report.family.clusters) {
    auto& members = s.clusters[owner.str()];
    for (const auto& m : cluster.members) members.push_back(m.str());
  }
  for (const auto& [owner, label] : report.set_recs.values) s.set_recs[owner.str()] = to_int(label);
  for (const auto& [id, label] : report.decisions.values) s.decisions[id.str()] = to_int(label);
  for (const auto& v : report.individuals) {
    const auto& id = v.individual.str();
    s.isf[id] = std::string(to_string(v.isf));
    s.relaxed_isf[id] = std::string(to_string(v.relaxed_isf));
    s.satisfaction_ratio[id] = v.satisfaction_ratio;
    s.scenario[id] = std::string(to_string(v.scenario));
    s.conflict[id] = std::string(to_string(v.conflict));
  }
  s.sf = std::string(to_string(report.sf.verdict));
  for (const auto& d : report.sf.dissenters) s.dissenters.push_back(d.str());
  return s;
}

namespace {

template <typename V>
std::string show(const V& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string show(const std::vector<std::string>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
  return out + "}";
}

template <typename V>
void diff_maps(const std::string& field,
               const std::map<std::string, V>& a,
               const std::map<std::string, V>& b,
               std::vector<std::string>& out) {
  std::vector<std::string> keys;
  for (const auto& [k, v] : a) keys.push_back(k);
  for (const auto& [k, v] : b) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  for (const auto& k : keys) {
    auto ia = a.find(k);
    auto ib = b.find(k);
    if (ia == a.end() || ib == b.end()) {
      out.push_back(field + "[" + k + "]: present on one side only");
    } else if (!(ia->second == ib->second)) {
      out.push_back(field + "[" + k + "]: engine " + show(ia->second) + " vs oracle " + show(ib->second));
    }
  }
}

}  // namespace

std::vector<std::string> compare_snapshots(const AuditSnapshot& engine, const AuditSnapshot& oracle) {
  std::vector<std::string> out;
  diff_maps("clusters", engine.clusters, oracle.clusters, out);
  diff_maps("set_recs", engine.set_recs, oracle.set_recs, out);
  diff_maps("decisions", engine.decisions, oracle.decisions, out);
  diff_maps("isf", engine.isf, oracle.isf, out);
  diff_maps("relaxed_isf", engine.relaxed_isf, oracle.relaxed_isf, out);
  diff_maps("satisfaction_ratio", engine.satisfaction_ratio, oracle.satisfaction_ratio, out);
  diff_maps("scenario", engine.scenario, oracle.scenario, out);
  diff_maps("conflict", engine.conflict, oracle.conflict, out);
  if (engine.sf != oracle.sf) out.push_back("sf: engine " + engine.sf + " vs oracle " + oracle.sf);
  if (engine.dissenters != oracle.dissenters) {
    out.push_back("dissenters: engine " + show(engine.dissenters) + " vs oracle " + show(oracle.dissenters));
  }
  return out;
}

AuditSnapshot brute_force_oracle(const AuditRunFile& run, std::size_t max_n) {
  const std::size_t n = run.population.individuals.size();
  if (n > max_n) {
    throw PreconditionError("oracle refuses n = " + std::to_string(n) + " (bound " + std::to_string(max_n) + ")");
  }
  if (run.strategy.kind != StrategyKind::majority || !run.strategy.theta_overrides.empty()) {
    throw PreconditionError("oracle only re-derives the plain majority strategy");
  }

  const double delta = run.params.delta;
  const double eps = run.params.epsilon;
  const double theta = run.params.theta;

  std::vector<std::string> id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = run.population.individuals[i].str();

  // sim[i][j]: i's perceived similarity to j, 0 when absent.
  std::vector<std::vector<double>> sim(n, std::vector<double>(n, 0.0));
  for (const auto& [observer, row] : run.perceptions.rows()) {
    for (const auto& [target, value] : row) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (id[i] == observer.str() && id[j] == target.str()) sim[i][j] = value;
        }
      }
    }
  }

  bool scores = false;
  std::vector<double> r(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [who, outcome] : run.recommendations.values) {
      if (who.str() == id[i]) {
        r[i] = outcome.value();
        scores = outcome.kind() == OutcomeKind::score;
      }
    }
  }
  std::vector<int> b(n, 0);
  for (std::size_t i = 0; i < n; ++i) b[i] = scores ? (r[i] > 0.5 ? 1 : 0) : (r[i] != 0.0 ? 1 : 0);

  auto T = [&](double u, double v) {
    if (!scores) return u == v ? 1.0 : 0.0;
    return 1.0 - std::fabs(u - v);
  };

  // in[i][j]: j belongs to S_i.
  std::vector<std::vector<bool>> in(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) in[i][j] = sim[i][j] >= delta;
  }

  std::vector<int> r_set(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    double size = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (in[i][j]) {
        sum += b[j];
        size += 1.0;
      }
    }
    r_set[i] = (sum / size > theta) ? 1 : 0;
  }

  std::vector<int> d(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    double count = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (in[k][i]) {
        sum += r_set[k];
        count += 1.0;
      }
    }
    d[i] = (sum / count > theta) ? 1 : 0;
  }

  AuditSnapshot s;
  bool everyone_fair = true;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> members;
    bool all_similar = true;
    std::size_t satisfied = 0;
    std::size_t size = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!in[i][j]) continue;
      members.push_back(id[j]);
      ++size;
      if (T(r[i], r[j]) > eps) {
        ++satisfied;
      } else {
        all_similar = false;
      }
    }
    std::sort(members.begin(), members.end());
    s.clusters[id[i]] = members;
    s.set_recs[id[i]] = r_set[i];
    s.decisions[id[i]] = d[i];
    s.isf[id[i]] = all_similar ? "fair" : "unfair";
    s.satisfaction_ratio[id[i]] = static_cast<double>(satisfied) / static_cast<double>(size);
    if (!all_similar) {
      everyone_fair = false;
      s.dissenters.push_back(id[i]);
    }

    const bool close_to_set = T(r[i], r_set[i]) > eps;
    s.relaxed_isf[id[i]] = close_to_set ? "fair" : "unfair";

    bool every_y_close = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (in[i][j] && !(T(r[j], r[i]) > eps)) every_y_close = false;
    }
    if (close_to_set && every_y_close) {
      s.scenario[id[i]] = "ISF_SATISFIED";
    } else if (close_to_set) {
      s.scenario[id[i]] = "RELAXED_ONLY";
    } else {
      s.scenario[id[i]] = "NEITHER";
    }

    if (close_to_set) {
      s.conflict[id[i]] = "NO_CONFLICT";
    } else if (T(r[i], d[i]) > eps) {
      s.conflict[id[i]] = "JUSTIFIABLE_BY_GROUP";
    } else {
      s.conflict[id[i]] = "SYSTEM_SUSPECT";
    }
  }
  std::sort(s.dissenters.begin(), s.dissenters.end());
  s.sf = everyone_fair ? "fair" : "unfair";
  return s;
}

}  // namespace subjfair
