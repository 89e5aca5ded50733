#include "subjfair/run_file.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace subjfair {

using nlohmann::json;

namespace {

const std::set<std::string> kTopLevelKeys{"schema",   "purpose", "population", "sim",
                                          "rec",      "params",  "strategy",   "ethicality_asserted",
                                          "ledger",   "baseline", "meta"};

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw RunFileError(where, what); }

std::string child(const std::string& where, const std::string& key) { return where + "/" + key; }
std::string child(const std::string& where, std::size_t index) { return where + "/" + std::to_string(index); }

const json& require(const json& obj, const std::string& where, const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, "missing required field '" + key + "'");
  return *it;
}

void expect_object(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
}

void expect_array(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

std::string string(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

AttributeValue attribute(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  fail(where, "attribute values must be numbers or strings");
}

json attribute_json(const AttributeValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  return std::get<std::string>(v);
}

Population parse_population(const json& j, const std::string& where) {
  expect_array(j, where);
  Population pop;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto at = child(where, i);
    expect_object(j[i], at);
    IndividualId id{string(require(j[i], at, "id"), child(at, "id"))};
    pop.individuals.push_back(id);
    if (auto attrs = j[i].find("attributes"); attrs != j[i].end()) {
      const auto attrs_at = child(at, "attributes");
      expect_object(*attrs, attrs_at);
      auto& out = pop.attributes[id];
      for (const auto& [key, value] : attrs->items()) out[key] = attribute(value, child(attrs_at, key));
    }
  }
  return pop;
}

PerceptionTable parse_perceptions(const json& j, const std::string& where) {
  expect_object(j, where);
  PerceptionTable table;
  if (auto prov = j.find("provenance"); prov != j.end()) {
    auto parsed = parse_provenance(string(*prov, child(where, "provenance")));
    if (!parsed) fail(child(where, "provenance"), "expected one of declared, fitted, sampled, dynamic");
    table.set_provenance(*parsed);
  }
  const auto rows_at = child(where, "rows");
  const json& rows = require(j, where, "rows");
  expect_object(rows, rows_at);
  for (const auto& [observer, row] : rows.items()) {
    const auto row_at = child(rows_at, observer);
    expect_object(row, row_at);
    for (const auto& [target, value] : row.items()) {
      table.set(IndividualId{observer}, IndividualId{target}, number(value, child(row_at, target)));
    }
  }
  return table;
}

RecommendationVector parse_recommendations(const json& j, const std::string& where, const Purpose& purpose) {
  expect_object(j, where);
  const auto kind_text = string(require(j, where, "kind"), child(where, "kind"));
  if (kind_text != "label" && kind_text != "score") fail(child(where, "kind"), "expected 'label' or 'score'");
  const bool labels = kind_text == "label";

  RecommendationVector recs{purpose, {}};
  const auto values_at = child(where, "values");
  const json& values = require(j, where, "values");
  expect_object(values, values_at);
  for (const auto& [id, value] : values.items()) {
    const auto at = child(values_at, id);
    if (labels) {
      if (!value.is_number_integer() || (value.get<int>() != 0 && value.get<int>() != 1)) {
        fail(at, "labels must be 0 or 1");
      }
      recs.values.emplace(IndividualId{id}, Outcome::of_label(label_of(value.get<int>() == 1)));
    } else {
      recs.values.emplace(IndividualId{id}, Outcome::of_score(number(value, at)));
    }
  }
  return recs;
}

AuditParams parse_params(const json& j, const std::string& where) {
  expect_object(j, where);
  AuditParams params;
  params.delta = number(require(j, where, "delta"), child(where, "delta"));
  params.epsilon = number(require(j, where, "epsilon"), child(where, "epsilon"));
  if (auto theta = j.find("theta"); theta != j.end()) params.theta = number(*theta, child(where, "theta"));
  return params;
}

AggregationStrategy parse_strategy(const json& j, const std::string& where, double theta) {
  expect_object(j, where);
  AggregationStrategy strategy;
  strategy.theta = theta;
  if (auto kind = j.find("kind"); kind != j.end()) {
    auto parsed = parse_strategy_kind(string(*kind, child(where, "kind")));
    if (!parsed) fail(child(where, "kind"), "expected one of majority, trust_weighted, pessimistic, veto");
    strategy.kind = *parsed;
  }
  if (auto veto = j.find("veto"); veto != j.end()) {
    const auto veto_at = child(where, "veto");
    expect_array(*veto, veto_at);
    for (std::size_t i = 0; i < veto->size(); ++i) {
      const auto at = child(veto_at, i);
      const json& rule = (*veto)[i];
      expect_object(rule, at);
      VetoRule r;
      r.attribute = string(require(rule, at, "attribute"), child(at, "attribute"));
      auto op = parse_comparison(string(require(rule, at, "op"), child(at, "op")));
      if (!op) fail(child(at, "op"), "expected one of <, <=, >, >=, ==, !=");
      r.op = *op;
      r.operand = attribute(require(rule, at, "value"), child(at, "value"));
      if (auto label = rule.find("label"); label != rule.end()) {
        if (!label->is_number_integer() || (label->get<int>() != 0 && label->get<int>() != 1)) {
          fail(child(at, "label"), "labels must be 0 or 1");
        }
        r.vetoed = label_of(label->get<int>() == 1);
      }
      strategy.vetoes.push_back(std::move(r));
    }
  }
  if (auto overrides = j.find("theta_overrides"); overrides != j.end()) {
    const auto at = child(where, "theta_overrides");
    expect_object(*overrides, at);
    for (const auto& [id, value] : overrides->items()) {
      strategy.theta_overrides[IndividualId{id}] = number(value, child(at, id));
    }
  }
  return strategy;
}

AcceptanceLedger parse_ledger(const json& j, const std::string& where) {
  expect_object(j, where);
  AcceptanceLedger ledger;
  for (const auto& [id, kinds] : j.items()) {
    const auto id_at = child(where, id);
    expect_object(kinds, id_at);
    for (const auto& [kind_text, history] : kinds.items()) {
      const auto kind_at = child(id_at, kind_text);
      auto kind = parse_obligation_kind(kind_text);
      if (!kind) fail(kind_at, "unknown obligation kind");
      expect_array(history, kind_at);
      for (std::size_t i = 0; i < history.size(); ++i) {
        auto state = parse_acceptance_state(string(history[i], child(kind_at, i)));
        if (!state) fail(child(kind_at, i), "expected accepted, rejected or pending");
        ledger.record({IndividualId{id}, *kind}, *state);
      }
    }
  }
  return ledger;
}

BaselineInputs parse_baseline(const json& j, const std::string& where) {
  expect_object(j, where);
  BaselineInputs in;
  if (auto scores = j.find("scores"); scores != j.end()) {
    const auto at = child(where, "scores");
    expect_object(*scores, at);
    for (const auto& [id, value] : scores->items()) in.scores.values[IndividualId{id}] = number(value, child(at, id));
  }
  auto parse_distance_list = [&](const char* key, bool with_observer) {
    auto list = j.find(key);
    if (list == j.end()) return;
    const auto list_at = child(where, key);
    expect_array(*list, list_at);
    for (std::size_t i = 0; i < list->size(); ++i) {
      const auto at = child(list_at, i);
      const json& e = (*list)[i];
      expect_object(e, at);
      IndividualId a{string(require(e, at, "a"), child(at, "a"))};
      IndividualId b{string(require(e, at, "b"), child(at, "b"))};
      const double d = number(require(e, at, "d"), child(at, "d"));
      if (d < 0.0) fail(child(at, "d"), "distances must be non-negative");
      if (with_observer) {
        IndividualId observer{string(require(e, at, "observer"), child(at, "observer"))};
        in.distances.set_override(observer, a, b, d);
      } else {
        in.distances.set(a, b, d);
      }
    }
  };
  parse_distance_list("distances", false);
  parse_distance_list("overrides", true);
  if (auto pairs = j.find("pairs"); pairs != j.end()) {
    const auto pairs_at = child(where, "pairs");
    expect_array(*pairs, pairs_at);
    for (std::size_t i = 0; i < pairs->size(); ++i) {
      const auto at = child(pairs_at, i);
      const json& p = (*pairs)[i];
      if (!p.is_array() || p.size() != 2) fail(at, "expected a two-element array of ids");
      in.pairs.emplace_back(IndividualId{string(p[0], child(at, 0))}, IndividualId{string(p[1], child(at, 1))});
    }
  }
  if (auto group = j.find("group_attr"); group != j.end()) {
    in.group_attribute = string(*group, child(where, "group_attr"));
  }
  return in;
}

RunMetadata parse_meta(const json& j, const std::string& where) {
  expect_object(j, where);
  RunMetadata meta;
  if (auto seed = j.find("seed"); seed != j.end()) {
    if (!seed->is_number_unsigned()) fail(child(where, "seed"), "expected a non-negative integer");
    meta.seed = seed->get<std::uint64_t>();
  }
  if (auto ts = j.find("timestamp"); ts != j.end()) meta.timestamp = string(*ts, child(where, "timestamp"));
  if (auto v = j.find("engine_version"); v != j.end()) meta.engine_version = string(*v, child(where, "engine_version"));
  return meta;
}

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

AuditRunFile parse_run(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw RunFileError(line_column(text, e.byte == 0 ? 0 : e.byte - 1), "malformed JSON document");
  }
  expect_object(doc, "");
  for (const auto& [key, value] : doc.items()) {
    if (!kTopLevelKeys.count(key)) fail("/" + key, "unknown field");
  }
  if (auto schema = doc.find("schema"); schema != doc.end() && string(*schema, "/schema") != kRunSchema) {
    fail("/schema", "unsupported schema '" + schema->get<std::string>() + "'");
  }

  AuditRunFile run;
  run.purpose.id = string(require(doc, "", "purpose"), "/purpose");
  run.population = parse_population(require(doc, "", "population"), "/population");
  run.perceptions = parse_perceptions(require(doc, "", "sim"), "/sim");
  run.recommendations = parse_recommendations(require(doc, "", "rec"), "/rec", run.purpose);
  run.params = parse_params(require(doc, "", "params"), "/params");
  run.strategy = AggregationStrategy::majority(run.params.theta);
  if (auto s = doc.find("strategy"); s != doc.end()) run.strategy = parse_strategy(*s, "/strategy", run.params.theta);
  if (auto e = doc.find("ethicality_asserted"); e != doc.end()) {
    if (!e->is_boolean()) fail("/ethicality_asserted", "expected a boolean");
    run.ethicality_asserted = e->get<bool>();
  }
  if (auto l = doc.find("ledger"); l != doc.end()) run.ledger = parse_ledger(*l, "/ledger");
  if (auto b = doc.find("baseline"); b != doc.end()) run.baseline = parse_baseline(*b, "/baseline");
  if (auto m = doc.find("meta"); m != doc.end()) run.meta = parse_meta(*m, "/meta");
  return run;
}

std::string serialize_run(const AuditRunFile& run) {
  json doc;
  doc["schema"] = kRunSchema;
  doc["purpose"] = run.purpose.id;

  json population = json::array();
  for (const auto& id : run.population.individuals) {
    json entry{{"id", id.str()}};
    if (auto it = run.population.attributes.find(id); it != run.population.attributes.end() && !it->second.empty()) {
      json attrs = json::object();
      for (const auto& [key, value] : it->second) attrs[key] = attribute_json(value);
      entry["attributes"] = std::move(attrs);
    }
    population.push_back(std::move(entry));
  }
  doc["population"] = std::move(population);

  json rows = json::object();
  for (const auto& [observer, row] : run.perceptions.rows()) {
    json r = json::object();
    for (const auto& [target, value] : row) r[target.str()] = value;
    rows[observer.str()] = std::move(r);
  }
  doc["sim"] = {{"provenance", to_string(run.perceptions.provenance())}, {"rows", std::move(rows)}};

  const auto kind = run.recommendations.kind().value_or(OutcomeKind::label);
  json values = json::object();
  for (const auto& [id, outcome] : run.recommendations.values) {
    if (outcome.kind() == OutcomeKind::label) {
      values[id.str()] = to_int(outcome.label());
    } else {
      values[id.str()] = outcome.value();
    }
  }
  doc["rec"] = {{"kind", to_string(kind)}, {"values", std::move(values)}};

  doc["params"] = {{"delta", run.params.delta}, {"epsilon", run.params.epsilon}, {"theta", run.params.theta}};

  json vetoes = json::array();
  for (const auto& rule : run.strategy.vetoes) {
    vetoes.push_back({{"attribute", rule.attribute},
                      {"op", to_string(rule.op)},
                      {"value", attribute_json(rule.operand)},
                      {"label", to_int(rule.vetoed)}});
  }
  json overrides = json::object();
  for (const auto& [id, theta] : run.strategy.theta_overrides) overrides[id.str()] = theta;
  doc["strategy"] = {{"kind", to_string(run.strategy.kind)}, {"veto", std::move(vetoes)},
                     {"theta_overrides", std::move(overrides)}};

  if (run.ethicality_asserted) doc["ethicality_asserted"] = *run.ethicality_asserted;

  if (!run.ledger.empty()) {
    json ledger = json::object();
    for (const auto& [key, history] : run.ledger.entries()) {
      json states = json::array();
      for (auto s : history) states.push_back(to_string(s));
      ledger[key.individual.str()][std::string(to_string(key.kind))] = std::move(states);
    }
    doc["ledger"] = std::move(ledger);
  }

  if (run.baseline) {
    const auto& b = *run.baseline;
    json scores = json::object();
    for (const auto& [id, s] : b.scores.values) scores[id.str()] = s;
    json distances = json::array();
    for (const auto& [pair, d] : b.distances.objective_entries()) {
      distances.push_back({{"a", pair.first().str()}, {"b", pair.second().str()}, {"d", d}});
    }
    json ovr = json::array();
    for (const auto& [key, d] : b.distances.overrides()) {
      ovr.push_back({{"observer", key.first.str()}, {"a", key.second.first().str()},
                     {"b", key.second.second().str()}, {"d", d}});
    }
    json baseline{{"scores", std::move(scores)}, {"distances", std::move(distances)}, {"overrides", std::move(ovr)}};
    if (!b.pairs.empty()) {
      json pairs = json::array();
      for (const auto& p : b.pairs) pairs.push_back({p.first().str(), p.second().str()});
      baseline["pairs"] = std::move(pairs);
    }
    if (b.group_attribute) baseline["group_attr"] = *b.group_attribute;
    doc["baseline"] = std::move(baseline);
  }

  json meta{{"timestamp", run.meta.timestamp}, {"engine_version", run.meta.engine_version}};
  if (run.meta.seed) meta["seed"] = *run.meta.seed;
  doc["meta"] = std::move(meta);

  return doc.dump(2) + "\n";
}

ValidationReport validate_run(const AuditRunFile& run) {
  ValidationReport report = validate_population(run.population, run.perceptions, run.recommendations);
  auto add = [&](std::string where, std::string what) {
    report.violations.push_back({std::move(where), std::move(what)});
  };
  try {
    run.params.validate();
  } catch (const ConfigError& e) {
    add("params", e.what());
  }
  try {
    run.strategy.validate();
  } catch (const ConfigError& e) {
    add("strategy", e.what());
  }
  for (const auto& [id, theta] : run.strategy.theta_overrides) {
    if (!run.population.contains(id)) add("strategy/theta_overrides/" + id.str(), "unknown id " + id.str());
  }
  if (run.strategy.kind == StrategyKind::veto) {
    try {
      validate_veto_rules(run.strategy.vetoes, run.population);
    } catch (const ConfigError& e) {
      add("strategy/veto", e.what());
    }
  }
  return report;
}

AuditRunFile load_run(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  AuditRunFile run = parse_run(buffer.str());
  if (auto report = validate_run(run); !report.ok()) throw ValidationError(std::move(report));
  return run;
}

void save_run(const AuditRunFile& run, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out << serialize_run(run);
  if (!out) throw InputError("failed writing " + path.string());
}

}  // namespace subjfair
