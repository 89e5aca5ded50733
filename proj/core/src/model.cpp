#include "subjfair/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace subjfair {

std::string to_string(const AttributeValue& value) {
  if (const auto* s = std::get_if<std::string>(&value)) return *s;
  std::ostringstream os;
  os << std::get<double>(value);
  return os.str();
}

bool Population::contains(const IndividualId& id) const {
  return std::find(individuals.begin(), individuals.end(), id) != individuals.end();
}

const AttributeMap& Population::attributes_of(const IndividualId& id) const {
  static const AttributeMap empty;
  auto it = attributes.find(id);
  return it == attributes.end() ? empty : it->second;
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::declared: return "declared";
    case Provenance::fitted: return "fitted";
    case Provenance::sampled: return "sampled";
    case Provenance::dynamic: return "dynamic";
  }
  return "declared";
}

std::optional<Provenance> parse_provenance(std::string_view text) {
  for (auto p : {Provenance::declared, Provenance::fitted, Provenance::sampled, Provenance::dynamic}) {
    if (to_string(p) == text) return p;
  }
  return std::nullopt;
}

void PerceptionTable::set(const IndividualId& observer, const IndividualId& target, double similarity) {
  rows_[observer][target] = similarity;
}

double PerceptionTable::similarity(const IndividualId& observer, const IndividualId& target) const {
  return entry(observer, target).value_or(0.0);
}

std::optional<double> PerceptionTable::entry(const IndividualId& observer, const IndividualId& target) const {
  auto row = rows_.find(observer);
  if (row == rows_.end()) return std::nullopt;
  auto it = row->second.find(target);
  if (it == row->second.end()) return std::nullopt;
  return it->second;
}

std::string_view to_string(OutcomeKind kind) {
  return kind == OutcomeKind::label ? "label" : "score";
}

Label Outcome::label() const {
  if (kind_ != OutcomeKind::label) throw KindMismatchError("outcome is a score, not a label");
  return label_of(value_ != 0.0);
}

Outcome outcome_in(Label l, OutcomeKind kind) noexcept {
  return kind == OutcomeKind::label ? Outcome::of_label(l) : Outcome::of_score(to_int(l));
}

double treatment_similarity(const Outcome& a, const Outcome& b) {
  if (a.kind() != b.kind()) {
    throw KindMismatchError("cannot compare a " + std::string(to_string(a.kind())) + " with a " +
                            std::string(to_string(b.kind())));
  }
  if (a.kind() == OutcomeKind::label) return a.value() == b.value() ? 1.0 : 0.0;
  return 1.0 - std::abs(a.value() - b.value());
}

const Outcome& RecommendationVector::at(const IndividualId& id) const {
  auto it = values.find(id);
  if (it == values.end()) throw UnknownIdError("no recommendation for " + id.str());
  return it->second;
}

std::optional<OutcomeKind> RecommendationVector::kind() const {
  if (values.empty()) return std::nullopt;
  return values.begin()->second.kind();
}

Label DecisionVector::at(const IndividualId& id) const {
  auto it = values.find(id);
  if (it == values.end()) throw UnknownIdError("no decision for " + id.str());
  return it->second;
}

void AuditParams::validate() const {
  auto check = [](double v, bool upper_inclusive, const char* name) {
    bool ok = v >= 0.0 && (upper_inclusive ? v <= 1.0 : v < 1.0);
    if (!ok) {
      std::ostringstream os;
      os << name << " = " << v << " is outside " << (upper_inclusive ? "[0,1]" : "[0,1)");
      throw ConfigError(os.str());
    }
  };
  check(delta, true, "delta");
  check(epsilon, false, "epsilon");
  check(theta, false, "theta");
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i].location << ": " << violations[i].message;
  }
  return os.str();
}

ValidationError::ValidationError(ValidationReport report)
    : Error("invalid inputs: " + report.summary()), report_(std::move(report)) {}

namespace {

std::string pair_location(const IndividualId& a, const IndividualId& b) {
  return "sim[" + a.str() + "][" + b.str() + "]";
}

}  // namespace

ValidationReport validate_perceptions(const Population& pop, const PerceptionTable& perceptions) {
  ValidationReport report;
  auto add = [&](std::string where, std::string what) {
    report.violations.push_back({std::move(where), std::move(what)});
  };

  if (pop.individuals.empty()) add("population", "population must contain at least one individual");

  std::set<IndividualId> known;
  for (const auto& id : pop.individuals) {
    if (!known.insert(id).second) add("population/" + id.str(), "duplicate id " + id.str());
  }

  std::optional<std::set<std::string>> keys;
  for (const auto& id : pop.individuals) {
    if (pop.attributes.empty()) break;
    std::set<std::string> mine;
    for (const auto& [k, v] : pop.attributes_of(id)) mine.insert(k);
    if (!keys) {
      keys = std::move(mine);
    } else if (*keys != mine) {
      add("population/" + id.str() + "/attributes", "attribute keys inconsistent for " + id.str());
    }
  }
  for (const auto& [id, attrs] : pop.attributes) {
    if (!known.count(id)) add("population/attributes/" + id.str(), "unknown id " + id.str());
  }

  for (const auto& [observer, row] : perceptions.rows()) {
    if (!known.count(observer)) add("sim[" + observer.str() + "]", "unknown id " + observer.str());
    for (const auto& [target, value] : row) {
      if (!known.count(target)) add(pair_location(observer, target), "unknown id " + target.str());
      if (!(value >= 0.0 && value <= 1.0)) {
        add(pair_location(observer, target),
            "similarity out of range [0,1] for (" + observer.str() + "," + target.str() + ")");
      }
    }
  }
  for (const auto& id : known) {
    if (perceptions.similarity(id, id) != 1.0) {
      add(pair_location(id, id), "self-similarity must be 1.0 for " + id.str());
    }
  }
  return report;
}

ValidationReport validate_population(const Population& pop,
                                     const PerceptionTable& perceptions,
                                     const RecommendationVector& recs) {
  ValidationReport report = validate_perceptions(pop, perceptions);
  auto add = [&](std::string where, std::string what) {
    report.violations.push_back({std::move(where), std::move(what)});
  };

  for (const auto& id : pop.individuals) {
    if (!recs.values.count(id)) add("rec/" + id.str(), "no recommendation for " + id.str());
  }
  const std::set<IndividualId> known(pop.individuals.begin(), pop.individuals.end());
  auto kind = recs.kind();
  for (const auto& [id, outcome] : recs.values) {
    if (!known.count(id)) add("rec/" + id.str(), "unknown id " + id.str());
    if (kind && outcome.kind() != *kind) {
      add("rec/" + id.str(), "outcome kind must be uniform across recommendations");
    }
    if (outcome.kind() == OutcomeKind::score && !(outcome.value() >= 0.0 && outcome.value() <= 1.0)) {
      add("rec/" + id.str(), "score out of range [0,1] for " + id.str());
    }
  }
  return report;
}

}  // namespace subjfair
