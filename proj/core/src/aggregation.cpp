#include "subjfair/aggregation.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <utility>

namespace subjfair {

Label SetRecommendationVector::at(const IndividualId& owner) const {
  auto it = values.find(owner);
  if (it == values.end()) throw UnknownIdError("no set recommendation for cluster of " + owner.str());
  return it->second;
}

namespace {

constexpr std::array<std::pair<StrategyKind, std::string_view>, 4> kStrategyNames{{
    {StrategyKind::majority, "majority"},
    {StrategyKind::trust_weighted, "trust_weighted"},
    {StrategyKind::pessimistic, "pessimistic"},
    {StrategyKind::veto, "veto"},
}};

constexpr std::array<std::pair<Comparison, std::string_view>, 6> kComparisonNames{{
    {Comparison::less, "<"},
    {Comparison::less_equal, "<="},
    {Comparison::greater, ">"},
    {Comparison::greater_equal, ">="},
    {Comparison::equal, "=="},
    {Comparison::not_equal, "!="},
}};

template <typename T>
bool compare(const T& lhs, Comparison op, const T& rhs) {
  switch (op) {
    case Comparison::less: return lhs < rhs;
    case Comparison::less_equal: return lhs <= rhs;
    case Comparison::greater: return lhs > rhs;
    case Comparison::greater_equal: return lhs >= rhs;
    case Comparison::equal: return lhs == rhs;
    case Comparison::not_equal: return lhs != rhs;
  }
  return false;
}

void check_theta(double theta, const std::string& what) {
  if (!(theta >= 0.0 && theta < 1.0)) {
    throw ConfigError(what + " = " + std::to_string(theta) + " is outside [0,1)");
  }
}

Label tally(std::size_t positives, std::size_t total, double theta) {
  if (total == 0) throw PreconditionError("cannot aggregate over an empty set");
  return label_of(static_cast<double>(positives) / static_cast<double>(total) > theta);
}

}  // namespace

std::string_view to_string(StrategyKind kind) {
  for (const auto& [k, name] : kStrategyNames) {
    if (k == kind) return name;
  }
  return "majority";
}

std::optional<StrategyKind> parse_strategy_kind(std::string_view text) {
  for (const auto& [k, name] : kStrategyNames) {
    if (name == text) return k;
  }
  return std::nullopt;
}

std::string_view to_string(Comparison op) {
  for (const auto& [k, name] : kComparisonNames) {
    if (k == op) return name;
  }
  return "==";
}

std::optional<Comparison> parse_comparison(std::string_view text) {
  for (const auto& [k, name] : kComparisonNames) {
    if (name == text) return k;
  }
  return std::nullopt;
}

bool VetoRule::matches(const AttributeMap& attributes) const {
  auto it = attributes.find(attribute);
  if (it == attributes.end() || it->second.index() != operand.index()) return false;
  if (const auto* num = std::get_if<double>(&it->second)) {
    return compare(*num, op, std::get<double>(operand));
  }
  return compare(std::get<std::string>(it->second), op, std::get<std::string>(operand));
}

double AggregationStrategy::theta_for(const IndividualId& id) const {
  auto it = theta_overrides.find(id);
  return it == theta_overrides.end() ? theta : it->second;
}

void AggregationStrategy::validate() const {
  check_theta(theta, "theta");
  for (const auto& [id, t] : theta_overrides) check_theta(t, "theta override for " + id.str());
}

Label binarize(const Outcome& outcome) noexcept {
  if (outcome.kind() == OutcomeKind::label) return label_of(outcome.value() != 0.0);
  return label_of(outcome.value() > 0.5);
}

Label aggregate_set_recommendation(const PerceivedCluster& cluster,
                                   const RecommendationVector& recs,
                                   double theta) {
  std::size_t positives = 0;
  for (const auto& member : cluster.members) {
    if (binarize(recs.at(member)) == Label::positive) ++positives;
  }
  return tally(positives, cluster.members.size(), theta);
}

Label aggregate_individual_decision(const IndividualId& i,
                                    const ClusterFamily& family,
                                    const SetRecommendationVector& set_recs,
                                    double theta) {
  const auto& owners = family.owners_containing(i);
  std::size_t positives = 0;
  for (const auto& owner : owners) {
    if (set_recs.at(owner) == Label::positive) ++positives;
  }
  return tally(positives, owners.size(), theta);
}

double trust_weight(const IndividualId& x,
                    const ClusterFamily& family,
                    const RecommendationVector& recs,
                    double theta) {
  const Label own = binarize(recs.at(x));
  const Label group = aggregate_set_recommendation(family.cluster_of(x), recs, theta);
  return treatment_similarity(Outcome::of_label(own), Outcome::of_label(group));
}

Label resolve_pessimistic(std::span<const Label> conflicting) {
  if (conflicting.empty()) throw PreconditionError("pessimistic resolution needs at least one outcome");
  return std::ranges::any_of(conflicting, [](Label l) { return l == Label::negative; })
             ? Label::negative
             : Label::positive;
}

Label apply_veto(const IndividualId& i,
                 Label decision,
                 std::span<const VetoRule> rules,
                 const Population& pop) {
  const auto& attributes = pop.attributes_of(i);
  for (const auto& rule : rules) {
    if (rule.vetoed == decision && rule.matches(attributes)) return Label::negative;
  }
  return decision;
}

void validate_veto_rules(std::span<const VetoRule> rules, const Population& pop) {
  std::set<std::string> keys;
  for (const auto& [id, attrs] : pop.attributes) {
    for (const auto& [key, value] : attrs) keys.insert(key);
  }
  for (const auto& rule : rules) {
    if (!keys.count(rule.attribute)) {
      throw ConfigError("veto rule references unknown attribute '" + rule.attribute + "'");
    }
  }
}

namespace {

SetRecommendationVector stage_one(const Population& pop,
                                  const ClusterFamily& family,
                                  const RecommendationVector& recs,
                                  const AggregationStrategy& strategy) {
  SetRecommendationVector out{recs.purpose, {}};

  if (strategy.kind == StrategyKind::pessimistic) {
    for (const auto& owner : pop.individuals) {
      std::vector<Label> labels;
      for (const auto& member : family.cluster_of(owner).members) labels.push_back(binarize(recs.at(member)));
      out.values[owner] = resolve_pessimistic(labels);
    }
    return out;
  }

  if (strategy.kind == StrategyKind::trust_weighted) {
    std::map<IndividualId, double> weights;
    for (const auto& x : pop.individuals) {
      weights[x] = trust_weight(x, family, recs, strategy.theta_for(x));
    }
    for (const auto& owner : pop.individuals) {
      const auto& cluster = family.cluster_of(owner);
      double mass = 0.0;
      double positive_mass = 0.0;
      for (const auto& member : cluster.members) {
        mass += weights[member];
        if (binarize(recs.at(member)) == Label::positive) positive_mass += weights[member];
      }
      const double theta = strategy.theta_for(owner);
      out.values[owner] = mass > 0.0 ? label_of(positive_mass / mass > theta)
                                     : aggregate_set_recommendation(cluster, recs, theta);
    }
    return out;
  }

  for (const auto& owner : pop.individuals) {
    out.values[owner] = aggregate_set_recommendation(family.cluster_of(owner), recs, strategy.theta_for(owner));
  }
  return out;
}

}  // namespace

PipelineResult run_pipeline(const Population& pop,
                            const ClusterFamily& family,
                            const RecommendationVector& recs,
                            const AggregationStrategy& strategy) {
  strategy.validate();
  if (strategy.kind == StrategyKind::veto) validate_veto_rules(strategy.vetoes, pop);

  PipelineResult result;
  result.set_recs = stage_one(pop, family, recs, strategy);
  result.decisions.purpose = recs.purpose;

  for (const auto& i : pop.individuals) {
    Label d;
    if (strategy.kind == StrategyKind::pessimistic) {
      std::vector<Label> labels;
      for (const auto& owner : family.owners_containing(i)) labels.push_back(result.set_recs.at(owner));
      d = resolve_pessimistic(labels);
    } else {
      d = aggregate_individual_decision(i, family, result.set_recs, strategy.theta_for(i));
    }
    if (strategy.kind == StrategyKind::veto) d = apply_veto(i, d, strategy.vetoes, pop);
    result.decisions.values[i] = d;
  }
  return result;
}

}  // namespace subjfair
