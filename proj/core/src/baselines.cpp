#include "subjfair/baselines.hpp"

#include <algorithm>
#include <cmath>

namespace subjfair {

IdPair::IdPair(IndividualId a, IndividualId b) : first_(std::move(a)), second_(std::move(b)) {
  if (second_ < first_) std::swap(first_, second_);
}

void ObjectiveDistanceTable::set(const IndividualId& a, const IndividualId& b, double distance) {
  if (!(distance >= 0.0)) throw InputError("distance must be non-negative");
  objective_[IdPair(a, b)] = distance;
}

void ObjectiveDistanceTable::set_override(const IndividualId& observer,
                                          const IndividualId& a,
                                          const IndividualId& b,
                                          double distance) {
  if (!(distance >= 0.0)) throw InputError("distance must be non-negative");
  overrides_[{observer, IdPair(a, b)}] = distance;
}

double ObjectiveDistanceTable::objective(const IndividualId& a, const IndividualId& b) const {
  auto it = objective_.find(IdPair(a, b));
  if (it == objective_.end()) throw InputError("no distance for (" + a.str() + "," + b.str() + ")");
  return it->second;
}

double ObjectiveDistanceTable::perceived_by(const IndividualId& observer,
                                            const IndividualId& a,
                                            const IndividualId& b) const {
  auto it = overrides_.find({observer, IdPair(a, b)});
  return it == overrides_.end() ? objective(a, b) : it->second;
}

double ScoreMapping::at(const IndividualId& id) const {
  auto it = values.find(id);
  if (it == values.end()) throw InputError("no score for " + id.str());
  return it->second;
}

std::vector<IdPair> resolve_pairs(std::span<const IdPair> pairs, const ObjectiveDistanceTable& distances) {
  if (!pairs.empty()) return {pairs.begin(), pairs.end()};
  std::vector<IdPair> all;
  for (const auto& [pair, d] : distances.objective_entries()) all.push_back(pair);
  return all;
}

namespace {

bool exceeds(double gap, double distance) { return gap > distance + kDistanceSlack; }

}  // namespace

std::vector<PairViolation> dwork_if_check(const ScoreMapping& scores,
                                          const ObjectiveDistanceTable& distances,
                                          std::span<const IdPair> pairs) {
  std::vector<PairViolation> out;
  for (const auto& pair : resolve_pairs(pairs, distances)) {
    const double gap = std::abs(scores.at(pair.first()) - scores.at(pair.second()));
    const double d = distances.objective(pair.first(), pair.second());
    if (exceeds(gap, d)) out.push_back({pair, gap, d});
  }
  return out;
}

std::vector<ObserverViolation> subjective_if_check(const ScoreMapping& scores,
                                                   const ObjectiveDistanceTable& distances,
                                                   std::span<const IdPair> pairs) {
  std::vector<ObserverViolation> out;
  for (const auto& pair : resolve_pairs(pairs, distances)) {
    const double gap = std::abs(scores.at(pair.first()) - scores.at(pair.second()));
    for (const auto* observer : {&pair.first(), &pair.second()}) {
      const double d = distances.perceived_by(*observer, pair.first(), pair.second());
      if (exceeds(gap, d)) out.push_back({*observer, pair, gap, d});
    }
  }
  return out;
}

ParityResult statistical_parity_gap(const DecisionVector& decisions,
                                    const Population& pop,
                                    const std::string& group_attribute) {
  std::map<std::string, std::pair<std::size_t, std::size_t>> counts;  // group -> (positives, total)
  for (const auto& id : pop.individuals) {
    const auto& attrs = pop.attributes_of(id);
    auto it = attrs.find(group_attribute);
    if (it == attrs.end()) throw InputError(id.str() + " has no attribute '" + group_attribute + "'");
    auto& [positives, total] = counts[to_string(it->second)];
    ++total;
    if (decisions.at(id) == Label::positive) ++positives;
  }

  ParityResult result;
  for (const auto& [group, c] : counts) {
    result.positive_rate[group] = static_cast<double>(c.first) / static_cast<double>(c.second);
  }
  if (!result.positive_rate.empty()) {
    auto [lo, hi] = std::minmax_element(result.positive_rate.begin(), result.positive_rate.end(),
                                        [](const auto& a, const auto& b) { return a.second < b.second; });
    result.gap = hi->second - lo->second;
  }
  return result;
}

}  // namespace subjfair
