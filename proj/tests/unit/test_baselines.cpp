#include <doctest.h>

#include <algorithm>
#include <random>
#include <tuple>

#include "subjfair/baselines.hpp"
#include "test_support.hpp"

using namespace subjfair;
using namespace subjfair::literals;
namespace st = subjfair::testing;

TEST_CASE("objective check") {
  ObjectiveDistanceTable d;
  d.set("x"_id, "y"_id, 0.05);
  ScoreMapping close{{{"x"_id, 0.85}, {"y"_id, 0.90}}};
  CHECK(dwork_if_check(close, d).empty());

  ScoreMapping same{{{"x"_id, 0.4}, {"y"_id, 0.4}}};
  ObjectiveDistanceTable zero;
  zero.set("x"_id, "y"_id, 0.0);
  CHECK(dwork_if_check(same, zero).empty());

  ObjectiveDistanceTable far;
  far.set("x"_id, "y"_id, 0.1);
  ScoreMapping apart{{{"x"_id, 0.2}, {"y"_id, 0.9}}};
  auto v = dwork_if_check(apart, far);
  REQUIRE(v.size() == 1);
  CHECK(v[0].pair == IdPair("x"_id, "y"_id));
  CHECK(v[0].score_gap == doctest::Approx(0.7));
}

TEST_CASE("observer-specific distances") {
  ObjectiveDistanceTable d;
  d.set("x"_id, "y"_id, 0.05);
  d.set_override("x"_id, "x"_id, "y"_id, 0.04);
  ScoreMapping scores{{{"x"_id, 0.85}, {"y"_id, 0.90}}};
  CHECK(dwork_if_check(scores, d).empty());
  auto v = subjective_if_check(scores, d);
  REQUIRE(v.size() == 1);
  CHECK(v[0].observer == "x"_id);
  CHECK(v[0].distance == 0.04);
  CHECK(d.perceived_by("y"_id, "y"_id, "x"_id) == 0.05);
}

TEST_CASE("missing inputs") {
  ObjectiveDistanceTable d;
  d.set("x"_id, "y"_id, 0.05);
  ScoreMapping partial{{{"x"_id, 0.85}}};
  CHECK_THROWS_AS(dwork_if_check(partial, d), InputError);
  CHECK_THROWS_AS(d.objective("x"_id, "z"_id), InputError);
  std::vector<IdPair> pairs{IdPair("x"_id, "z"_id)};
  ScoreMapping full{{{"x"_id, 0.1}, {"y"_id, 0.1}, {"z"_id, 0.1}}};
  CHECK_THROWS_AS(dwork_if_check(full, d, pairs), InputError);
}

TEST_CASE("pairs are unordered") {
  CHECK(IdPair("b"_id, "a"_id) == IdPair("a"_id, "b"_id));
  CHECK(IdPair("b"_id, "a"_id).first() == "a"_id);
  ObjectiveDistanceTable d;
  d.set("y"_id, "x"_id, 0.3);
  CHECK(d.objective("x"_id, "y"_id) == 0.3);
  ScoreMapping scores{{{"x"_id, 0.1}, {"y"_id, 0.9}}};
  std::vector<IdPair> forward{IdPair("x"_id, "y"_id)}, backward{IdPair("y"_id, "x"_id)};
  CHECK(dwork_if_check(scores, d, forward) == dwork_if_check(scores, d, backward));
}

namespace {

struct Instance {
  ScoreMapping scores;
  ObjectiveDistanceTable distances;
  std::vector<IndividualId> people;
};

Instance random_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(2, 8);
  std::uniform_int_distribution<int> hundredths(0, 100);
  std::bernoulli_distribution present(0.7);
  Instance inst;
  const int n = size(rng);
  for (int i = 0; i < n; ++i) {
    inst.people.emplace_back("p" + std::to_string(i));
    inst.scores.values[inst.people.back()] = hundredths(rng) / 100.0;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (present(rng)) inst.distances.set(inst.people[i], inst.people[j], hundredths(rng) / 100.0);
    }
  }
  return inst;
}

}  // namespace

TEST_CASE("no overrides reduces to the objective check") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 1000; ++i) {
    auto inst = random_instance(rng);
    auto objective = dwork_if_check(inst.scores, inst.distances);
    auto perceived = subjective_if_check(inst.scores, inst.distances);
    std::vector<ObserverViolation> expected;
    for (const auto& v : objective) {
      expected.push_back({v.pair.first(), v.pair, v.score_gap, v.distance});
      expected.push_back({v.pair.second(), v.pair, v.score_gap, v.distance});
    }
    std::sort(expected.begin(), expected.end(), [](const auto& a, const auto& b) {
      return std::tie(a.pair, a.observer) < std::tie(b.pair, b.observer);
    });
    std::sort(perceived.begin(), perceived.end(), [](const auto& a, const auto& b) {
      return std::tie(a.pair, a.observer) < std::tie(b.pair, b.observer);
    });
    CHECK(perceived == expected);
  }
}

TEST_CASE("a looser personal distance never adds violations") {
  std::mt19937_64 rng(62);
  std::uniform_real_distribution<double> extra(0.0, 0.5);
  for (int i = 0; i < 500; ++i) {
    auto inst = random_instance(rng);
    if (inst.distances.objective_entries().empty()) continue;
    const auto& observer = inst.people[0];
    auto loose = inst.distances;
    for (const auto& [pair, d] : inst.distances.objective_entries()) {
      if (pair.first() == observer || pair.second() == observer) {
        loose.set_override(observer, pair.first(), pair.second(), d + extra(rng));
      }
    }
    auto count_for = [&](const std::vector<ObserverViolation>& v) {
      return std::count_if(v.begin(), v.end(), [&](const auto& x) { return x.observer == observer; });
    };
    CHECK(count_for(subjective_if_check(inst.scores, loose)) <=
          count_for(subjective_if_check(inst.scores, inst.distances)));
  }
}

TEST_CASE("statistical parity") {
  auto make = [](std::initializer_list<std::tuple<const char*, const char*, int>> rows) {
    std::pair<Population, DecisionVector> out;
    for (const auto& [who, group, d] : rows) {
      out.first.individuals.emplace_back(who);
      out.first.attributes[IndividualId{who}] = {{"group", std::string(group)}};
      out.second.values[IndividualId{who}] = label_of(d == 1);
    }
    return out;
  };
  auto [even_pop, even_dec] = make({{"a", "A", 1}, {"b", "A", 0}, {"c", "B", 0}, {"d", "B", 1}});
  CHECK(statistical_parity_gap(even_dec, even_pop, "group").gap == 0.0);

  auto [ext_pop, ext_dec] = make({{"a", "A", 1}, {"b", "A", 1}, {"c", "B", 0}, {"d", "B", 0}});
  CHECK(statistical_parity_gap(ext_dec, ext_pop, "group").gap == 1.0);

  auto [pop, dec] = make({{"a", "A", 1}, {"b", "A", 0}, {"c", "A", 1}, {"d", "B", 1}, {"e", "B", 0}});
  auto result = statistical_parity_gap(dec, pop, "group");
  CHECK(result.positive_rate.at("A") == doctest::Approx(2.0 / 3.0));
  CHECK(result.positive_rate.at("B") == doctest::Approx(0.5));
  CHECK(result.gap == doctest::Approx(1.0 / 6.0));

  // Relabeling groups changes nothing but the keys.
  for (auto& [who, attrs] : pop.attributes) {
    attrs["group"] = std::get<std::string>(attrs["group"]) == "A" ? std::string("Z") : std::string("Y");
  }
  CHECK(statistical_parity_gap(dec, pop, "group").gap == doctest::Approx(1.0 / 6.0));

  pop.attributes.erase("e"_id);
  CHECK_THROWS_AS(statistical_parity_gap(dec, pop, "group"), InputError);
}

TEST_CASE("parity gap stays in the unit interval") {
  std::mt19937_64 rng(63);
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<int> groups(1, 4), size(1, 12);
  for (int i = 0; i < 500; ++i) {
    Population pop;
    DecisionVector dec;
    const int n = size(rng), g = groups(rng);
    for (int k = 0; k < n; ++k) {
      IndividualId who{"p" + std::to_string(k)};
      pop.individuals.push_back(who);
      pop.attributes[who] = {{"g", static_cast<double>(k % g)}};
      dec.values[who] = label_of(coin(rng));
    }
    const double gap = statistical_parity_gap(dec, pop, "g").gap;
    CHECK((gap >= 0.0 && gap <= 1.0));
  }
}
