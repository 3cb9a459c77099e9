#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "wargraph/cycle_search.hpp"
#include "wargraph/reports.hpp"

using namespace wargraph;

namespace {

Json load_fixture(const std::string& name) {
  std::ifstream in(std::string(WARGRAPH_FIXTURE_DIR) + "/" + name);
  EXPECT_TRUE(in.good()) << name;
  return Json::parse(in);
}

}  // namespace

TEST(Policy, OrdersAndText) {
  EXPECT_EQ(order_for(DeterministicPolicy::SeatLeftFirst, Side::Left), PlacementOrder::OwnFirst);
  EXPECT_EQ(order_for(DeterministicPolicy::SeatLeftFirst, Side::Right), PlacementOrder::RivalFirst);
  EXPECT_EQ(order_for(DeterministicPolicy::RivalFirst, Side::Left), PlacementOrder::RivalFirst);
  for (auto p : kAllPolicies) EXPECT_EQ(parse_policy(to_string(p)), p);
  EXPECT_THROW(parse_policy("whatever"), RuleError);
}

TEST(Simulate, TwoCardsTerminateAtOnce) {
  for (auto p : kAllPolicies) {
    const auto out = simulate_policy(GameState::from_hands({1}, {2}), p, ComparisonRule::Standard, 10);
    ASSERT_TRUE(std::holds_alternative<Terminated>(out));
    EXPECT_EQ(std::get<Terminated>(out).steps, 1u);
    EXPECT_EQ(std::get<Terminated>(out).winner, Side::Right);
  }
}

TEST(Simulate, FinalDealTerminatesWithoutMoving) {
  const auto out = simulate_policy(GameState::from_hands({1, 2}, {}), DeterministicPolicy::OwnFirst,
                                   ComparisonRule::Standard, 10);
  ASSERT_TRUE(std::holds_alternative<Terminated>(out));
  EXPECT_EQ(std::get<Terminated>(out).steps, 0u);
  EXPECT_EQ(std::get<Terminated>(out).winner, Side::Left);
}

TEST(Simulate, CycleMatchesNaiveOrbit) {
  const auto deal = parse_deal("L: 1 2 4 ; R: 5 6 3");
  const auto out = simulate_policy(deal, DeterministicPolicy::SeatLeftFirst, ComparisonRule::Standard, 1000);
  ASSERT_TRUE(std::holds_alternative<Cycle>(out));
  const auto c = std::get<Cycle>(out);
  // Naive first-repeat search over the stored orbit.
  std::vector<GameState> orbit{deal};
  for (;;) {
    const auto next = policy_step(orbit.back(), DeterministicPolicy::SeatLeftFirst, ComparisonRule::Standard);
    const auto hit = std::find(orbit.begin(), orbit.end(), next);
    if (hit != orbit.end()) {
      EXPECT_EQ(c.pre_period, static_cast<std::uint64_t>(hit - orbit.begin()));
      EXPECT_EQ(c.period, static_cast<std::uint64_t>(orbit.end() - hit));
      break;
    }
    orbit.push_back(next);
  }
}

TEST(Simulate, NeverTruncatedWithinStateCount) {
  for (int n : {2, 4, 6}) {
    for (auto p : kAllPolicies) {
      for (const auto s : enumerate_states(n)) {
        const auto out = simulate_policy(s, p, ComparisonRule::Standard, state_count(n) + 1);
        ASSERT_FALSE(std::holds_alternative<Truncated>(out)) << to_string(s);
      }
    }
  }
}

TEST(FindCycles, SixCardsSeatLeft) {
  const auto certs = find_cycles(6, DeterministicPolicy::SeatLeftFirst, ComparisonRule::Standard);
  EXPECT_EQ(certs.size(), 381u);
  for (const auto& c : certs) {
    EXPECT_EQ(c.deal.left_size(), 3);
    ASSERT_TRUE(verify_cycle(c)) << to_string(c.deal);
  }
  EXPECT_EQ(to_string(certs.front().deal), "L: 1 2 4 ; R: 5 6 3");
}

TEST(FindCycles, CountsPerPolicy) {
  EXPECT_TRUE(find_cycles(6, DeterministicPolicy::OwnFirst, ComparisonRule::Standard).empty());
  EXPECT_EQ(find_cycles(6, DeterministicPolicy::RivalFirst, ComparisonRule::Standard).size(), 72u);
  EXPECT_EQ(find_cycles(6, DeterministicPolicy::SeatRightFirst, ComparisonRule::Standard).size(), 381u);
  for (auto p : kAllPolicies) EXPECT_TRUE(find_cycles(2, p, ComparisonRule::Standard).empty());
}

TEST(FindCycles, AllStatesAgreeWithWanderingSet) {
  // Under a deterministic policy a state cycles exactly when it is wandering.
  for (auto p : kAllPolicies) {
    const auto certs = find_cycles(6, p, ComparisonRule::Standard, true);
    const auto report = attaining_set(GameGraph(6, ComparisonRule::Standard, edge_filter_for(p)));
    EXPECT_EQ(certs.size(), report.wandering_count) << to_string(p);
  }
}

TEST(VerifyCycle, RejectsPerturbations) {
  const auto certs = find_cycles(6, DeterministicPolicy::SeatLeftFirst, ComparisonRule::Standard);
  ASSERT_FALSE(certs.empty());
  auto c = certs.front();
  ASSERT_TRUE(verify_cycle(c));
  c.period += 1;
  EXPECT_FALSE(verify_cycle(c));
  c = certs.front();
  c.period *= 2;
  EXPECT_FALSE(verify_cycle(c));
  c = certs.front();
  c.deal = GameState::from_hands({1, 2, 3, 4, 5, 6}, {});
  EXPECT_FALSE(verify_cycle(c));
  c = certs.front();
  c.policy = DeterministicPolicy::OwnFirst;
  EXPECT_FALSE(verify_cycle(c));
}

TEST(VerifyCycle, StoredFixture) {
  const auto c = cycle_certificate_from_json(load_fixture("model_cycle_n6_seat_left.json"));
  EXPECT_EQ(c.policy, DeterministicPolicy::SeatLeftFirst);
  EXPECT_EQ(c.period, 12u);
  EXPECT_TRUE(verify_cycle(c));
  EXPECT_EQ(to_json(c), load_fixture("model_cycle_n6_seat_left.json"));
}

TEST(VerifyCycle, MalformedJson) {
  EXPECT_THROW(cycle_certificate_from_json(Json::parse(R"({"deal": 3})")), RuleError);
  EXPECT_THROW(cycle_certificate_from_json(Json::parse(R"({"deal":"L: 1 ; R: 2"})")), RuleError);
}

TEST(TwoOutcome, StandardRuleHasNone) {
  EXPECT_TRUE(two_outcome_deals(4, ComparisonRule::Standard).empty());
  EXPECT_TRUE(two_outcome_deals(6, ComparisonRule::Standard).empty());
}

TEST(TwoOutcome, CyclicRuleWitnessesReplay) {
  const auto certs = two_outcome_deals(4, ComparisonRule::CyclicLowBeatsHigh);
  ASSERT_FALSE(certs.empty());
  EXPECT_EQ(certs.size(), 12u);
  const GameGraph g(4, ComparisonRule::CyclicLowBeatsHigh);
  for (const auto& c : certs) {
    EXPECT_EQ(c.left_win_path.start, c.deal);
    EXPECT_TRUE(replay(c.left_win_path, g));
    EXPECT_TRUE(replay(c.right_win_path, g));
    EXPECT_EQ(c.left_win_path.end().holder_of_deck(), Side::Left);
    EXPECT_EQ(c.right_win_path.end().holder_of_deck(), Side::Right);
  }
  const auto stored = load_fixture("two_outcome_n4_cyclic.json");
  EXPECT_EQ(to_json(certs.front()), stored);
}

TEST(TwoOutcome, HighestCardHolderAlwaysWinsUnderStandard) {
  for (int n : {2, 4, 6}) {
    for (const auto s : enumerate_states(n)) {
      if (s.is_final()) continue;
      const auto w = reachable_winners(s, ComparisonRule::Standard);
      const Side holder = s.holder_of(n);
      EXPECT_TRUE(holder == Side::Left ? w.left : w.right);
      EXPECT_FALSE(holder == Side::Left ? w.right : w.left) << to_string(s);
    }
  }
}
