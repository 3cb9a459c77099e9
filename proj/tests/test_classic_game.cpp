#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "wargraph/classic_game.hpp"
#include "wargraph/parallel.hpp"

using namespace wargraph;

namespace {

std::deque<ClassicCard> cards(std::initializer_list<const char*> tokens) {
  std::deque<ClassicCard> out;
  for (auto t : tokens) out.push_back(parse_card(t));
  return out;
}

ClassicState fixture_deal() {
  std::ifstream in(std::string(WARGRAPH_FIXTURE_DIR) + "/classic_cycle_52.txt");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_classic_deal(ss.str());
}

std::multiset<std::string> all_cards(const ClassicState& s) {
  std::multiset<std::string> out;
  for (const auto& c : s.left) out.insert(to_string(c));
  for (const auto& c : s.right) out.insert(to_string(c));
  return out;
}

const auto kHalf = PlacementProbabilities::from_own_first(0.5, 0.5);

}  // namespace

TEST(Cards, TextRoundTrip) {
  const auto deck = standard_deck();
  ASSERT_EQ(deck.size(), kClassicDeckSize);
  std::set<std::string> names;
  for (const auto& c : deck) {
    names.insert(to_string(c));
    EXPECT_EQ(parse_card(to_string(c)), c);
  }
  EXPECT_EQ(names.size(), 52u);
  EXPECT_EQ(parse_card("AS").rank, kAce);
  EXPECT_EQ(parse_card("2H").rank, 2);
  EXPECT_THROW(parse_card("1H"), RuleError);
  EXPECT_THROW(parse_card("AX"), RuleError);
}

TEST(Deal, Validation) {
  const auto deal = random_classic_deal(9);
  EXPECT_NO_THROW(validate_classic_deal(deal));
  EXPECT_EQ(deal.left.size(), 26u);
  EXPECT_EQ(parse_classic_deal(to_string(deal)), deal);
  auto dup = deal;
  dup.left.front() = dup.right.front();
  EXPECT_THROW(validate_classic_deal(dup), RuleError);
  auto uneven = deal;
  uneven.left.push_back(uneven.right.back());
  uneven.right.pop_back();
  EXPECT_THROW(validate_classic_deal(uneven), RuleError);
  EXPECT_NO_THROW(validate_classic_deal(uneven, false));
  EXPECT_NE(random_classic_deal(9), random_classic_deal(10));
  EXPECT_EQ(random_classic_deal(9), deal);
}

TEST(Trick, HigherCardTakesThePair) {
  ClassicState s{cards({"AH", "2C"}), cards({"KH", "3C"})};
  const auto t = play_classic_trick(s, PlacementOrder::OwnFirst, WarConfig{});
  EXPECT_EQ(t.winner, Side::Left);
  EXPECT_EQ(t.war_rounds, 0);
  EXPECT_EQ(t.cards_laid, 2);
  EXPECT_EQ(s.left, cards({"2C", "AH", "KH"}));
  EXPECT_EQ(s.right, cards({"3C"}));

  ClassicState r{cards({"AH", "2C"}), cards({"KH", "3C"})};
  play_classic_trick(r, PlacementOrder::RivalFirst, WarConfig{});
  EXPECT_EQ(r.left, cards({"2C", "KH", "AH"}));
}

TEST(Trick, WarRecursesUntilRanksDiffer) {
  // Two ties in a row: 5/5, then face-down + 9/9, then face-down + K/Q.
  ClassicState s{cards({"5H", "2H", "9H", "3H", "KH", "4H"}), cards({"5C", "2C", "9C", "3C", "QC", "4C"})};
  const auto t = play_classic_trick(s, PlacementOrder::OwnFirst, WarConfig{});
  EXPECT_EQ(t.winner, Side::Left);
  EXPECT_EQ(t.war_rounds, 2);
  EXPECT_EQ(t.cards_laid, 10);
  EXPECT_EQ(t.end, TrickEnd::Continue);
  EXPECT_EQ(s.left, cards({"4H", "5H", "2H", "9H", "3H", "KH", "5C", "2C", "9C", "3C", "QC"}));
  EXPECT_EQ(s.right, cards({"4C"}));
}

TEST(Trick, FaceDownCountIsConfigurable) {
  ClassicState s{cards({"5H", "2H", "3H", "KH"}), cards({"5C", "2C", "3C", "QC"})};
  const auto t = play_classic_trick(s, PlacementOrder::RivalFirst, WarConfig{2});
  EXPECT_EQ(t.winner, Side::Left);
  EXPECT_EQ(t.cards_laid, 8);
  EXPECT_EQ(s.left, cards({"5C", "2C", "3C", "QC", "5H", "2H", "3H", "KH"}));
  EXPECT_TRUE(s.right.empty());
  EXPECT_THROW(WarConfig{-1}.validate(), RuleError);
}

TEST(Trick, PlayerWhoCannotFinishAWarLoses) {
  ClassicState s{cards({"7H"}), cards({"7C", "2C", "AC"})};
  const auto t = play_classic_trick(s, PlacementOrder::OwnFirst, WarConfig{});
  EXPECT_EQ(t.winner, Side::Right);
  EXPECT_EQ(t.end, TrickEnd::Exhaustion);
  EXPECT_TRUE(s.left.empty());
  EXPECT_EQ(s.right.size(), 4u);
}

TEST(Trick, BothShortWithEqualCountsIsADraw) {
  ClassicState s{cards({"7H", "2H"}), cards({"7C", "3C"})};
  const auto before = s;
  const auto t = play_classic_trick(s, PlacementOrder::OwnFirst, WarConfig{2});
  EXPECT_EQ(t.end, TrickEnd::Draw);
  EXPECT_EQ(all_cards(s), all_cards(before));
  EXPECT_EQ(s.left.size(), 2u);
}

TEST(Trick, ResolveLeavesInputUntouched) {
  const ClassicState s{cards({"AH"}), cards({"KH"})};
  const auto r = resolve_classic_trick(s, PlacementOrder::OwnFirst, WarConfig{});
  EXPECT_EQ(s.left.size(), 1u);
  EXPECT_TRUE(r.state.is_final());
  EXPECT_EQ(r.trick.winner, Side::Left);
}

TEST(Simulate, SameSeedSameRecord) {
  const auto deal = random_classic_deal(5);
  const auto a = simulate_classic(deal, kHalf, {}, 77, 1'000'000);
  const auto b = simulate_classic(deal, kHalf, {}, 77, 1'000'000);
  EXPECT_EQ(a.moves, b.moves);
  EXPECT_EQ(a.winner, b.winner);
  EXPECT_EQ(a.wars, b.wars);
  EXPECT_FALSE(a.truncated);
  EXPECT_TRUE(a.winner.has_value());
}

TEST(Simulate, ConservesCardsEveryMove) {
  auto s = random_classic_deal(3);
  const auto before = all_cards(s);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000 && !s.is_final(); ++i) {
    const auto t = play_classic_trick(s, kHalf, unit_uniform(rng), WarConfig{});
    ASSERT_EQ(all_cards(s), before);
    if (t.end != TrickEnd::Continue) break;
  }
}

TEST(Simulate, TruncationFlag) {
  const auto rec = simulate_classic(random_classic_deal(1), kHalf, {}, 1, 3);
  EXPECT_TRUE(rec.truncated);
  EXPECT_EQ(rec.moves, 3u);
  EXPECT_FALSE(rec.winner.has_value());
}

TEST(MonteCarlo, SingleTrialReproducesSimulate) {
  const std::vector<std::int64_t> ks{0, 10};
  const auto summary = monte_carlo_classic(1, kHalf, {}, 123, 1'000'000, ks);
  const auto s = classic_trial_seed(123, 0);
  const auto rec = simulate_classic(random_classic_deal(s), kHalf, {}, s, 1'000'000);
  EXPECT_EQ(summary.moves.mean, static_cast<double>(rec.moves));
  EXPECT_EQ(summary.wars, rec.wars);
}

TEST(MonteCarlo, SurvivalIsNonIncreasingAndThreadIndependent) {
  const std::vector<std::int64_t> ks{0, 50, 100, 200, 400, 800, 1600, 3200};
  const auto a = monte_carlo_classic(300, kHalf, {}, 8, 1'000'000, ks, 1);
  const auto b = monte_carlo_classic(300, kHalf, {}, 8, 1'000'000, ks, 3);
  EXPECT_EQ(a.moves.truncated, 0u);
  EXPECT_EQ(a.survival.front().p_alive, 1.0);
  for (std::size_t i = 1; i < a.survival.size(); ++i) EXPECT_LE(a.survival[i].p_alive, a.survival[i - 1].p_alive);
  EXPECT_EQ(a.moves.mean, b.moves.mean);
  EXPECT_EQ(a.left_wins, b.left_wins);
  EXPECT_EQ(a.left_wins + a.right_wins + a.draws, 300u);
  EXPECT_THROW(monte_carlo_classic(0, kHalf, {}, 8, 10, ks), RuleError);
}

TEST(ValueCycle, StoredFixture) {
  const auto deal = fixture_deal();
  const auto check = verify_value_cycle(deal, DeterministicPolicy::SeatLeftFirst);
  EXPECT_TRUE(check.ok);
  EXPECT_EQ(check.period_in_values, 26);
  EXPECT_EQ(check.wars_encountered, 0);
  EXPECT_FALSE(check.terminated);
}

TEST(ValueCycle, HoldsOverFourBlocks) {
  const auto deal = fixture_deal();
  const auto left0 = rank_sequence(deal.left), right0 = rank_sequence(deal.right);
  auto run = advance_classic(deal, DeterministicPolicy::SeatLeftFirst, 0);
  for (int block = 1; block <= 4; ++block) {
    run = advance_classic(run.state, DeterministicPolicy::SeatLeftFirst, kValueCycleMoves);
    ASSERT_FALSE(run.finished);
    EXPECT_EQ(run.wars, 0);
    EXPECT_EQ(rank_sequence(run.state.left), left0) << block;
    EXPECT_EQ(rank_sequence(run.state.right), right0) << block;
  }
}

TEST(ValueCycle, WarDealFails) {
  auto deal = random_classic_deal(0);
  // Force a tie on the first move.
  auto& l = deal.left;
  auto& r = deal.right;
  const auto it = std::find_if(r.begin(), r.end(), [&](const ClassicCard& c) { return c.rank == l.front().rank; });
  if (it != r.end()) {
    std::iter_swap(r.begin(), it);
  } else {
    const auto jt = std::find_if(l.begin() + 1, l.end(), [&](const ClassicCard& c) { return c.rank == r.front().rank; });
    ASSERT_NE(jt, l.end());
    std::iter_swap(l.begin(), jt);
  }
  const auto check = verify_value_cycle(deal, DeterministicPolicy::SeatLeftFirst);
  EXPECT_FALSE(check.ok);
  EXPECT_GE(check.wars_encountered, 1);
}

TEST(ValueCycle, TerminatingDealFails) {
  // Left holds every high card in the right order and wins every trick.
  const auto deck = standard_deck();
  std::vector<ClassicCard> sorted(deck.begin(), deck.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](auto a, auto b) { return a.rank > b.rank; });
  ClassicState s;
  s.left.assign(sorted.begin(), sorted.begin() + 26);
  s.right.assign(sorted.begin() + 26, sorted.end());
  const auto check = verify_value_cycle(s, DeterministicPolicy::OwnFirst);
  EXPECT_FALSE(check.ok);
  EXPECT_TRUE(check.terminated);
}
