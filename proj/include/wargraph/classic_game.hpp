#pragma once

// The 52-card game: four suits, ranks 2..14 (ace high), and the war mechanic on
// equal ranks. Only simulated, never enumerated.

#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wargraph/core_rules.hpp"
#include "wargraph/cycle_search.hpp"
#include "wargraph/markov_analysis.hpp"

namespace wargraph {

enum class Suit { Hearts, Clubs, Diamonds, Spades };

inline constexpr int kLowestRank = 2;
inline constexpr int kAce = 14;
inline constexpr std::size_t kClassicDeckSize = 52;

struct ClassicCard {
  int rank = kLowestRank;
  Suit suit = Suit::Hearts;

  friend bool operator==(const ClassicCard&, const ClassicCard&) = default;
};

std::string to_string(ClassicCard card);
ClassicCard parse_card(std::string_view token);
std::vector<ClassicCard> standard_deck();

struct ClassicState {
  std::deque<ClassicCard> left;
  std::deque<ClassicCard> right;

  bool is_final() const { return left.empty() || right.empty(); }
  std::deque<ClassicCard>& hand(Side s) { return s == Side::Left ? left : right; }
  const std::deque<ClassicCard>& hand(Side s) const { return s == Side::Left ? left : right; }

  friend bool operator==(const ClassicState&, const ClassicState&) = default;
};

// "L: AH KC ... ; R: KH AC ...", top card first, "-" for an empty hand.
std::string to_string(const ClassicState& state);
ClassicState parse_classic_deal(std::string_view text);

/// Throws RuleError unless the hands hold the 52 distinct cards, and, when
/// requested, 26 each.
void validate_classic_deal(const ClassicState& state, bool require_even_split = true);

ClassicState random_classic_deal(std::uint64_t seed);

std::vector<int> rank_sequence(const std::deque<ClassicCard>& hand);

enum class ExhaustionRule { ExhaustedPlayerLoses };

struct WarConfig {
  int face_down_count = 1;
  ExhaustionRule exhaustion = ExhaustionRule::ExhaustedPlayerLoses;

  void validate() const;
};

enum class TrickEnd {
  Continue,    // ordinary trick, game may go on
  Exhaustion,  // a player could not complete a war and lost; the winner holds every card
  Draw         // both players ran out mid-war with equal counts; laid cards went back
};

struct ClassicTrick {
  Side winner = Side::Left;
  int war_rounds = 0;
  int cards_laid = 0;
  TrickEnd end = TrickEnd::Continue;
};

/// Plays one trick in place. On a win the pile goes to the winner's bottom as
/// their own laid stack then the loser's under OwnFirst, reversed under
/// RivalFirst, each stack in laying order.
ClassicTrick play_classic_trick(ClassicState& state, PlacementOrder order, const WarConfig& config);

/// Same, with the placement order drawn by the eventual winner: OwnFirst when
/// u < probs(winner, OwnFirst).
ClassicTrick play_classic_trick(ClassicState& state, const PlacementProbabilities& probs, double u,
                                const WarConfig& config);

ClassicTrick play_classic_trick(ClassicState& state, DeterministicPolicy policy, const WarConfig& config);

struct ClassicTrickResult {
  ClassicState state;
  ClassicTrick trick;
};

ClassicTrickResult resolve_classic_trick(const ClassicState& state, PlacementOrder order, const WarConfig& config);

struct GameRecord {
  ClassicState deal;
  std::uint64_t moves = 0;
  std::optional<Side> winner;
  bool draw = false;
  std::uint64_t wars = 0;
  std::uint64_t cards_laid = 0;
  bool truncated = false;
};

GameRecord simulate_classic(const ClassicState& deal, const PlacementProbabilities& probs, const WarConfig& config,
                            std::uint64_t seed, std::uint64_t max_steps);

/// Per-trial seed used by monte_carlo_classic: trial i deals with
/// random_classic_deal(s) and plays with simulate_classic(..., s, ...).
std::uint64_t classic_trial_seed(std::uint64_t seed, std::uint64_t trial);

struct ClassicSummary {
  LengthSummary moves;
  std::uint64_t draws = 0;
  std::uint64_t wars = 0;
  std::uint64_t left_wins = 0;
  std::uint64_t right_wins = 0;
  std::vector<TailPoint> survival;  // fraction of games still running after k moves
};

ClassicSummary monte_carlo_classic(std::uint64_t trials, const PlacementProbabilities& probs,
                                   const WarConfig& config, std::uint64_t seed, std::uint64_t max_steps,
                                   std::span<const std::int64_t> survival_ks, unsigned threads = 1);

struct ValueCycleCheck {
  bool ok = false;
  int period_in_values = 0;  // smallest k in [1, 26] restoring both rank sequences, 0 if none
  int wars_encountered = 0;
  bool terminated = false;
};

inline constexpr int kValueCycleMoves = 26;

/// Plays 26 moves under a deterministic policy and checks that no war occurs
/// and both hands' rank sequences (suits erased) come back.
ValueCycleCheck verify_value_cycle(const ClassicState& deal, DeterministicPolicy policy,
                                   const WarConfig& config = {});

struct DeterministicRun {
  ClassicState state;
  int moves_played = 0;
  int wars = 0;
  bool finished = false;
};

DeterministicRun advance_classic(const ClassicState& start, DeterministicPolicy policy, int moves,
                                 const WarConfig& config = {});

}  // namespace wargraph
