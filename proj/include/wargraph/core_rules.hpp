#pragma once

// Single-suit model game of War: cards 1..n, two ordered hands, one trick per
// move. The winner of a trick returns both cards to the bottom of their hand in
// one of two orders, which is the only source of branching in the game graph.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wargraph {

inline constexpr int kMaxModelDeck = 12;

using Card = std::uint8_t;

enum class ComparisonRule { Standard, CyclicLowBeatsHigh };

// OwnFirst: the winner's own card goes to the bottom first, so the rival's card
// ends up as the new bottom card. RivalFirst is the mirror image.
enum class PlacementOrder { OwnFirst, RivalFirst };

enum class Side { Left, Right };

constexpr Side opposite(Side s) { return s == Side::Left ? Side::Right : Side::Left; }
constexpr PlacementOrder opposite(PlacementOrder o) {
  return o == PlacementOrder::OwnFirst ? PlacementOrder::RivalFirst : PlacementOrder::OwnFirst;
}

class RuleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct DeckSpec {
  int n = 0;
  ComparisonRule rule = ComparisonRule::Standard;

  // Throws RuleError unless n is even and within [2, kMaxModelDeck].
  void validate() const;
};

/// Winning value of the pair {u, v} in a deck of n cards.
int compare(int u, int v, ComparisonRule rule, int n);

/// An ordered partition of the deck {1..n} into the left and right hands.
/// Both hands are stored back to back: cards [0, split) are the left hand,
/// [split, n) the right hand, each listed top card first.
class GameState {
 public:
  GameState() = default;

  /// Validates that left ++ right is a permutation of 1..n.
  static GameState from_hands(std::span<const int> left, std::span<const int> right);
  static GameState from_hands(std::initializer_list<int> left, std::initializer_list<int> right);

  /// Trusted constructor from a concatenated sequence; no validation.
  static GameState from_sequence(std::span<const Card> sequence, int split);

  int deck_size() const { return n_; }
  int left_size() const { return split_; }
  int right_size() const { return n_ - split_; }
  int hand_size(Side s) const { return s == Side::Left ? left_size() : right_size(); }

  std::span<const Card> sequence() const { return {cards_.data(), n_}; }
  std::span<const Card> left() const { return {cards_.data(), split_}; }
  std::span<const Card> right() const { return {cards_.data() + split_, static_cast<std::size_t>(n_ - split_)}; }
  std::span<const Card> hand(Side s) const { return s == Side::Left ? left() : right(); }

  bool is_final() const { return split_ == 0 || split_ == n_; }
  // Only meaningful on final states: the side that holds the whole deck.
  Side holder_of_deck() const { return split_ == 0 ? Side::Right : Side::Left; }
  Side holder_of(int value) const;

  friend bool operator==(const GameState& a, const GameState& b);

 private:
  std::array<Card, kMaxModelDeck> cards_{};
  std::uint8_t n_ = 0;
  std::uint8_t split_ = 0;
};

Side trick_winner(const GameState& state, ComparisonRule rule);

GameState resolve_trick(const GameState& state, PlacementOrder order, ComparisonRule rule);

// Index 0 is the OwnFirst successor, index 1 the RivalFirst successor.
std::array<GameState, 2> successors(const GameState& state, ComparisonRule rule);

struct Predecessor {
  GameState state;
  Side winner = Side::Left;
  PlacementOrder order = PlacementOrder::OwnFirst;
};

// At most two predecessors exist, so they live inline.
class PredecessorList {
 public:
  void push_back(const Predecessor& p) { items_[count_++] = p; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  const Predecessor& operator[](std::size_t i) const { return items_[i]; }
  const Predecessor* begin() const { return items_.data(); }
  const Predecessor* end() const { return items_.data() + count_; }

 private:
  std::array<Predecessor, 2> items_{};
  std::size_t count_ = 0;
};

PredecessorList predecessors(const GameState& state, ComparisonRule rule);

// Deal text: "L: 3 1 ; R: 2 4", top card first, "-" for an empty hand.
std::string to_string(const GameState& state);
GameState parse_deal(std::string_view text);

std::string to_string(ComparisonRule rule);
std::string to_string(PlacementOrder order);
std::string to_string(Side side);
ComparisonRule parse_rule(std::string_view text);

}  // namespace wargraph
