#pragma once

// Dense ranking of model-game states. A state is a permutation of the deck plus
// a split point, so rank = lehmer_rank(left ++ right) * (n + 1) + |left| covers
// [0, (n+1)!) without gaps.

#include <cstdint>
#include <iterator>
#include <span>

#include "wargraph/core_rules.hpp"

namespace wargraph {

using StateRank = std::uint64_t;

std::uint64_t factorial(int n);

/// (n+1)!; throws RuleError unless 2 <= n <= kMaxModelDeck.
std::uint64_t state_count(int n);
std::uint64_t final_state_count(int n);

std::uint64_t permutation_rank(std::span<const Card> perm);
void permutation_unrank(std::uint64_t rank, std::span<Card> out);

StateRank encode(const GameState& state);
GameState decode(StateRank rank, int n);

struct StateSpaceStats {
  int n = 0;
  std::uint64_t total_states = 0;
  std::uint64_t final_states = 0;
  std::uint64_t nonfinal_states = 0;
};

StateSpaceStats state_space_stats(int n);

/// Forward range over every state of an n-card deck in increasing rank order.
class StateRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = GameState;
    using difference_type = std::ptrdiff_t;
    using pointer = const GameState*;
    using reference = GameState;

    iterator() = default;
    iterator(StateRank rank, int n) : rank_(rank), n_(n) {}

    GameState operator*() const { return decode(rank_, n_); }
    StateRank rank() const { return rank_; }
    iterator& operator++() {
      ++rank_;
      return *this;
    }
    iterator operator++(int) {
      auto copy = *this;
      ++rank_;
      return copy;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.rank_ == b.rank_; }

   private:
    StateRank rank_ = 0;
    int n_ = 0;
  };

  explicit StateRange(int n) : n_(n), count_(state_count(n)) {}

  iterator begin() const { return {0, n_}; }
  iterator end() const { return {count_, n_}; }
  std::uint64_t size() const { return count_; }

 private:
  int n_;
  std::uint64_t count_;
};

inline StateRange enumerate_states(int n) { return StateRange(n); }

/// Visits every equal-split state (|left| = n/2) in increasing rank order.
template <typename F>
void for_each_equal_split(int n, F&& visit) {
  const std::uint64_t perms = factorial(n);
  const auto half = static_cast<StateRank>(n / 2);
  for (std::uint64_t p = 0; p < perms; ++p) {
    visit(decode(p * static_cast<StateRank>(n + 1) + half, n));
  }
}

}  // namespace wargraph
