#include "wargraph/state_space.hpp"

#include <array>
#include <bit>
#include <string>

namespace wargraph {

namespace {

void check_deck(int n) {
  if (n < 2 || n > kMaxModelDeck) {
    throw RuleError("deck size " + std::to_string(n) + " outside the indexable range [2, " +
                    std::to_string(kMaxModelDeck) + "]");
  }
}

}  // namespace

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::uint64_t state_count(int n) {
  check_deck(n);
  return factorial(n + 1);
}

std::uint64_t final_state_count(int n) {
  check_deck(n);
  return 2 * factorial(n);
}

std::uint64_t permutation_rank(std::span<const Card> perm) {
  const int n = static_cast<int>(perm.size());
  // bit v set while value v is still to the right of the cursor
  std::uint32_t remaining = 0;
  for (Card c : perm) remaining |= 1u << c;
  std::uint64_t rank = 0;
  for (int i = 0; i < n; ++i) {
    const std::uint32_t below = remaining & ((1u << perm[i]) - 1u);
    rank = rank * static_cast<std::uint64_t>(n - i) + static_cast<std::uint64_t>(std::popcount(below));
    remaining &= ~(1u << perm[i]);
  }
  return rank;
}

void permutation_unrank(std::uint64_t rank, std::span<Card> out) {
  const int n = static_cast<int>(out.size());
  std::array<int, kMaxModelDeck> digits{};
  for (int i = n - 1; i >= 0; --i) {
    const auto base = static_cast<std::uint64_t>(n - i);
    digits[i] = static_cast<int>(rank % base);
    rank /= base;
  }
  std::uint32_t available = 0;
  for (int v = 1; v <= n; ++v) available |= 1u << v;
  for (int i = 0; i < n; ++i) {
    std::uint32_t a = available;
    for (int skip = digits[i]; skip > 0; --skip) a &= a - 1;
    const int v = std::countr_zero(a);
    out[i] = static_cast<Card>(v);
    available &= ~(1u << v);
  }
}

StateRank encode(const GameState& state) {
  const int n = state.deck_size();
  check_deck(n);
  return permutation_rank(state.sequence()) * static_cast<StateRank>(n + 1) +
         static_cast<StateRank>(state.left_size());
}

GameState decode(StateRank rank, int n) {
  const std::uint64_t count = state_count(n);
  if (rank >= count) {
    throw RuleError("state rank " + std::to_string(rank) + " out of range for n = " + std::to_string(n));
  }
  std::array<Card, kMaxModelDeck> seq{};
  const auto width = static_cast<StateRank>(n + 1);
  permutation_unrank(rank / width, std::span<Card>(seq.data(), n));
  return GameState::from_sequence(std::span<const Card>(seq.data(), n), static_cast<int>(rank % width));
}

StateSpaceStats state_space_stats(int n) {
  StateSpaceStats s;
  s.n = n;
  s.total_states = state_count(n);
  s.final_states = final_state_count(n);
  s.nonfinal_states = s.total_states - s.final_states;
  return s;
}

}  // namespace wargraph
