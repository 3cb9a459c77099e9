#include "wargraph/classic_game.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <limits>
#include <sstream>

#include "wargraph/parallel.hpp"

namespace wargraph {

namespace {

constexpr std::string_view kRankChars = "23456789TJQKA";
constexpr std::string_view kSuitChars = "HCDS";

}  // namespace

std::string to_string(ClassicCard card) {
  return {kRankChars[static_cast<std::size_t>(card.rank - kLowestRank)], kSuitChars[static_cast<std::size_t>(card.suit)]};
}

ClassicCard parse_card(std::string_view token) {
  if (token.size() != 2) throw RuleError("bad card token '" + std::string(token) + "'");
  const auto r = kRankChars.find(static_cast<char>(std::toupper(static_cast<unsigned char>(token[0]))));
  const auto s = kSuitChars.find(static_cast<char>(std::toupper(static_cast<unsigned char>(token[1]))));
  if (r == std::string_view::npos || s == std::string_view::npos) {
    throw RuleError("bad card token '" + std::string(token) + "'");
  }
  return {static_cast<int>(r) + kLowestRank, static_cast<Suit>(s)};
}

std::vector<ClassicCard> standard_deck() {
  std::vector<ClassicCard> deck;
  deck.reserve(kClassicDeckSize);
  for (int s = 0; s < 4; ++s) {
    for (int r = kLowestRank; r <= kAce; ++r) deck.push_back({r, static_cast<Suit>(s)});
  }
  return deck;
}

namespace {

void append_hand(std::ostringstream& os, const std::deque<ClassicCard>& hand) {
  if (hand.empty()) {
    os << '-';
    return;
  }
  for (std::size_t i = 0; i < hand.size(); ++i) {
    if (i) os << ' ';
    os << to_string(hand[i]);
  }
}

std::deque<ClassicCard> parse_hand(std::string_view part, char label) {
  std::istringstream is{std::string(part)};
  std::string head;
  is >> head;
  if (head != std::string{label, ':'}) throw RuleError(std::string("classic deal: expected '") + label + ":'");
  std::deque<ClassicCard> hand;
  std::string token;
  while (is >> token) {
    if (token == "-" && hand.empty()) continue;
    hand.push_back(parse_card(token));
  }
  return hand;
}

}  // namespace

std::string to_string(const ClassicState& state) {
  std::ostringstream os;
  os << "L: ";
  append_hand(os, state.left);
  os << " ; R: ";
  append_hand(os, state.right);
  return os.str();
}

ClassicState parse_classic_deal(std::string_view text) {
  const auto semi = text.find(';');
  if (semi == std::string_view::npos) throw RuleError("classic deal: missing ';' between hands");
  ClassicState s{parse_hand(text.substr(0, semi), 'L'), parse_hand(text.substr(semi + 1), 'R')};
  validate_classic_deal(s, false);
  return s;
}

void validate_classic_deal(const ClassicState& state, bool require_even_split) {
  if (state.left.size() + state.right.size() != kClassicDeckSize) {
    throw RuleError("classic deal must hold 52 cards");
  }
  std::array<bool, kClassicDeckSize> seen{};
  for (const auto* hand : {&state.left, &state.right}) {
    for (const auto& c : *hand) {
      if (c.rank < kLowestRank || c.rank > kAce) throw RuleError("classic card rank out of range");
      const auto idx = static_cast<std::size_t>(c.suit) * 13 + static_cast<std::size_t>(c.rank - kLowestRank);
      if (seen[idx]) throw RuleError("duplicate card " + to_string(c));
      seen[idx] = true;
    }
  }
  if (require_even_split && state.left.size() != state.right.size()) {
    throw RuleError("classic deal must split 26/26");
  }
}

ClassicState random_classic_deal(std::uint64_t seed) {
  auto engine = trial_engine(seed, 0);
  auto deck = standard_deck();
  std::shuffle(deck.begin(), deck.end(), engine);
  const auto half = static_cast<std::ptrdiff_t>(kClassicDeckSize / 2);
  return {{deck.begin(), deck.begin() + half}, {deck.begin() + half, deck.end()}};
}

std::vector<int> rank_sequence(const std::deque<ClassicCard>& hand) {
  std::vector<int> ranks;
  ranks.reserve(hand.size());
  for (const auto& c : hand) ranks.push_back(c.rank);
  return ranks;
}

void WarConfig::validate() const {
  if (face_down_count < 0) throw RuleError("face_down_count must be non-negative");
}

namespace {

template <typename ChooseOrder>
ClassicTrick play_trick(ClassicState& state, const WarConfig& config, ChooseOrder&& choose) {
  if (state.is_final()) throw RuleError("no trick can be played from a final classic state");
  ClassicTrick trick;
  std::vector<ClassicCard> laid_left;
  std::vector<ClassicCard> laid_right;
  auto lay = [&](int count) {
    for (int i = 0; i < count; ++i) {
      laid_left.push_back(state.left.front());
      state.left.pop_front();
      laid_right.push_back(state.right.front());
      state.right.pop_front();
    }
    trick.cards_laid += 2 * count;
  };
  auto collect = [&](Side winner) {
    const auto order = choose(winner);
    const auto& own = winner == Side::Left ? laid_left : laid_right;
    const auto& rival = winner == Side::Left ? laid_right : laid_left;
    auto& dest = state.hand(winner);
    const auto& first = order == PlacementOrder::OwnFirst ? own : rival;
    const auto& second = order == PlacementOrder::OwnFirst ? rival : own;
    dest.insert(dest.end(), first.begin(), first.end());
    dest.insert(dest.end(), second.begin(), second.end());
  };

  for (;;) {
    lay(1);
    const int a = laid_left.back().rank;
    const int b = laid_right.back().rank;
    if (a != b) {
      trick.winner = a > b ? Side::Left : Side::Right;
      collect(trick.winner);
      return trick;
    }
    ++trick.war_rounds;
    const auto need = static_cast<std::size_t>(config.face_down_count + 1);
    const bool left_short = state.left.size() < need;
    const bool right_short = state.right.size() < need;
    if (left_short || right_short) {
      std::optional<Side> loser;
      if (left_short && right_short) {
        if (state.left.size() != state.right.size()) {
          loser = state.left.size() < state.right.size() ? Side::Left : Side::Right;
        }
      } else {
        loser = left_short ? Side::Left : Side::Right;
      }
      if (!loser) {
        state.left.insert(state.left.end(), laid_left.begin(), laid_left.end());
        state.right.insert(state.right.end(), laid_right.begin(), laid_right.end());
        trick.end = TrickEnd::Draw;
        return trick;
      }
      trick.winner = opposite(*loser);
      trick.end = TrickEnd::Exhaustion;
      collect(trick.winner);
      auto& rest = state.hand(*loser);
      auto& dest = state.hand(trick.winner);
      dest.insert(dest.end(), rest.begin(), rest.end());
      rest.clear();
      return trick;
    }
    lay(config.face_down_count);
  }
}

}  // namespace

ClassicTrick play_classic_trick(ClassicState& state, PlacementOrder order, const WarConfig& config) {
  return play_trick(state, config, [order](Side) { return order; });
}

ClassicTrick play_classic_trick(ClassicState& state, const PlacementProbabilities& probs, double u,
                                const WarConfig& config) {
  return play_trick(state, config, [&](Side winner) {
    return u < probs(winner, PlacementOrder::OwnFirst) ? PlacementOrder::OwnFirst : PlacementOrder::RivalFirst;
  });
}

ClassicTrick play_classic_trick(ClassicState& state, DeterministicPolicy policy, const WarConfig& config) {
  return play_trick(state, config, [policy](Side winner) { return order_for(policy, winner); });
}

ClassicTrickResult resolve_classic_trick(const ClassicState& state, PlacementOrder order, const WarConfig& config) {
  ClassicTrickResult result{state, {}};
  result.trick = play_classic_trick(result.state, order, config);
  return result;
}

GameRecord simulate_classic(const ClassicState& deal, const PlacementProbabilities& probs, const WarConfig& config,
                            std::uint64_t seed, std::uint64_t max_steps) {
  validate_classic_deal(deal);
  probs.validate();
  config.validate();
  auto engine = trial_engine(seed, 1);
  GameRecord record;
  record.deal = deal;
  ClassicState state = deal;
  while (!state.is_final() && record.moves < max_steps) {
    const auto trick = play_classic_trick(state, probs, unit_uniform(engine), config);
    ++record.moves;
    record.wars += static_cast<std::uint64_t>(trick.war_rounds);
    record.cards_laid += static_cast<std::uint64_t>(trick.cards_laid);
    if (trick.end == TrickEnd::Draw) {
      record.draw = true;
      return record;
    }
  }
  if (state.is_final()) {
    record.winner = state.left.empty() ? Side::Right : Side::Left;
  } else {
    record.truncated = true;
  }
  return record;
}

std::uint64_t classic_trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return splitmix64(seed ^ splitmix64(trial + 0x5851f42d4c957f2dull));
}

ClassicSummary monte_carlo_classic(std::uint64_t trials, const PlacementProbabilities& probs,
                                   const WarConfig& config, std::uint64_t seed, std::uint64_t max_steps,
                                   std::span<const std::int64_t> survival_ks, unsigned threads) {
  if (trials == 0) throw RuleError("monte_carlo_classic needs at least one trial");
  probs.validate();
  config.validate();
  for (auto k : survival_ks) {
    if (k < 0) throw RuleError("survival step counts must be non-negative");
  }

  struct Outcome {
    std::uint64_t moves = 0;
    std::uint64_t wars = 0;
    std::int8_t result = 0;  // 0 truncated, 1 left, 2 right, 3 draw
  };
  std::vector<Outcome> outcomes(trials);
  parallel_for(trials, threads, [&](std::uint64_t i) {
    const auto s = classic_trial_seed(seed, i);
    const auto rec = simulate_classic(random_classic_deal(s), probs, config, s, max_steps);
    Outcome o{rec.moves, rec.wars, 0};
    if (rec.draw) {
      o.result = 3;
    } else if (rec.winner) {
      o.result = *rec.winner == Side::Left ? 1 : 2;
    }
    outcomes[i] = o;
  });

  ClassicSummary summary;
  std::uint64_t completed = 0;
  std::uint64_t sum = 0;
  unsigned __int128 sum_sq = 0;
  std::vector<std::uint64_t> alive(survival_ks.size(), 0);
  for (const auto& o : outcomes) {
    summary.wars += o.wars;
    for (std::size_t j = 0; j < survival_ks.size(); ++j) {
      if (o.result == 0 || o.moves > static_cast<std::uint64_t>(survival_ks[j])) ++alive[j];
    }
    if (o.result == 0) continue;
    if (o.result == 3) {
      ++summary.draws;
      continue;
    }
    (o.result == 1 ? summary.left_wins : summary.right_wins) += 1;
    ++completed;
    sum += o.moves;
    sum_sq += static_cast<unsigned __int128>(o.moves) * o.moves;
  }
  summary.moves = summarize_lengths(trials - summary.draws, completed, sum, sum_sq);
  for (std::size_t j = 0; j < survival_ks.size(); ++j) {
    summary.survival.push_back({survival_ks[j], static_cast<double>(alive[j]) / static_cast<double>(trials)});
  }
  return summary;
}

DeterministicRun advance_classic(const ClassicState& start, DeterministicPolicy policy, int moves,
                                 const WarConfig& config) {
  DeterministicRun run{start, 0, 0, start.is_final()};
  while (run.moves_played < moves && !run.finished) {
    const auto trick = play_classic_trick(run.state, policy, config);
    ++run.moves_played;
    run.wars += trick.war_rounds;
    run.finished = trick.end != TrickEnd::Continue || run.state.is_final();
  }
  return run;
}

ValueCycleCheck verify_value_cycle(const ClassicState& deal, DeterministicPolicy policy, const WarConfig& config) {
  validate_classic_deal(deal);
  const auto left0 = rank_sequence(deal.left);
  const auto right0 = rank_sequence(deal.right);
  ValueCycleCheck check;
  ClassicState state = deal;
  bool restored_at_end = false;
  for (int k = 1; k <= kValueCycleMoves; ++k) {
    const auto trick = play_classic_trick(state, policy, config);
    check.wars_encountered += trick.war_rounds;
    if (trick.end != TrickEnd::Continue || state.is_final()) {
      check.terminated = true;
      break;
    }
    const bool restored = rank_sequence(state.left) == left0 && rank_sequence(state.right) == right0;
    if (restored && check.period_in_values == 0) check.period_in_values = k;
    if (k == kValueCycleMoves) restored_at_end = restored;
  }
  check.ok = !check.terminated && check.wars_encountered == 0 && restored_at_end;
  return check;
}

}  // namespace wargraph
