#include "wargraph/core_rules.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace wargraph {

void DeckSpec::validate() const {
  if (n < 2 || n > kMaxModelDeck || n % 2 != 0) {
    throw RuleError("deck size must be even and in [2, " + std::to_string(kMaxModelDeck) +
                    "], got " + std::to_string(n));
  }
}

int compare(int u, int v, ComparisonRule rule, int n) {
  if (u == v) throw RuleError("compare: equal card values cannot meet in the model game");
  if (u < 1 || v < 1 || u > n || v > n) throw RuleError("compare: card value outside [1, n]");
  if (rule == ComparisonRule::CyclicLowBeatsHigh && std::min(u, v) == 1 && std::max(u, v) == n) {
    return 1;
  }
  return std::max(u, v);
}

GameState GameState::from_hands(std::span<const int> left, std::span<const int> right) {
  const std::size_t n = left.size() + right.size();
  if (n < 2 || n > static_cast<std::size_t>(kMaxModelDeck)) {
    throw RuleError("state must hold between 2 and " + std::to_string(kMaxModelDeck) + " cards");
  }
  std::array<bool, kMaxModelDeck + 1> seen{};
  GameState s;
  s.n_ = static_cast<std::uint8_t>(n);
  s.split_ = static_cast<std::uint8_t>(left.size());
  std::size_t i = 0;
  auto put = [&](int v) {
    if (v < 1 || v > static_cast<int>(n)) {
      throw RuleError("card value " + std::to_string(v) + " outside [1, " + std::to_string(n) + "]");
    }
    if (seen[v]) throw RuleError("duplicate card value " + std::to_string(v));
    seen[v] = true;
    s.cards_[i++] = static_cast<Card>(v);
  };
  for (int v : left) put(v);
  for (int v : right) put(v);
  return s;
}

GameState GameState::from_hands(std::initializer_list<int> left, std::initializer_list<int> right) {
  return from_hands(std::span<const int>(left.begin(), left.size()),
                    std::span<const int>(right.begin(), right.size()));
}

GameState GameState::from_sequence(std::span<const Card> sequence, int split) {
  GameState s;
  s.n_ = static_cast<std::uint8_t>(sequence.size());
  s.split_ = static_cast<std::uint8_t>(split);
  std::copy(sequence.begin(), sequence.end(), s.cards_.begin());
  return s;
}

Side GameState::holder_of(int value) const {
  const auto l = left();
  return std::find(l.begin(), l.end(), value) != l.end() ? Side::Left : Side::Right;
}

bool operator==(const GameState& a, const GameState& b) {
  return a.n_ == b.n_ && a.split_ == b.split_ &&
         std::equal(a.cards_.begin(), a.cards_.begin() + a.n_, b.cards_.begin());
}

Side trick_winner(const GameState& state, ComparisonRule rule) {
  if (state.is_final()) throw RuleError("no trick can be played from a final state");
  const int a = state.left()[0];
  const int b = state.right()[0];
  return compare(a, b, rule, state.deck_size()) == a ? Side::Left : Side::Right;
}

GameState resolve_trick(const GameState& state, PlacementOrder order, ComparisonRule rule) {
  const Side winner = trick_winner(state, rule);
  const auto seq = state.sequence();
  const int split = state.left_size();
  const Card own = winner == Side::Left ? seq[0] : seq[split];
  const Card rival = winner == Side::Left ? seq[split] : seq[0];
  const Card deeper = order == PlacementOrder::OwnFirst ? own : rival;
  const Card bottom = order == PlacementOrder::OwnFirst ? rival : own;

  std::array<Card, kMaxModelDeck> out{};
  std::size_t k = 0;
  for (int i = 1; i < split; ++i) out[k++] = seq[i];
  if (winner == Side::Left) {
    out[k++] = deeper;
    out[k++] = bottom;
  }
  for (std::size_t i = split + 1; i < seq.size(); ++i) out[k++] = seq[i];
  if (winner == Side::Right) {
    out[k++] = deeper;
    out[k++] = bottom;
  }
  const int new_split = winner == Side::Left ? split + 1 : split - 1;
  return GameState::from_sequence(std::span<const Card>(out.data(), k), new_split);
}

std::array<GameState, 2> successors(const GameState& state, ComparisonRule rule) {
  return {resolve_trick(state, PlacementOrder::OwnFirst, rule),
          resolve_trick(state, PlacementOrder::RivalFirst, rule)};
}

PredecessorList predecessors(const GameState& state, ComparisonRule rule) {
  PredecessorList result;
  const int n = state.deck_size();
  const auto left = state.left();
  const auto right = state.right();
  std::array<Card, kMaxModelDeck> buf{};

  if (left.size() >= 2) {
    const Card u = left[left.size() - 2];
    const Card v = left[left.size() - 1];
    const Card w = static_cast<Card>(compare(u, v, rule, n));
    const Card l = w == u ? v : u;
    std::size_t k = 0;
    buf[k++] = w;
    for (std::size_t i = 0; i + 2 < left.size(); ++i) buf[k++] = left[i];
    const int split = static_cast<int>(k);
    buf[k++] = l;
    for (Card c : right) buf[k++] = c;
    result.push_back({GameState::from_sequence(std::span<const Card>(buf.data(), k), split), Side::Left,
                      u == w ? PlacementOrder::OwnFirst : PlacementOrder::RivalFirst});
  }
  if (right.size() >= 2) {
    const Card u = right[right.size() - 2];
    const Card v = right[right.size() - 1];
    const Card w = static_cast<Card>(compare(u, v, rule, n));
    const Card l = w == u ? v : u;
    std::size_t k = 0;
    buf[k++] = l;
    for (Card c : left) buf[k++] = c;
    const int split = static_cast<int>(k);
    buf[k++] = w;
    for (std::size_t i = 0; i + 2 < right.size(); ++i) buf[k++] = right[i];
    result.push_back({GameState::from_sequence(std::span<const Card>(buf.data(), k), split), Side::Right,
                      u == w ? PlacementOrder::OwnFirst : PlacementOrder::RivalFirst});
  }
  return result;
}

namespace {

void append_hand(std::ostringstream& os, std::span<const Card> hand) {
  if (hand.empty()) {
    os << '-';
    return;
  }
  for (std::size_t i = 0; i < hand.size(); ++i) {
    if (i) os << ' ';
    os << static_cast<int>(hand[i]);
  }
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<int> parse_hand(std::string_view part, char label) {
  part = trim(part);
  if (part.size() < 2 || part[0] != label || part[1] != ':') {
    throw RuleError(std::string("deal text: expected '") + label + ":' section");
  }
  part = trim(part.substr(2));
  std::vector<int> cards;
  if (part == "-") return cards;
  std::size_t pos = 0;
  while (pos < part.size()) {
    const auto next = part.find_first_of(" \t", pos);
    const auto token = part.substr(pos, next == std::string_view::npos ? part.size() - pos : next - pos);
    if (!token.empty()) {
      int value = 0;
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw RuleError("deal text: bad card token '" + std::string(token) + "'");
      }
      cards.push_back(value);
    }
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  if (cards.empty()) throw RuleError("deal text: empty hand must be written as '-'");
  return cards;
}

}  // namespace

std::string to_string(const GameState& state) {
  std::ostringstream os;
  os << "L: ";
  append_hand(os, state.left());
  os << " ; R: ";
  append_hand(os, state.right());
  return os.str();
}

GameState parse_deal(std::string_view text) {
  const auto semi = text.find(';');
  if (semi == std::string_view::npos) throw RuleError("deal text: missing ';' between hands");
  const auto left = parse_hand(text.substr(0, semi), 'L');
  const auto right = parse_hand(text.substr(semi + 1), 'R');
  return GameState::from_hands(left, right);
}

std::string to_string(ComparisonRule rule) {
  return rule == ComparisonRule::Standard ? "standard" : "cyclic";
}

std::string to_string(PlacementOrder order) {
  return order == PlacementOrder::OwnFirst ? "own-first" : "rival-first";
}

std::string to_string(Side side) { return side == Side::Left ? "left" : "right"; }

ComparisonRule parse_rule(std::string_view text) {
  if (text == "standard") return ComparisonRule::Standard;
  if (text == "cyclic") return ComparisonRule::CyclicLowBeatsHigh;
  throw RuleError("unknown comparison rule '" + std::string(text) + "' (expected standard|cyclic)");
}

}  // namespace wargraph
