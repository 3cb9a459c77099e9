#include "wargraph/cycle_search.hpp"

#include <optional>
#include <unordered_map>

#include "wargraph/state_space.hpp"

namespace wargraph {

EdgeFilter edge_filter_for(DeterministicPolicy policy) {
  switch (policy) {
    case DeterministicPolicy::OwnFirst:
      return EdgeFilter::OwnFirstOnly;
    case DeterministicPolicy::RivalFirst:
      return EdgeFilter::RivalFirstOnly;
    case DeterministicPolicy::SeatLeftFirst:
      return EdgeFilter::SeatLeftFirstOnly;
    case DeterministicPolicy::SeatRightFirst:
      return EdgeFilter::SeatRightFirstOnly;
  }
  return EdgeFilter::BothOrders;
}

PlacementOrder order_for(DeterministicPolicy policy, Side winner) {
  return forced_order(edge_filter_for(policy), winner);
}

std::string to_string(DeterministicPolicy policy) { return to_string(edge_filter_for(policy)); }

DeterministicPolicy parse_policy(std::string_view text) {
  for (auto p : kAllPolicies) {
    if (text == to_string(p)) return p;
  }
  throw RuleError("unknown policy '" + std::string(text) + "' (expected own-first|rival-first|seat-left|seat-right)");
}

GameState policy_step(const GameState& state, DeterministicPolicy policy, ComparisonRule rule) {
  return resolve_trick(state, order_for(policy, trick_winner(state, rule)), rule);
}

TrajectoryOutcome simulate_policy(const GameState& deal, DeterministicPolicy policy, ComparisonRule rule,
                                  std::uint64_t max_steps) {
  if (deal.is_final()) return Terminated{0, deal.holder_of_deck()};
  auto f = [&](const GameState& s) { return policy_step(s, policy, rule); };

  // Brent, phase 1: find the period. The hare walks the orbit one move at a
  // time, so it sees every state before any repetition and catches termination.
  std::uint64_t power = 1;
  std::uint64_t period = 1;
  std::uint64_t steps = 1;
  GameState tortoise = deal;
  GameState hare = f(deal);
  while (!(tortoise == hare)) {
    if (hare.is_final()) return Terminated{steps, hare.holder_of_deck()};
    if (steps >= max_steps) return Truncated{steps};
    if (power == period) {
      tortoise = hare;
      power *= 2;
      period = 0;
    }
    hare = f(hare);
    ++period;
    ++steps;
  }

  // Phase 2: the first repeated position.
  tortoise = deal;
  hare = deal;
  for (std::uint64_t i = 0; i < period; ++i) hare = f(hare);
  std::uint64_t pre_period = 0;
  while (!(tortoise == hare)) {
    tortoise = f(tortoise);
    hare = f(hare);
    ++pre_period;
  }
  return Cycle{pre_period, period};
}

std::vector<CycleCertificate> find_cycles(int n, DeterministicPolicy policy, ComparisonRule rule, bool all_states) {
  DeckSpec{n, rule}.validate();
  const std::uint64_t limit = 4 * state_count(n);
  std::vector<CycleCertificate> found;
  auto visit = [&](const GameState& deal) {
    const auto outcome = simulate_policy(deal, policy, rule, limit);
    if (const auto* c = std::get_if<Cycle>(&outcome)) {
      found.push_back({deal, policy, rule, c->pre_period, c->period});
    } else if (std::holds_alternative<Truncated>(outcome)) {
      throw RuleError("find_cycles: orbit of " + to_string(deal) + " exceeded the state count");
    }
  };
  if (all_states) {
    for (const auto& s : enumerate_states(n)) visit(s);
  } else {
    for_each_equal_split(n, visit);
  }
  return found;
}

bool verify_cycle(const CycleCertificate& c) {
  if (c.period == 0) return false;
  GameState s = c.deal;
  for (std::uint64_t i = 0; i < c.pre_period; ++i) {
    if (s.is_final()) return false;
    s = policy_step(s, c.policy, c.rule);
  }
  const GameState anchor = s;
  for (std::uint64_t i = 1; i <= c.period; ++i) {
    if (s.is_final()) return false;
    s = policy_step(s, c.policy, c.rule);
    if (s == anchor) return i == c.period;
  }
  return false;
}

ReachableWinners reachable_winners(const GameState& deal, ComparisonRule rule) {
  ReachableWinners result;
  const GameGraph graph(deal.deck_size(), rule);
  Bitset seen(graph.vertex_count());
  std::vector<GameState> stack{deal};
  seen.set(encode(deal));
  while (!stack.empty()) {
    const GameState s = stack.back();
    stack.pop_back();
    if (s.is_final()) {
      (s.holder_of_deck() == Side::Left ? result.left : result.right) = true;
      continue;
    }
    for (const auto& e : graph.out_edges(s)) {
      const auto r = encode(e.target);
      if (!seen.test(r)) {
        seen.set(r);
        stack.push_back(e.target);
      }
    }
  }
  return result;
}

namespace {

struct Parent {
  StateRank from;
  PlacementOrder order;
};

PathWitness rebuild_path(const GameState& deal, StateRank target, const std::unordered_map<StateRank, Parent>& parent,
                         int n) {
  std::vector<PathStep> reversed;
  const StateRank root = encode(deal);
  for (StateRank r = target; r != root;) {
    const auto& p = parent.at(r);
    reversed.push_back({p.order, decode(r, n)});
    r = p.from;
  }
  return {deal, {reversed.rbegin(), reversed.rend()}};
}

// Breadth-first forward search from the deal; returns shortest witnesses to a
// left win and a right win when both exist.
std::optional<TwoOutcomeCertificate> two_outcome_witness(const GameState& deal, const GameGraph& graph) {
  const int n = graph.deck_size();
  std::unordered_map<StateRank, Parent> parent;
  std::vector<StateRank> queue{encode(deal)};
  parent.emplace(queue.front(), Parent{queue.front(), PlacementOrder::OwnFirst});
  std::optional<StateRank> left_final;
  std::optional<StateRank> right_final;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const StateRank r = queue[head];
    const GameState s = decode(r, n);
    if (s.is_final()) {
      auto& slot = s.holder_of_deck() == Side::Left ? left_final : right_final;
      if (!slot) slot = r;
      continue;
    }
    for (const auto& e : graph.out_edges(s)) {
      const auto t = encode(e.target);
      if (parent.emplace(t, Parent{r, e.order}).second) queue.push_back(t);
    }
  }
  if (!left_final || !right_final) return std::nullopt;
  return TwoOutcomeCertificate{deal, graph.rule(), rebuild_path(deal, *left_final, parent, n),
                               rebuild_path(deal, *right_final, parent, n)};
}

}  // namespace

std::vector<TwoOutcomeCertificate> two_outcome_deals(int n, ComparisonRule rule) {
  DeckSpec{n, rule}.validate();
  if (n > 8) throw RuleError("two_outcome_deals is an exhaustive scan; n must be at most 8");
  const GameGraph graph(n, rule);
  std::vector<TwoOutcomeCertificate> found;
  for_each_equal_split(n, [&](const GameState& deal) {
    if (auto cert = two_outcome_witness(deal, graph)) found.push_back(std::move(*cert));
  });
  return found;
}

}  // namespace wargraph
