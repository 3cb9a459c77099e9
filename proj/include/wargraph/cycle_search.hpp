#pragma once

// Games under a fixed return policy are deterministic orbits in a finite state
// space, so each one either terminates or cycles. Brent's algorithm finds the
// cycle over exact states.

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wargraph/core_rules.hpp"
#include "wargraph/graph_engine.hpp"

namespace wargraph {

enum class DeterministicPolicy { OwnFirst, RivalFirst, SeatLeftFirst, SeatRightFirst };

inline constexpr DeterministicPolicy kAllPolicies[] = {DeterministicPolicy::OwnFirst, DeterministicPolicy::RivalFirst,
                                                       DeterministicPolicy::SeatLeftFirst,
                                                       DeterministicPolicy::SeatRightFirst};

EdgeFilter edge_filter_for(DeterministicPolicy policy);
PlacementOrder order_for(DeterministicPolicy policy, Side winner);

std::string to_string(DeterministicPolicy policy);
DeterministicPolicy parse_policy(std::string_view text);

GameState policy_step(const GameState& state, DeterministicPolicy policy, ComparisonRule rule);

struct Terminated {
  std::uint64_t steps = 0;
  Side winner = Side::Left;
};

struct Cycle {
  std::uint64_t pre_period = 0;
  std::uint64_t period = 0;
};

struct Truncated {
  std::uint64_t steps = 0;
};

using TrajectoryOutcome = std::variant<Terminated, Cycle, Truncated>;

/// max_steps bounds the moves simulated while searching for the period. Brent's
/// search can overshoot the first repetition by up to max(mu, lambda) moves.
TrajectoryOutcome simulate_policy(const GameState& deal, DeterministicPolicy policy, ComparisonRule rule,
                                  std::uint64_t max_steps);

struct CycleCertificate {
  GameState deal;
  DeterministicPolicy policy = DeterministicPolicy::SeatLeftFirst;
  ComparisonRule rule = ComparisonRule::Standard;
  std::uint64_t pre_period = 0;
  std::uint64_t period = 0;
};

/// Scans equal-split deals (or every state when all_states is set) in rank
/// order and returns one certificate per cycling deal.
std::vector<CycleCertificate> find_cycles(int n, DeterministicPolicy policy, ComparisonRule rule,
                                          bool all_states = false);

/// Re-simulates: no final state within pre_period + period moves, the state
/// after pre_period + period equals the one after pre_period, and no shorter
/// period exists.
bool verify_cycle(const CycleCertificate& certificate);

struct TwoOutcomeCertificate {
  GameState deal;
  ComparisonRule rule = ComparisonRule::Standard;
  PathWitness left_win_path;
  PathWitness right_win_path;
};

struct ReachableWinners {
  bool left = false;
  bool right = false;
};

/// Forward search over the BothOrders graph from `deal`.
ReachableWinners reachable_winners(const GameState& deal, ComparisonRule rule);

std::vector<TwoOutcomeCertificate> two_outcome_deals(int n, ComparisonRule rule);

}  // namespace wargraph
