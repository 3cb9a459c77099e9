#pragma once

// The directed game graph over all model states, and the structural checks
// run on it: reverse reachability from final states, degree audits, path
// witnesses, successor-closure of the wandering set, and subgraph monotonicity.

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wargraph/core_rules.hpp"
#include "wargraph/state_space.hpp"

namespace wargraph {

// Seat filters place the LEFT (resp. RIGHT) player's card first no matter who
// won the trick.
enum class EdgeFilter { BothOrders, OwnFirstOnly, RivalFirstOnly, SeatLeftFirstOnly, SeatRightFirstOnly };

bool allows(EdgeFilter filter, Side winner, PlacementOrder order);

/// Single-order filters only; BothOrders has no unique order.
PlacementOrder forced_order(EdgeFilter filter, Side winner);

/// True when every edge kept by `sub` is also kept by `super`.
bool edge_subset(EdgeFilter sub, EdgeFilter super);

std::string to_string(EdgeFilter filter);
EdgeFilter parse_edge_filter(std::string_view text);

using Bitset = boost::dynamic_bitset<std::uint64_t>;

struct Edge {
  PlacementOrder order;
  GameState target;
};

class EdgeList {
 public:
  void push_back(const Edge& e) { items_[count_++] = e; }
  std::size_t size() const { return count_; }
  const Edge& operator[](std::size_t i) const { return items_[i]; }
  const Edge* begin() const { return items_.data(); }
  const Edge* end() const { return items_.data() + count_; }

 private:
  std::array<Edge, 2> items_{};
  std::size_t count_ = 0;
};

class GameGraph {
 public:
  GameGraph(int n, ComparisonRule rule, EdgeFilter filter = EdgeFilter::BothOrders);

  int deck_size() const { return n_; }
  ComparisonRule rule() const { return rule_; }
  EdgeFilter filter() const { return filter_; }
  std::uint64_t vertex_count() const { return vertices_; }

  EdgeList out_edges(const GameState& state) const;
  PredecessorList in_edges(const GameState& state) const;

 private:
  int n_;
  ComparisonRule rule_;
  EdgeFilter filter_;
  std::uint64_t vertices_;
};

struct ReachabilityReport {
  static constexpr std::uint16_t kUnreached = 0xFFFF;
  static constexpr std::size_t kDefaultSampleCap = 16;

  GameGraph graph;
  Bitset attaining;
  std::uint64_t attaining_count = 0;
  std::uint64_t wandering_count = 0;
  std::vector<GameState> wandering_samples;
  // Shortest number of moves to a final state, kUnreached for wandering states.
  std::vector<std::uint16_t> distance;
  int layers = 0;

  bool is_attaining(const GameState& s) const { return attaining.test(encode(s)); }
  bool absorbing() const { return wandering_count == 0; }
  int max_distance() const { return layers - 1; }
};

/// Multi-source reverse BFS from every final state over the filtered edge set.
ReachabilityReport attaining_set(const GameGraph& graph,
                                 std::size_t sample_cap = ReachabilityReport::kDefaultSampleCap);

struct DegreeAudit {
  std::uint64_t out_degree_violations = 0;
  std::uint64_t in_degree_violations = 0;
  std::uint64_t checked_states = 0;
  std::uint64_t out_degree_sum = 0;
  std::uint64_t in_degree_sum = 0;

  bool clean() const {
    return out_degree_violations == 0 && in_degree_violations == 0 && out_degree_sum == in_degree_sum;
  }
};

/// Counts in-degrees by forward enumeration of every edge and compares them
/// with [|L| >= 2] + [|R| >= 2] and with the analytic predecessor list.
DegreeAudit degree_audit(int n, ComparisonRule rule);

struct PathStep {
  PlacementOrder order;
  GameState state;
};

struct PathWitness {
  GameState start;
  std::vector<PathStep> steps;

  const GameState& end() const { return steps.empty() ? start : steps.back().state; }
};

class WanderingStateError : public std::runtime_error {
 public:
  explicit WanderingStateError(const GameState& s)
      : std::runtime_error("wandering: no final state is reachable from " + to_string(s)) {}
};

PathWitness path_to_final(const GameState& start, const ReachabilityReport& report);

/// Every step is a legal edge of `graph` and the path ends in a final state.
bool replay(const PathWitness& path, const GameGraph& graph);

/// Successor-closure of the wandering set; for BothOrders graphs, also checks
/// that no edge enters the wandering set from an attaining vertex.
bool wandering_closure_check(const ReachabilityReport& report);

/// Throws RuleError unless edge_subset(sub, super).
bool subgraph_monotonicity(int n, ComparisonRule rule, EdgeFilter sub, EdgeFilter super);
bool subgraph_monotonicity(const ReachabilityReport& sub, const ReachabilityReport& super);

/// Small explicit digraph, for checking the reachability notions on hand-built
/// examples.
struct ExplicitDigraph {
  std::vector<std::vector<int>> out;
  std::vector<bool> is_final;

  int size() const { return static_cast<int>(out.size()); }
  void add_edge(int from, int to) { out[from].push_back(to); }
};

Bitset attaining_vertices(const ExplicitDigraph& g);
bool successor_closed(const ExplicitDigraph& g, const Bitset& wandering);

}  // namespace wargraph
