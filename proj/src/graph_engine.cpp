#include "wargraph/graph_engine.hpp"

#include <algorithm>

namespace wargraph {

bool allows(EdgeFilter filter, Side winner, PlacementOrder order) {
  switch (filter) {
    case EdgeFilter::BothOrders:
      return true;
    case EdgeFilter::OwnFirstOnly:
      return order == PlacementOrder::OwnFirst;
    case EdgeFilter::RivalFirstOnly:
      return order == PlacementOrder::RivalFirst;
    case EdgeFilter::SeatLeftFirstOnly:
      return order == (winner == Side::Left ? PlacementOrder::OwnFirst : PlacementOrder::RivalFirst);
    case EdgeFilter::SeatRightFirstOnly:
      return order == (winner == Side::Left ? PlacementOrder::RivalFirst : PlacementOrder::OwnFirst);
  }
  return false;
}

PlacementOrder forced_order(EdgeFilter filter, Side winner) {
  if (filter == EdgeFilter::BothOrders) throw RuleError("BothOrders does not force a placement order");
  return allows(filter, winner, PlacementOrder::OwnFirst) ? PlacementOrder::OwnFirst : PlacementOrder::RivalFirst;
}

bool edge_subset(EdgeFilter sub, EdgeFilter super) {
  return super == EdgeFilter::BothOrders || sub == super;
}

std::string to_string(EdgeFilter filter) {
  switch (filter) {
    case EdgeFilter::BothOrders:
      return "both";
    case EdgeFilter::OwnFirstOnly:
      return "own-first";
    case EdgeFilter::RivalFirstOnly:
      return "rival-first";
    case EdgeFilter::SeatLeftFirstOnly:
      return "seat-left";
    case EdgeFilter::SeatRightFirstOnly:
      return "seat-right";
  }
  return "?";
}

EdgeFilter parse_edge_filter(std::string_view text) {
  for (auto f : {EdgeFilter::BothOrders, EdgeFilter::OwnFirstOnly, EdgeFilter::RivalFirstOnly,
                 EdgeFilter::SeatLeftFirstOnly, EdgeFilter::SeatRightFirstOnly}) {
    if (text == to_string(f)) return f;
  }
  throw RuleError("unknown edge filter '" + std::string(text) +
                  "' (expected both|own-first|rival-first|seat-left|seat-right)");
}

GameGraph::GameGraph(int n, ComparisonRule rule, EdgeFilter filter)
    : n_(n), rule_(rule), filter_(filter), vertices_(state_count(n)) {}

EdgeList GameGraph::out_edges(const GameState& state) const {
  EdgeList edges;
  if (state.is_final()) return edges;
  const Side winner = trick_winner(state, rule_);
  for (auto order : {PlacementOrder::OwnFirst, PlacementOrder::RivalFirst}) {
    if (allows(filter_, winner, order)) edges.push_back({order, resolve_trick(state, order, rule_)});
  }
  return edges;
}

PredecessorList GameGraph::in_edges(const GameState& state) const {
  PredecessorList kept;
  for (const auto& p : predecessors(state, rule_)) {
    if (allows(filter_, p.winner, p.order)) kept.push_back(p);
  }
  return kept;
}

ReachabilityReport attaining_set(const GameGraph& graph, std::size_t sample_cap) {
  const int n = graph.deck_size();
  const std::uint64_t total = graph.vertex_count();
  const auto width = static_cast<StateRank>(n + 1);

  ReachabilityReport report{graph, Bitset(total), 0, 0, {}, {}, 0};
  report.distance.assign(total, ReachabilityReport::kUnreached);

  std::vector<StateRank> queue;
  queue.reserve(total);
  for (StateRank r = 0; r < total; ++r) {
    const auto split = r % width;
    if (split == 0 || split == static_cast<StateRank>(n)) {
      report.distance[r] = 0;
      queue.push_back(r);
    }
  }

  std::uint16_t deepest = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const StateRank r = queue[head];
    const std::uint16_t d = report.distance[r];
    if (d + 1 >= ReachabilityReport::kUnreached) throw RuleError("BFS depth exceeds distance storage");
    for (const auto& p : graph.in_edges(decode(r, n))) {
      const StateRank pr = encode(p.state);
      if (report.distance[pr] == ReachabilityReport::kUnreached) {
        report.distance[pr] = static_cast<std::uint16_t>(d + 1);
        deepest = std::max<std::uint16_t>(deepest, d + 1);
        queue.push_back(pr);
      }
    }
  }

  for (StateRank r : queue) report.attaining.set(r);
  report.attaining_count = queue.size();
  report.wandering_count = total - report.attaining_count;
  report.layers = deepest + 1;

  if (report.wandering_count > 0) {
    for (StateRank r = 0; r < total && report.wandering_samples.size() < sample_cap; ++r) {
      if (!report.attaining.test(r)) report.wandering_samples.push_back(decode(r, n));
    }
  }
  return report;
}

DegreeAudit degree_audit(int n, ComparisonRule rule) {
  const std::uint64_t total = state_count(n);
  DegreeAudit audit;
  std::vector<std::uint8_t> in_degree(total, 0);

  for (StateRank r = 0; r < total; ++r) {
    const GameState s = decode(r, n);
    if (s.is_final()) continue;
    const auto succ = successors(s, rule);
    if (succ[0] == succ[1]) ++audit.out_degree_violations;
    audit.out_degree_sum += 2;
    for (const auto& t : succ) ++in_degree[encode(t)];
  }

  for (StateRank r = 0; r < total; ++r) {
    const GameState s = decode(r, n);
    ++audit.checked_states;
    const std::uint64_t expected = (s.left_size() >= 2 ? 1 : 0) + (s.right_size() >= 2 ? 1 : 0);
    const auto preds = predecessors(s, rule);
    bool ok = in_degree[r] == expected && preds.size() == expected;
    for (const auto& p : preds) {
      const auto succ = successors(p.state, rule);
      if (!(succ[0] == s || succ[1] == s)) ok = false;
    }
    if (!ok) ++audit.in_degree_violations;
    audit.in_degree_sum += in_degree[r];
  }
  return audit;
}

PathWitness path_to_final(const GameState& start, const ReachabilityReport& report) {
  const StateRank r0 = encode(start);
  if (report.distance.at(r0) == ReachabilityReport::kUnreached) throw WanderingStateError(start);

  PathWitness path{start, {}};
  GameState current = start;
  std::uint16_t d = report.distance[r0];
  while (d > 0) {
    bool advanced = false;
    for (const auto& e : report.graph.out_edges(current)) {
      if (report.distance[encode(e.target)] == d - 1) {
        path.steps.push_back({e.order, e.target});
        current = e.target;
        --d;
        advanced = true;
        break;
      }
    }
    if (!advanced) throw RuleError("inconsistent BFS distances at " + to_string(current));
  }
  return path;
}

bool replay(const PathWitness& path, const GameGraph& graph) {
  GameState current = path.start;
  for (const auto& step : path.steps) {
    if (current.is_final()) return false;
    const Side winner = trick_winner(current, graph.rule());
    if (!allows(graph.filter(), winner, step.order)) return false;
    current = resolve_trick(current, step.order, graph.rule());
    if (!(current == step.state)) return false;
  }
  return current.is_final();
}

bool wandering_closure_check(const ReachabilityReport& report) {
  const auto& graph = report.graph;
  const int n = graph.deck_size();
  const bool check_in_edges = graph.filter() == EdgeFilter::BothOrders;
  for (StateRank r = 0; r < graph.vertex_count(); ++r) {
    if (report.attaining.test(r)) continue;
    const GameState s = decode(r, n);
    for (const auto& e : graph.out_edges(s)) {
      if (report.attaining.test(encode(e.target))) return false;
    }
    if (check_in_edges) {
      for (const auto& p : graph.in_edges(s)) {
        if (report.attaining.test(encode(p.state))) return false;
      }
    }
  }
  return true;
}

bool subgraph_monotonicity(const ReachabilityReport& sub, const ReachabilityReport& super) {
  if (!edge_subset(sub.graph.filter(), super.graph.filter())) {
    throw RuleError("subgraph_monotonicity: " + to_string(sub.graph.filter()) + " is not an edge subset of " +
                    to_string(super.graph.filter()));
  }
  // wandering(super) within wandering(sub)  <=>  attaining(sub) within attaining(super)
  return sub.attaining.is_subset_of(super.attaining);
}

bool subgraph_monotonicity(int n, ComparisonRule rule, EdgeFilter sub, EdgeFilter super) {
  if (!edge_subset(sub, super)) {
    throw RuleError("subgraph_monotonicity: " + to_string(sub) + " is not an edge subset of " + to_string(super));
  }
  return subgraph_monotonicity(attaining_set(GameGraph(n, rule, sub)), attaining_set(GameGraph(n, rule, super)));
}

Bitset attaining_vertices(const ExplicitDigraph& g) {
  const int size = g.size();
  std::vector<std::vector<int>> in(size);
  for (int v = 0; v < size; ++v) {
    for (int w : g.out[v]) in[w].push_back(v);
  }
  Bitset seen(size);
  std::vector<int> queue;
  for (int v = 0; v < size; ++v) {
    if (g.is_final[v]) {
      seen.set(v);
      queue.push_back(v);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (int p : in[queue[head]]) {
      if (!seen.test(p)) {
        seen.set(p);
        queue.push_back(p);
      }
    }
  }
  return seen;
}

bool successor_closed(const ExplicitDigraph& g, const Bitset& wandering) {
  for (int v = 0; v < g.size(); ++v) {
    if (!wandering.test(v)) continue;
    for (int w : g.out[v]) {
      if (!wandering.test(w)) return false;
    }
  }
  return true;
}

}  // namespace wargraph
