#include "wargraph/reports.hpp"

#include <cstdio>
#include <sstream>

namespace wargraph {

Json to_json(const PlacementProbabilities& p) {
  return {{"pL1", p.left_own_first}, {"pL2", p.left_rival_first}, {"pR1", p.right_own_first}, {"pR2", p.right_rival_first}};
}

Json analysis_report(const ReachabilityReport& report, const DegreeAudit& audit, double elapsed_ms) {
  Json samples = Json::array();
  for (const auto& s : report.wandering_samples) samples.push_back(to_string(s));
  return {{"n", report.graph.deck_size()},
          {"rule", to_string(report.graph.rule())},
          {"edge_filter", to_string(report.graph.filter())},
          {"total_states", report.graph.vertex_count()},
          {"attaining", report.attaining_count},
          {"wandering", report.wandering_count},
          {"wandering_samples", samples},
          {"max_distance_to_final", report.absorbing() ? report.max_distance() : -1},
          {"audit",
           {{"out_violations", audit.out_degree_violations},
            {"in_violations", audit.in_degree_violations},
            {"checked_states", audit.checked_states}}},
          {"elapsed_ms", elapsed_ms}};
}

Json solution_summary(const AbsorptionSolution& s) {
  return {{"n", s.n},
          {"rule", to_string(s.rule)},
          {"probs", to_json(s.probs)},
          {"solver", to_string(s.method)},
          {"mean_equal_split", s.mean_equal_split},
          {"max_state_expectation", s.max_state_expectation},
          {"residual", s.residual},
          {"iterations", s.iterations}};
}

std::string tail_csv(const TailCurve& curve) {
  std::ostringstream os;
  os << "k,p_alive\n";
  char buf[64];
  for (const auto& p : curve.points) {
    std::snprintf(buf, sizeof buf, "%.17g", p.p_alive);
    os << p.k << ',' << buf << '\n';
  }
  return os.str();
}

Json to_json(const TailCurve& curve) {
  Json points = Json::array();
  for (const auto& p : curve.points) points.push_back({{"k", p.k}, {"p_alive", p.p_alive}});
  return {{"initial_distribution", curve.initial_distribution},
          {"max_mass_error", curve.max_mass_error},
          {"points", points}};
}

Json to_json(const DecayCertificate& c) {
  return {{"N", c.window},
          {"q", c.q},
          {"verified_up_to", c.verified_up_to},
          {"holds", c.holds},
          {"worst_case_alive", c.worst_case_alive},
          {"equal_split_alive", c.equal_split_alive}};
}

Json to_json(const LengthSummary& s) {
  return {{"trials", s.trials},
          {"completed", s.completed},
          {"truncated", s.truncated},
          {"mean", s.mean},
          {"variance", s.variance},
          {"standard_error", s.standard_error},
          {"ci95_half_width", s.ci95_half_width}};
}

Json to_json(const PathWitness& path) {
  Json steps = Json::array();
  for (const auto& st : path.steps) steps.push_back({{"order", to_string(st.order)}, {"state", to_string(st.state)}});
  return {{"start", to_string(path.start)}, {"steps", steps}};
}

Json to_json(const CycleCertificate& c) {
  return {{"deal", to_string(c.deal)},
          {"policy", to_string(c.policy)},
          {"rule", to_string(c.rule)},
          {"pre_period", c.pre_period},
          {"period", c.period}};
}

CycleCertificate cycle_certificate_from_json(const Json& j) {
  try {
    return {parse_deal(j.at("deal").get<std::string>()), parse_policy(j.at("policy").get<std::string>()),
            parse_rule(j.at("rule").get<std::string>()), j.at("pre_period").get<std::uint64_t>(),
            j.at("period").get<std::uint64_t>()};
  } catch (const nlohmann::json::exception& e) {
    throw RuleError(std::string("malformed cycle certificate: ") + e.what());
  }
}

Json to_json(const TwoOutcomeCertificate& c) {
  return {{"deal", to_string(c.deal)},
          {"rule", to_string(c.rule)},
          {"left_win_path", to_json(c.left_win_path)},
          {"right_win_path", to_json(c.right_win_path)}};
}

Json to_json(const GameRecord& r) {
  return {{"deal", to_string(r.deal)},
          {"moves", r.moves},
          {"winner", r.winner ? Json(to_string(*r.winner)) : Json(nullptr)},
          {"draw", r.draw},
          {"wars", r.wars},
          {"cards_laid", r.cards_laid},
          {"truncated", r.truncated}};
}

Json to_json(const ClassicSummary& s) {
  Json survival = Json::array();
  for (const auto& p : s.survival) survival.push_back({{"k", p.k}, {"p_alive", p.p_alive}});
  return {{"moves", to_json(s.moves)},
          {"left_wins", s.left_wins},
          {"right_wins", s.right_wins},
          {"draws", s.draws},
          {"wars", s.wars},
          {"survival", survival}};
}

Json to_json(const ValueCycleCheck& c) {
  return {{"ok", c.ok},
          {"period_in_values", c.period_in_values},
          {"wars_encountered", c.wars_encountered},
          {"terminated", c.terminated}};
}

}  // namespace wargraph
