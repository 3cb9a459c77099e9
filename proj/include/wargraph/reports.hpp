#pragma once

// Machine-readable report formats shared by the CLI and the tests.

#include <json.hpp>

#include <string>

#include "wargraph/classic_game.hpp"
#include "wargraph/cycle_search.hpp"
#include "wargraph/graph_engine.hpp"
#include "wargraph/markov_analysis.hpp"

namespace wargraph {

using Json = nlohmann::ordered_json;

Json to_json(const PlacementProbabilities& probs);

// { "n", "rule", "edge_filter", "total_states", "attaining", "wandering",
//   "audit": { "out_violations", "in_violations" }, "elapsed_ms" }
Json analysis_report(const ReachabilityReport& report, const DegreeAudit& audit, double elapsed_ms);

// { "n", "rule", "probs", "mean_equal_split", "max_state_expectation", "residual", "iterations" }
Json solution_summary(const AbsorptionSolution& solution);

// "k,p_alive" header, one row per requested k.
std::string tail_csv(const TailCurve& curve);
Json to_json(const TailCurve& curve);

Json to_json(const DecayCertificate& cert);
Json to_json(const LengthSummary& summary);

Json to_json(const PathWitness& path);

// { "deal", "policy", "rule", "pre_period", "period" }
Json to_json(const CycleCertificate& cert);
CycleCertificate cycle_certificate_from_json(const Json& j);

Json to_json(const TwoOutcomeCertificate& cert);

Json to_json(const GameRecord& record);
Json to_json(const ClassicSummary& summary);
Json to_json(const ValueCycleCheck& check);

}  // namespace wargraph
