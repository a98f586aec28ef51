#pragma once

#include "delegation/bias_analysis.hpp"
#include "delegation/oracle.hpp"

#include <json.hpp>

namespace delegation {

using Json = nlohmann::json;

// Delegation sets: {"intervals":[[lo,hi],...]}; singletons as degenerate pairs.
Json set_to_json(const DelegationSet& D);
DelegationSet set_from_json(const Json& j);

// Setting configs: {"preset":"uqc","beta":0.3} (optionally
// "normalization":"generic") or explicit
// {"dist":{"type":"uniform","lo":0,"hi":1},
//  "kernel":{"type":"quadratic_loss"},
//  "bias":{"type":"constant","value":0.3}}.
DecisionSetting setting_from_json(const Json& j);

// Cost configs: {"kind":"szalay","kappa":0.05} or
// {"kind":"near_step","eps":0.01,"x0":0.02,"s":1e-4}.
CostModel cost_from_json(const Json& j);

Json evaluation_to_json(const Evaluation& ev);
Json assumptions_to_json(const AssumptionReport& rep);
Json solve_result_to_json(const SolveResult& res);
Json characterization_to_json(const CharacterizationReport& rep);
Json demo_to_json(const HighPointDemo& demo);
Json bias_summary_to_json(const BiasCurve& curve);

} // namespace delegation
