#pragma once

#include "delegation/cost.hpp"
#include "delegation/piecewise.hpp"

#include <utility>

namespace delegation {

// Absolute tie tolerance in agent-utility units. Ties occur exactly at
// conjugate points constructed to 1e-12.
inline constexpr double kEpsTie = 1e-9;

// The agent's sequential best response to a delegation set.
struct AgentResponse {
    double uninformed_decision = 0.0; // y_A0(D)
    double uninformed_payoff = 0.0;   // u_A0(D)
    double informed_payoff = 0.0;     // u_A1(D)
    double info_gain = 0.0;           // Delta_A(D) = u_A1 - u_A0 >= 0
    double effort = 0.0;              // c'(e) = Delta_A(D)
    boost::container::small_vector<GapThreshold, 4> thresholds;
};

// Maximizer of u_A(., theta) over D; ties within kEpsTie are broken in the
// principal's favor, residual ties toward the lower decision.
double informed_choice(const DecisionSetting& setting, const DelegationSet& D,
                       double theta);

// Maximizer of E[u_A(y, theta)] over D with the same tie-breaking; returns
// the decision and the value u_A0(D).
std::pair<double, double> uninformed_choice(const DecisionSetting& setting,
                                            const DelegationSet& D);

AgentResponse agent_response(const DecisionSetting& setting, const CostModel& cost,
                             const DelegationSet& D);

// As agent_response but reusing an already built rule (one decomposition per
// (setting, D) pair is shared by the agent and principal sides).
AgentResponse agent_response_with_rule(const DecisionSetting& setting,
                                       const CostModel& cost, const DelegationSet& D,
                                       const PiecewiseRule& rule,
                                       const InformedIntegrals& integrals);

// effort_of_gain: (c')^{-1}(x) for x >= 0.
inline double effort_of_gain(const CostModel& cost, double x) { return cost.effort(x); }

} // namespace delegation
