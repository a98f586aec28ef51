#pragma once

#include "delegation/agent.hpp"

namespace delegation {

// All payoff components of one (setting, cost, set) triple.
struct Evaluation {
    double u_P0 = 0.0;    // principal's uninformed-agent payoff
    double u_P1 = 0.0;    // principal's informed-agent payoff
    double delta_P = 0.0; // u_P1 - u_P0
    AgentResponse agent;
    double U_P = 0.0;     // (1 - effort) u_P0 + effort u_P1
};

Evaluation evaluate(const DecisionSetting& setting, const CostModel& cost,
                    const DelegationSet& D);

inline double delta_P(const DecisionSetting& setting, const CostModel& cost,
                      const DelegationSet& D) {
    return evaluate(setting, cost, D).delta_P;
}

// Envelope representation of u_P1 as a weighted average of the agent's
// informed values:
//   u_A(D,lo) B(lo) f(lo) - u_A(D,hi) B(hi) f(hi)
//     + integral of u_A(D,theta) [f + (Bf)'] dtheta.
// Derived from u_P - u_A = -b(theta) y, which holds in generic units only;
// throws NormalizationError under QuadraticLoss (convert first: the loss
// value equals 2 * generic - E[theta^2]).
double informed_payoff_envelope(const DecisionSetting& setting, const DelegationSet& D);

// Classical informed-agent benchmark: the interval [y_A(lo), y_A(theta_hat)]
// with theta_hat + b(theta_hat) = E[theta | theta >= theta_hat].
struct Benchmark {
    double theta_hat = 0.0;
    double cap = 0.0;       // y_A(theta_hat)
    DelegationSet interval; // [y_A(theta_lo), cap]
    double value = 0.0;     // u_P1 of the benchmark interval
};

Benchmark informed_benchmark(const DecisionSetting& setting);

} // namespace delegation
