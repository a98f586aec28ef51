#pragma once

#include "delegation/delegation_set.hpp"

namespace delegation {

// One maximal state range on which the informed agent's choice from D is
// either his unconstrained favorite y_A(theta) or a fixed endpoint of D.
struct RuleSegment {
    double t0 = 0.0;
    double t1 = 0.0;
    bool ideal = false;
    double y = 0.0; // fixed decision when !ideal
};

// Indifference switch point induced by a gap: at state theta the agent is
// indifferent between the gap endpoints (left below, right above).
struct GapThreshold {
    double theta = 0.0;
    double left = 0.0;
    double right = 0.0;
};

// The threshold decomposition of the informed choice rule for (setting, D).
// Segment boundaries are the integrand kinks; exact piecewise integration
// over them beats naive quadrature across the kinks.
struct PiecewiseRule {
    boost::container::small_vector<RuleSegment, 8> segments;
    boost::container::small_vector<GapThreshold, 4> thresholds;
};

PiecewiseRule informed_rule(const DecisionSetting& setting, const DelegationSet& D);

struct InformedIntegrals {
    double u_P1 = 0.0; // E[u_P(informed choice, theta)]
    double u_A1 = 0.0; // E[u_A(informed choice, theta)]
};

// Integrates both players' payoffs under the rule in one pass. Closed-form
// antiderivatives on the UQC fast path, per-segment Gauss-Legendre otherwise.
InformedIntegrals integrate_rule(const DecisionSetting& setting, const PiecewiseRule& rule);

// Pointwise informed value u_A(D, theta) = max_{y in D} u_A(y, theta).
double informed_value(const DecisionSetting& setting, const DelegationSet& D, double theta);

} // namespace delegation
