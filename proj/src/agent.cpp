#include "delegation/agent.hpp"
#include "delegation/errors.hpp"

#include <cmath>

namespace delegation {

namespace {

// Projection of a single-peaked objective onto D. peak is the unconstrained
// maximizer, value(y) the objective, tiebreak(y) the principal's objective.
template <typename Value, typename TieBreak>
double project(const DelegationSet& D, double peak, Value&& value, TieBreak&& tiebreak) {
    const auto& ivs = D.intervals();
    if (peak <= ivs.front().lo) return ivs.front().lo;
    if (peak >= ivs.back().hi) return ivs.back().hi;
    double lo_cand = ivs.front().lo, hi_cand = ivs.back().hi;
    for (const auto& iv : ivs) {
        if (peak >= iv.lo && peak <= iv.hi) return peak;
        if (iv.hi < peak) lo_cand = iv.hi;
        if (iv.lo > peak) {
            hi_cand = iv.lo;
            break;
        }
    }
    const double vl = value(lo_cand);
    const double vh = value(hi_cand);
    if (std::fabs(vl - vh) > kEpsTie) return vl > vh ? lo_cand : hi_cand;
    // Agent indifferent: break in the principal's favor, then toward the
    // lower decision (three-way ties have measure zero).
    const double pl = tiebreak(lo_cand);
    const double ph = tiebreak(hi_cand);
    if (std::fabs(pl - ph) > kEpsTie) return pl > ph ? lo_cand : hi_cand;
    return std::min(lo_cand, hi_cand);
}

} // namespace

double informed_choice(const DecisionSetting& setting, const DelegationSet& D,
                       double theta) {
    if (theta < setting.theta_lo() - 1e-12 || theta > setting.theta_hi() + 1e-12)
        throw RangeError("informed_choice: theta outside the support");
    return project(
        D, setting.y_A(theta), [&](double y) { return setting.u_A(y, theta); },
        [&](double y) { return setting.u_P(y, theta); });
}

std::pair<double, double> uninformed_choice(const DecisionSetting& setting,
                                            const DelegationSet& D) {
    const double y = project(
        D, setting.y_A0(), [&](double v) { return setting.mean_u_A(v); },
        [&](double v) { return setting.mean_u_P(v); });
    return {y, setting.mean_u_A(y)};
}

AgentResponse agent_response_with_rule(const DecisionSetting& setting,
                                       const CostModel& cost, const DelegationSet& D,
                                       const PiecewiseRule& rule,
                                       const InformedIntegrals& integrals) {
    AgentResponse r;
    const auto [y0, u0] = uninformed_choice(setting, D);
    r.uninformed_decision = y0;
    r.uninformed_payoff = u0;
    r.informed_payoff = integrals.u_A1;
    if (D.size() == 1 && D.intervals().front().singleton()) {
        // Learning cannot change the decision.
        r.informed_payoff = r.uninformed_payoff;
        r.info_gain = 0.0;
    } else {
        r.info_gain = r.informed_payoff - r.uninformed_payoff;
        // Learning can only help; clip integration dust on near-degenerate sets.
        if (r.info_gain < 0.0 && r.info_gain > -1e-10) r.info_gain = 0.0;
    }
    r.effort = cost.effort(r.info_gain);
    r.thresholds = rule.thresholds;
    return r;
}

AgentResponse agent_response(const DecisionSetting& setting, const CostModel& cost,
                             const DelegationSet& D) {
    const PiecewiseRule rule = informed_rule(setting, D);
    return agent_response_with_rule(setting, cost, D, rule, integrate_rule(setting, rule));
}

} // namespace delegation
