#include "delegation/principal.hpp"
#include "delegation/errors.hpp"
#include "delegation/numerics.hpp"

#include <cmath>

namespace delegation {

Evaluation evaluate(const DecisionSetting& setting, const CostModel& cost,
                    const DelegationSet& D) {
    Evaluation ev;
    const PiecewiseRule rule = informed_rule(setting, D);
    const InformedIntegrals integrals = integrate_rule(setting, rule);
    ev.agent = agent_response_with_rule(setting, cost, D, rule, integrals);
    ev.u_P0 = setting.mean_u_P(ev.agent.uninformed_decision);
    ev.u_P1 = integrals.u_P1;
    ev.delta_P = ev.u_P1 - ev.u_P0;
    ev.U_P = (1.0 - ev.agent.effort) * ev.u_P0 + ev.agent.effort * ev.u_P1;
    return ev;
}

double informed_payoff_envelope(const DecisionSetting& setting, const DelegationSet& D) {
    if (setting.normalization() != Normalization::Generic)
        throw NormalizationError(
            "informed_payoff_envelope requires Generic normalization; convert the "
            "loss-unit value via loss = 2 * generic - E[theta^2]");

    const auto& dist = setting.dist();
    const double lo = setting.theta_lo(), hi = setting.theta_hi();
    auto Bf = [&](double t) { return setting.bias().B(t) * dist.pdf(t); };
    const double h = dist.width() * 1e-5;

    double value = informed_value(setting, D, lo) * Bf(lo) -
                   informed_value(setting, D, hi) * Bf(hi);

    // (Bf)' by finite differences (one-sided at the support endpoints, where
    // the density is undefined outside). Integrate between rule kinks.
    auto integrand = [&](double t) {
        double bf_prime;
        if (setting.bias().constant && dist.pdf_derivative)
            bf_prime = setting.bias().constant_value * dist.pdf_derivative(t);
        else
            bf_prime = num::derivative(Bf, t, h, lo, hi);
        return informed_value(setting, D, t) * (dist.pdf(t) + bf_prime);
    };
    const PiecewiseRule rule = informed_rule(setting, D);
    for (const auto& seg : rule.segments) {
        if (seg.t1 <= seg.t0) continue;
        const double share = (seg.t1 - seg.t0) / dist.width();
        const int panels =
            std::max(4, static_cast<int>(std::ceil(num::default_panels() * share)));
        value += num::gauss_legendre(integrand, seg.t0, seg.t1, panels);
    }
    return value;
}

Benchmark informed_benchmark(const DecisionSetting& setting) {
    const AssumptionReport rep = setting.check_assumptions();
    if (!rep.all_pass())
        throw ConfigError("informed_benchmark requires assumptions A1-A3; " +
                          (!rep.a1.pass ? rep.a1.detail
                                        : !rep.a2.pass ? rep.a2.detail : rep.a3.detail));

    // Residual theta + b(theta) - E[theta | theta >= theta_hat] is strictly
    // single-crossing from below under A1-A3.
    const double lo = setting.theta_lo(), hi = setting.theta_hi();
    auto residual = [&](double t) {
        return setting.g(t) - setting.dist().conditional_mean_above(t);
    };
    const double width = hi - lo;
    // b(hi) > 0 makes the residual positive near the top; keep a margin that
    // respects the degenerate-tail guard of the conditional mean.
    double upper = hi - 1e-9 * width;
    while (1.0 - setting.dist().cdf(upper) < 1e-12) upper = hi - (hi - upper) * 2.0;
    if (!(residual(lo) < 0.0) || !(residual(upper) > 0.0))
        throw ConfigError("informed_benchmark: cap residual has no sign change; "
                          "assumptions A1-A3 violated numerically");
    const double theta_hat = num::bisect(residual, lo, upper, 1e-10);

    Benchmark out{theta_hat, setting.y_A(theta_hat),
                  DelegationSet::interval(setting.y_A(lo), setting.y_A(theta_hat)), 0.0};
    const PiecewiseRule rule = informed_rule(setting, out.interval);
    out.value = integrate_rule(setting, rule).u_P1;
    return out;
}

} // namespace delegation
