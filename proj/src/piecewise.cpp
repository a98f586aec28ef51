#include "delegation/piecewise.hpp"
#include "delegation/errors.hpp"
#include "delegation/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace delegation {

PiecewiseRule informed_rule(const DecisionSetting& setting, const DelegationSet& D) {
    PiecewiseRule rule;
    const auto& ivs = D.intervals();
    const double g_lo = setting.g(setting.theta_lo());
    const double g_hi = setting.g(setting.theta_hi());
    const auto& a_prime = setting.kernel().a_prime;

    // Everything happens in "level" space g(theta) = theta + b(theta).
    // Between consecutive intervals the agent switches at the level where he
    // is indifferent between the adjacent endpoints; by the mean value
    // theorem that level separates the endpoint activation levels, so cells
    // are ordered. Within interval i the choice is lo_i below -a'(lo_i),
    // the favourite between the activation levels, and hi_i above -a'(hi_i).
    const size_t k = ivs.size();
    boost::container::small_vector<double, 4> switch_level(k > 0 ? k - 1 : 0);
    for (size_t j = 0; j + 1 < k; ++j) {
        const double d1 = ivs[j].hi;
        const double d2 = ivs[j + 1].lo;
        switch_level[j] =
            -(setting.kernel().a(d2) - setting.kernel().a(d1)) / (d2 - d1);
    }

    auto theta_of_level = [&](double level) {
        if (level <= g_lo) return setting.theta_lo();
        if (level >= g_hi) return setting.theta_hi();
        return setting.g_inverse(level);
    };

    auto push = [&](double l0, double l1, bool ideal, double y) {
        l0 = std::max(l0, g_lo);
        l1 = std::min(l1, g_hi);
        if (l1 <= l0) return;
        const double t0 = theta_of_level(l0);
        const double t1 = theta_of_level(l1);
        if (t1 <= t0) return;
        rule.segments.push_back({t0, t1, ideal, y});
    };

    for (size_t i = 0; i < k; ++i) {
        const double cell_lo = i == 0 ? -1e300 : switch_level[i - 1];
        const double cell_hi = i + 1 == k ? 1e300 : switch_level[i];
        const double act_lo = -a_prime(ivs[i].lo);
        const double act_hi = -a_prime(ivs[i].hi);
        push(cell_lo, std::min(act_lo, cell_hi), false, ivs[i].lo);
        push(std::max(act_lo, cell_lo), std::min(act_hi, cell_hi), true, 0.0);
        push(std::max(act_hi, cell_lo), cell_hi, false, ivs[i].hi);
    }

    for (size_t j = 0; j + 1 < k; ++j) {
        if (switch_level[j] > g_lo && switch_level[j] < g_hi)
            rule.thresholds.push_back(
                {theta_of_level(switch_level[j]), ivs[j].hi, ivs[j + 1].lo});
    }
    return rule;
}

namespace {

// Closed-form segment integrals for uniform state on [lo, hi], quadratic
// kernel and constant bias. All integrands are cubic polynomials.
InformedIntegrals integrate_segment_uqc(const DecisionSetting& setting,
                                        const RuleSegment& seg) {
    const double beta = setting.bias().constant_value;
    const double invw = 1.0 / setting.dist().width();
    const double t0 = seg.t0, t1 = seg.t1;
    const bool loss = setting.normalization() == Normalization::QuadraticLoss;
    auto cube = [](double v) { return v * v * v; };
    InformedIntegrals out;
    if (seg.ideal) {
        if (loss) {
            out.u_P1 = -beta * beta * (t1 - t0) * invw;
            out.u_A1 = 0.0;
        } else {
            out.u_P1 = ((cube(t1) - cube(t0)) / 6.0 -
                        0.5 * beta * beta * (t1 - t0)) * invw;
            out.u_A1 = (cube(t1 + beta) - cube(t0 + beta)) / 6.0 * invw;
        }
    } else {
        const double y = seg.y;
        if (loss) {
            out.u_P1 = -(cube(y - t0) - cube(y - t1)) / 3.0 * invw;
            out.u_A1 = -(cube(y - beta - t0) - cube(y - beta - t1)) / 3.0 * invw;
        } else {
            const double theta_int = 0.5 * (t1 * t1 - t0 * t0);
            const double len = t1 - t0;
            const double ay = -0.5 * y * y;
            out.u_P1 = (y * theta_int + ay * len) * invw;
            out.u_A1 = (y * (theta_int + beta * len) + ay * len) * invw;
        }
    }
    return out;
}

InformedIntegrals integrate_segment_general(const DecisionSetting& setting,
                                            const RuleSegment& seg) {
    InformedIntegrals out;
    const auto& dist = setting.dist();
    // The single-panel shortcut of a polynomial density is only exact when
    // the payoff side is polynomial too; otherwise scale panels with length.
    int panels = -1;
    if (!setting.kernel().quadratic) {
        const double share = (seg.t1 - seg.t0) / dist.width();
        panels = std::max(
            4, static_cast<int>(std::ceil(num::default_panels() * share)));
    }
    if (seg.ideal) {
        out.u_P1 = dist.integrate(
            [&](double t) { return setting.u_P(setting.y_A(t), t); }, seg.t0, seg.t1,
            panels);
        out.u_A1 = dist.integrate(
            [&](double t) { return setting.u_A(setting.y_A(t), t); }, seg.t0, seg.t1,
            panels);
    } else {
        const double y = seg.y;
        out.u_P1 = dist.integrate([&](double t) { return setting.u_P(y, t); }, seg.t0,
                                  seg.t1, panels);
        out.u_A1 = dist.integrate([&](double t) { return setting.u_A(y, t); }, seg.t0,
                                  seg.t1, panels);
    }
    return out;
}

} // namespace

InformedIntegrals integrate_rule(const DecisionSetting& setting,
                                 const PiecewiseRule& rule) {
    InformedIntegrals total;
    for (const auto& seg : rule.segments) {
        const InformedIntegrals part = setting.fast_uqc()
                                           ? integrate_segment_uqc(setting, seg)
                                           : integrate_segment_general(setting, seg);
        total.u_P1 += part.u_P1;
        total.u_A1 += part.u_A1;
    }
    return total;
}

double informed_value(const DecisionSetting& setting, const DelegationSet& D,
                      double theta) {
    const double ideal = setting.y_A(theta);
    const auto& ivs = D.intervals();
    if (ideal <= ivs.front().lo) return setting.u_A(ivs.front().lo, theta);
    if (ideal >= ivs.back().hi) return setting.u_A(ivs.back().hi, theta);
    double lo_cand = ivs.front().lo, hi_cand = ivs.back().hi;
    for (const auto& iv : ivs) {
        if (ideal >= iv.lo && ideal <= iv.hi) return setting.u_A(ideal, theta);
        if (iv.hi < ideal) lo_cand = iv.hi;
        if (iv.lo > ideal) {
            hi_cand = iv.lo;
            break;
        }
    }
    return std::max(setting.u_A(lo_cand, theta), setting.u_A(hi_cand, theta));
}

} // namespace delegation
