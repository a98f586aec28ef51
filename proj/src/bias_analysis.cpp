#include "delegation/bias_analysis.hpp"
#include "delegation/errors.hpp"
#include "delegation/numerics.hpp"
#include "delegation/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace delegation {

namespace {

DelegationSet punctured(double r) {
    if (r <= 0.0) return DelegationSet::interval(0.0, 1.0);
    return DelegationSet::make({{0.0, 0.5 - r}, {0.5 + r, 1.0}});
}

} // namespace

UnbiasedOptimum unbiased_optimum(const CostModel& cost, int grid_n) {
    const DecisionSetting setting = uqc_setting(0.0);
    auto value = [&](double r) { return evaluate(setting, cost, punctured(r)).U_P; };
    const int n = std::max(grid_n, 8);
    const double r_hi = 0.5 - 1e-9;
    double best_r = 0.0, best_v = value(0.0);
    for (int i = 1; i < n; ++i) {
        const double r = r_hi * i / (n - 1);
        const double v = value(r);
        if (v > best_v) {
            best_v = v;
            best_r = r;
        }
    }
    const double step = r_hi / (n - 1);
    const double a = std::max(0.0, best_r - 2.0 * step);
    const double b = std::min(r_hi, best_r + 2.0 * step);
    const double r = num::golden_max(value, a, b, 1e-8);
    if (value(r) > best_v) best_r = r;

    UnbiasedOptimum out;
    out.radius = best_r;
    out.set = punctured(best_r);
    const Evaluation ev = evaluate(setting, cost, out.set);
    out.effort = ev.agent.effort;
    out.value = ev.U_P;
    return out;
}

double delegation_value(double beta, const CostModel& cost, int grid_n) {
    if (beta < 0.0) throw RangeError("delegation_value: beta must be >= 0");
    if (beta == 0.0) return unbiased_optimum(cost, grid_n).value;
    return solve(uqc_setting(beta), cost, grid_n).evaluation.U_P;
}

BiasCurve optimal_bias(double kappa, const std::vector<double>& beta_grid, int grid_n,
                       int jobs) {
    if (beta_grid.empty()) throw ConfigError("optimal_bias: empty beta grid");
    for (double b : beta_grid)
        if (b < 0.0 || b >= 0.5)
            throw ConfigError("optimal_bias: beta grid must lie in [0, 0.5)");

    const CostModel cost = CostModel::szalay(kappa);
    BiasCurve curve;
    curve.kappa = kappa;
    curve.betas = beta_grid;
    curve.values.resize(beta_grid.size());
    parallel_for(static_cast<int>(beta_grid.size()), jobs, [&](int i) {
        curve.values[static_cast<size_t>(i)] =
            delegation_value(beta_grid[static_cast<size_t>(i)], cost, grid_n);
    });
    curve.unbiased_value = delegation_value(0.0, cost, grid_n);

    size_t best = 0;
    for (size_t i = 1; i < curve.values.size(); ++i)
        if (curve.values[i] > curve.values[best]) best = i;

    // Golden refinement of the argmax to 1e-4 in beta (grid neighbors as the
    // bracket; V is evaluated through the full solver at each probe).
    const double lo = best == 0 ? beta_grid.front() : beta_grid[best - 1];
    const double hi =
        best + 1 == beta_grid.size() ? beta_grid.back() : beta_grid[best + 1];
    if (hi > lo) {
        auto value = [&](double b) { return delegation_value(b, cost, grid_n); };
        const double refined = num::golden_max(value, lo, hi, 1e-4);
        const double v_refined = value(refined);
        if (v_refined >= curve.values[best]) {
            curve.beta_star = refined;
            curve.value_star = v_refined;
        } else {
            curve.beta_star = beta_grid[best];
            curve.value_star = curve.values[best];
        }
    } else {
        curve.beta_star = beta_grid[best];
        curve.value_star = curve.values[best];
    }
    return curve;
}

SzalayCondition szalay_condition(const CostModel& cost) {
    SzalayCondition out;
    out.e0 = cost.effort(1.0 / 12.0);
    out.ratio = cost.c_prime(out.e0) / cost.c_second(out.e0);
    const double rhs = 1.0 - out.e0;
    out.boundary = std::fabs(out.ratio - rhs) <= 1e-12;
    out.holds = !out.boundary && out.ratio > rhs;
    return out;
}

TranslationBound translation_bound_check(double kappa, double beta, int grid_n) {
    if (beta < 0.0) throw RangeError("translation_bound_check: beta must be >= 0");
    TranslationBound rep;
    const CostModel cost = CostModel::szalay(kappa);
    if (!szalay_condition(cost).holds) return rep; // not applicable
    rep.applicable = true;

    const UnbiasedOptimum base = unbiased_optimum(cost, grid_n);
    rep.radius = base.radius;
    rep.effort = base.effort;
    rep.V0 = base.value;
    rep.V_beta = delegation_value(beta, cost, grid_n);
    rep.lower_bound = beta * (2.0 * base.radius * (1.0 - base.effort) - beta);
    rep.bound_holds = rep.V_beta - rep.V0 >= rep.lower_bound - 1e-6;

    // Shift invariance: beta + D* yields the same information gain and effort
    // at bias beta as D* does at bias zero.
    const DecisionSetting biased = uqc_setting(beta);
    std::vector<std::pair<double, double>> shifted;
    for (const auto& iv : base.set.intervals())
        shifted.emplace_back(iv.lo + beta, iv.hi + beta);
    const Evaluation ev =
        evaluate(biased, cost, DelegationSet::make(shifted));
    rep.shifted_gain = ev.agent.info_gain;
    rep.shifted_effort = ev.agent.effort;
    const Evaluation ev0 = evaluate(uqc_setting(0.0), cost, base.set);
    rep.shift_invariant = std::fabs(rep.shifted_gain - ev0.agent.info_gain) <= 1e-9 &&
                          std::fabs(rep.shifted_effort - ev0.agent.effort) <= 1e-9;
    return rep;
}

double informed_equivalent_bias(double gain) {
    if (gain < 0.0) throw RangeError("informed_equivalent_bias: gain must be >= 0");
    auto loss = [](double b) { return b * b - (4.0 / 3.0) * b * b * b; };
    if (gain > loss(0.5))
        throw RangeError("informed_equivalent_bias: gain exceeds the maximal "
                         "informed-agent loss on [0, 1/2]");
    if (gain == 0.0) return 0.0;
    return num::bisect([&](double b) { return loss(b) - gain; }, 0.0, 0.5, 1e-12);
}

} // namespace delegation
