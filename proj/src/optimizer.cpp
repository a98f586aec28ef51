#include "delegation/optimizer.hpp"
#include "delegation/errors.hpp"
#include "delegation/numerics.hpp"
#include "delegation/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

namespace delegation {

std::string family_name(Family f) {
    switch (f) {
        case Family::Hollow: return "hollow";
        case Family::Interval: return "interval";
        case Family::HighPoint: return "high_point";
    }
    return "?";
}

DelegationForm DelegationForm::hollow(double y0, double y1, double y2) {
    DelegationForm f;
    f.kind = Family::Hollow;
    f.y0 = y0;
    f.y1 = y1;
    f.y2 = y2;
    return f;
}

DelegationForm DelegationForm::interval(double y0) {
    DelegationForm f;
    f.kind = Family::Interval;
    f.y0 = y0;
    return f;
}

DelegationForm DelegationForm::high_point(double y0, double ybar) {
    DelegationForm f;
    f.kind = Family::HighPoint;
    f.y0 = y0;
    f.ybar = ybar;
    return f;
}

DelegationSet realize(const DecisionSetting& setting, const DelegationForm& form) {
    const double ya_lo = setting.y_A(setting.theta_lo());
    const double ya_hi = setting.y_A(setting.theta_hi());
    const double y_A0 = setting.y_A0();
    switch (form.kind) {
        case Family::Hollow: {
            if (!(form.y0 < y_A0 && y_A0 < form.y1 && form.y1 <= form.y2))
                throw ConfigError("hollow form requires y0 < y_A0 < y1 <= y2");
            const double conj = ex_ante_conjugate(setting, form.y0);
            if (std::fabs(conj - form.y1) > 1e-8)
                throw ConfigError("hollow form requires the agent ex ante indifferent "
                                  "between y0 and y1 (y1 must be the conjugate of y0)");
            return DelegationSet::make(
                {{std::min(ya_lo, form.y0), form.y0}, {form.y1, form.y2}});
        }
        case Family::Interval: {
            if (!(setting.y_P0() < form.y0 && form.y0 < y_A0))
                throw ConfigError("interval form requires y_P0 < y0 < y_A0");
            return DelegationSet::make({{ya_lo, form.y0}});
        }
        case Family::HighPoint: {
            if (!(form.y0 < y_A0 && y_A0 < ya_hi && ya_hi < form.ybar))
                throw ConfigError("high-point form requires y0 < y_A0 < y_A(hi) < ybar");
            if (!(setting.mean_u_A(form.y0) > setting.mean_u_A(form.ybar)))
                throw ConfigError("high-point form requires strict ex ante preference "
                                  "for y0 over ybar");
            return DelegationSet::make(
                {{std::min(ya_lo, form.y0), form.y0}, {form.ybar, form.ybar}});
        }
    }
    throw ConfigError("unknown delegation form");
}

namespace {

struct Candidate {
    double p1 = 0.0, p2 = 0.0;
    double value = -1e300;
};

// Grid plus coordinate-descent golden refinement over [lo1, hi1] x [0, 1].
// The second coordinate is a unit parameter the caller maps onto whatever
// (possibly p1-dependent) range the family needs, so the box stays
// rectangular.
Candidate search_2d(const std::function<double(double, double)>& value, double lo1,
                    double hi1, int grid_n) {
    Candidate best;
    const int n = std::max(grid_n, 8);
    for (int i = 0; i < n; ++i) {
        const double x = lo1 + (hi1 - lo1) * i / (n - 1);
        for (int j = 0; j < n; ++j) {
            const double u = static_cast<double>(j) / (n - 1);
            const double v = value(x, u);
            if (v > best.value) best = {x, u, v};
        }
    }
    const double step1 = (hi1 - lo1) / (n - 1);
    const double step2 = 1.0 / (n - 1);
    double w1 = 2.0 * step1, w2 = 2.0 * step2;
    for (int round = 0; round < 40; ++round) {
        const double p1_old = best.p1, p2_old = best.p2;
        const double a1 = std::max(lo1, best.p1 - w1);
        const double b1 = std::min(hi1, best.p1 + w1);
        if (b1 > a1) {
            const double x =
                num::golden_max([&](double t) { return value(t, best.p2); }, a1, b1, 1e-7);
            const double v = value(x, best.p2);
            if (v > best.value) {
                best.p1 = x;
                best.value = v;
            }
        }
        const double a2 = std::max(0.0, best.p2 - w2);
        const double b2 = std::min(1.0, best.p2 + w2);
        if (b2 > a2) {
            const double u =
                num::golden_max([&](double t) { return value(best.p1, t); }, a2, b2, 1e-7);
            const double v = value(best.p1, u);
            if (v > best.value) {
                best.p2 = u;
                best.value = v;
            }
        }
        const double moved = std::fabs(best.p1 - p1_old) + std::fabs(best.p2 - p2_old);
        w1 = std::max(4.0 * std::fabs(best.p1 - p1_old), 1e-5 * (hi1 - lo1));
        w2 = std::max(4.0 * std::fabs(best.p2 - p2_old), 1e-5);
        if (moved < 1e-6 && round >= 2) break;
    }
    return best;
}

Candidate search_1d(const std::function<double(double)>& value, double lo, double hi,
                    int grid_n) {
    Candidate best;
    const int n = std::max(grid_n, 8);
    for (int i = 0; i < n; ++i) {
        // Open box: stay strictly inside.
        const double x = lo + (hi - lo) * (i + 1) / (n + 1);
        const double v = value(x);
        if (v > best.value) best = {x, 0.0, v};
    }
    const double step = (hi - lo) / (n + 1);
    const double a = std::max(lo + 1e-12 * (hi - lo), best.p1 - 2.0 * step);
    const double b = std::min(hi - 1e-12 * (hi - lo), best.p1 + 2.0 * step);
    const double x = num::golden_max(value, a, b, 1e-7);
    const double v = value(x);
    if (v > best.value) best = {x, 0.0, v};
    return best;
}

} // namespace

FamilyBest optimize_family(const DecisionSetting& setting, const CostModel& cost,
                           Family family, int grid_n) {
    FamilyBest out;
    const double ya_lo = setting.y_A(setting.theta_lo());
    const double ya_hi = setting.y_A(setting.theta_hi());
    const double y_A0 = setting.y_A0();
    const double y_P0 = setting.y_P0();

    switch (family) {
        case Family::Interval: {
            if (!(y_A0 - y_P0 > 1e-12)) return out; // empty box
            const Candidate c = search_1d(
                [&](double y0) {
                    return evaluate(setting, cost, DelegationSet::interval(ya_lo, y0)).U_P;
                },
                y_P0, y_A0, grid_n);
            out.feasible = true;
            out.form = DelegationForm::interval(c.p1);
            out.set = DelegationSet::interval(ya_lo, c.p1);
            out.evaluation = evaluate(setting, cost, out.set);
            out.U_P = out.evaluation.U_P;
            return out;
        }
        case Family::Hollow: {
            const double r_max = y_A0 - ya_lo;
            if (!(r_max > 1e-12)) return out;
            // The cap ranges over [y1(r), max(y1(r), y_A(hi))]: caps beyond
            // y_A(hi) are payoff-equivalent to y_A(hi) because decisions above
            // the agent's favorite in the highest state are never chosen when
            // the interval also offers lower ones.
            auto make = [&](double r, double u) {
                const double y0 = y_A0 - r;
                const double y1 = ex_ante_conjugate(setting, y0);
                const double hi2 = std::max(y1, ya_hi);
                const double y2 = y1 + u * (hi2 - y1);
                return DelegationSet::make({{std::min(ya_lo, y0), y0}, {y1, y2}});
            };
            const Candidate c = search_2d(
                [&](double r, double u) { return evaluate(setting, cost, make(r, u)).U_P; },
                0.0, r_max, grid_n);
            out.feasible = true;
            out.set = make(c.p1, c.p2);
            const double y0 = y_A0 - c.p1;
            out.form = DelegationForm::hollow(y0, ex_ante_conjugate(setting, y0),
                                              out.set.intervals().back().hi);
            out.evaluation = evaluate(setting, cost, out.set);
            out.U_P = out.evaluation.U_P;
            return out;
        }
        case Family::HighPoint: {
            if (!(y_A0 - ya_lo > 1e-12) || !(ya_hi > y_A0)) return out;
            const double margin = 1e-9 * (setting.working_hi() - setting.working_lo());
            auto bar_range = [&](double y0) {
                const double lo = std::max(ya_hi, ex_ante_conjugate(setting, y0)) + margin;
                const double hi = theta_conjugate(setting, setting.theta_hi(), y0) - margin;
                return std::pair<double, double>(lo, hi);
            };
            auto make = [&](double y0, double u) {
                const auto [blo, bhi] = bar_range(y0);
                const double ybar = blo + u * (bhi - blo);
                return DelegationSet::make({{std::min(ya_lo, y0), y0}, {ybar, ybar}});
            };
            auto value = [&](double y0, double u) {
                const auto [blo, bhi] = bar_range(y0);
                if (!(bhi > blo)) return -1e300;
                return evaluate(setting, cost, make(y0, u)).U_P;
            };
            const double w = y_A0 - ya_lo;
            const Candidate c =
                search_2d(value, ya_lo + 1e-6 * w, y_A0 - 1e-6 * w, grid_n);
            if (c.value <= -1e299) return out; // every column degenerate
            out.feasible = true;
            out.set = make(c.p1, c.p2);
            out.form = DelegationForm::high_point(c.p1, out.set.intervals().back().lo);
            out.evaluation = evaluate(setting, cost, out.set);
            out.U_P = out.evaluation.U_P;
            return out;
        }
    }
    return out;
}

namespace {

std::string classify(const DecisionSetting& setting, const DelegationForm& form) {
    if (form.kind == Family::Interval) return "interval";
    if (form.kind == Family::Hollow) {
        if (form.y2 - form.y1 >= 1e-7) return "hollow";
        // Degenerate upper interval: the ex ante indifference built into the
        // hollow family keeps this hollow rather than high-point.
        const double gap = std::fabs(setting.mean_u_A(form.y0) - setting.mean_u_A(form.y1));
        return gap <= 1e-8 ? "hollow_singleton" : "hollow";
    }
    const double pref = setting.mean_u_A(form.y0) - setting.mean_u_A(form.ybar);
    return pref > 1e-6 ? "high_point" : "hollow_singleton";
}

} // namespace

SolveResult solve(const DecisionSetting& setting, const CostModel& cost, int grid_n) {
    const AssumptionReport rep = setting.check_assumptions();
    if (!rep.all_pass())
        throw ConfigError("solve requires assumptions A1-A3 to hold");

    SolveResult res;
    const Family fams[3] = {Family::Hollow, Family::Interval, Family::HighPoint};
    bool have = false;
    for (Family f : fams) {
        FamilyBest fb = optimize_family(setting, cost, f, grid_n);
        if (fb.feasible && (!have || fb.U_P > res.evaluation.U_P)) {
            res.best_form = fb.form;
            res.best_set = fb.set;
            res.evaluation = fb.evaluation;
            have = true;
        }
        res.per_family.emplace(family_name(f), std::move(fb));
    }
    if (!have) throw ConfigError("solve: every family box is empty");

    // Always-feasible guard; strictly dominated under A1-A3, kept as
    // insurance against tolerance-induced misclassification.
    const Evaluation guard = evaluate(setting, cost, DelegationSet::point(setting.y_P0()));
    res.singleton_guard_U_P = guard.U_P;
    if (guard.U_P > res.evaluation.U_P)
        throw NumericError("solve: singleton guard beat all families; the "
                           "assumption margins are numerically degenerate");

    res.classification = classify(setting, res.best_form);

    const Benchmark bench = informed_benchmark(setting);
    res.regime_flags.low_bias = setting.mean_g() <= setting.g(bench.theta_hat);
    const DelegationSet upto_favorite =
        DelegationSet::interval(setting.y_A(setting.theta_lo()), setting.y_A0());
    const double u_P1_fav =
        integrate_rule(setting, informed_rule(setting, upto_favorite)).u_P1;
    res.regime_flags.very_high_bias = guard.u_P1 >= u_P1_fav;

    double min_ap = 1e300;
    for (int i = 0; i <= 60; ++i) {
        const double x = std::pow(10.0, -4.0 + 4.0 * i / 60.0);
        try {
            min_ap = std::min(min_ap, arrow_pratt(cost, x));
        } catch (const NumericError&) {
            // Slope numerically zero at this sample; the infimum over the
            // remaining samples is still the reported statistic.
        }
    }
    res.regime_flags.min_arrow_pratt = min_ap;
    return res;
}

std::vector<RegimeCell> regime_map(const std::vector<double>& betas,
                                   const std::vector<double>& kappas, int grid_n,
                                   int jobs) {
    std::vector<RegimeCell> cells(betas.size() * kappas.size());
    parallel_for(static_cast<int>(cells.size()), jobs, [&](int idx) {
        const size_t bi = static_cast<size_t>(idx) / kappas.size();
        const size_t ki = static_cast<size_t>(idx) % kappas.size();
        const double beta = betas[bi];
        const double kappa = kappas[ki];
        const DecisionSetting setting = uqc_setting(beta);
        const SolveResult r = solve(setting, CostModel::szalay(kappa), grid_n);
        RegimeCell cell;
        cell.beta = beta;
        cell.kappa = kappa;
        cell.form = r.classification;
        cell.y0 = r.best_form.y0;
        if (r.best_form.kind == Family::Hollow) {
            cell.y1 = r.best_form.y1;
            cell.y2_or_ybar = r.best_form.y2;
        } else if (r.best_form.kind == Family::HighPoint) {
            cell.y1 = std::nan("");
            cell.y2_or_ybar = r.best_form.ybar;
        } else {
            cell.y1 = std::nan("");
            cell.y2_or_ybar = std::nan("");
        }
        cell.U_P = r.evaluation.U_P;
        cell.effort = r.evaluation.agent.effort;
        cells[static_cast<size_t>(idx)] = std::move(cell);
    });
    return cells;
}

std::string regime_map_csv(const std::vector<RegimeCell>& cells) {
    std::string out = "beta,kappa,form,y0,y1,y2_or_ybar,U_P,effort\n";
    char buf[64];
    auto num = [&](double v) -> std::string {
        if (std::isnan(v)) return "";
        std::snprintf(buf, sizeof buf, "%.10g", v);
        return buf;
    };
    for (const auto& c : cells) {
        out += num(c.beta) + "," + num(c.kappa) + "," + c.form + "," + num(c.y0) + "," +
               num(c.y1) + "," + num(c.y2_or_ybar) + "," + num(c.U_P) + "," +
               num(c.effort) + "\n";
    }
    return out;
}

HighPointDemo high_point_demo(double beta, double eps, int grid_n) {
    if (!(beta > 0.25 && beta < 0.5))
        throw RangeError("high_point_demo: beta must lie in (1/4, 1/2)");
    if (!(eps > 0.0 && eps < 0.5))
        throw RangeError("high_point_demo: eps must lie in (0, 1/2)");

    HighPointDemo demo;
    demo.beta = beta;
    demo.eps_requested = eps;

    const DecisionSetting setting = uqc_setting(beta);
    const double y_P0 = setting.y_P0(); // 1/2
    const double cap = y_P0;
    const DelegationSet base = DelegationSet::interval(beta, cap);
    // Payoff components are cost-free; any valid cost works for reading them.
    const CostModel probe = CostModel::szalay(1.0);

    demo.u0 = setting.mean_u_P(y_P0);
    const Evaluation base_ev = evaluate(setting, probe, base);
    const double u_P1_base = base_ev.u_P1;
    const double delta_base = base_ev.agent.info_gain;

    auto with_point = [&](double ybar) {
        return DelegationSet::make({{beta, cap}, {ybar, ybar}});
    };
    auto u_P1_of = [&](double ybar) {
        return integrate_rule(setting, informed_rule(setting, with_point(ybar))).u_P1;
    };

    // The admissible high points live below the theta_hi-conjugate of the
    // cap; approaching the conjugate they are chosen on a vanishing state
    // set, so u_P1 climbs back to the interval's own value, which exceeds u0.
    const double bar_sup = theta_conjugate(setting, setting.theta_hi(), cap);
    const double bar_inf = setting.y_A(setting.theta_hi());
    if (!(u_P1_base > demo.u0)) {
        demo.failure = "u_P1 of the base interval does not exceed u0";
        return demo;
    }
    // Place the high point's informed payoff above both comparison levels:
    // the constant-decision payoff u0 and the base-plus-conjugate-point
    // payoff (which exceeds u0 when the bias is close to 1/4).
    const double conj_half = ex_ante_conjugate(setting, cap);
    const double h_half =
        evaluate(setting, probe,
                 DelegationSet::make({{beta, cap}, {conj_half, conj_half}}))
            .u_P1;
    double target = demo.u0 + 0.4 * (u_P1_base - demo.u0);
    if (h_half > target) target = h_half + 0.6 * (u_P1_base - h_half);
    demo.ybar = num::bisect([&](double y) { return u_P1_of(y) - target; },
                            bar_inf + 1e-9, bar_sup - 1e-9, 1e-12);
    const DelegationSet high_set = with_point(demo.ybar);
    demo.u_P1_high = u_P1_of(demo.ybar);
    demo.delta1 = evaluate(setting, probe, high_set).agent.info_gain;
    demo.ineq_high_above_u0 = demo.u_P1_high > demo.u0;

    // Comparison cap: interval return one third of the way up to delta1,
    // staying inside (1/2, 1/2 + beta).
    auto interval_gain = [&](double y0) {
        return evaluate(setting, probe, DelegationSet::interval(beta, y0)).agent.info_gain;
    };
    const double delta_mid = delta_base + (demo.delta1 - delta_base) / 3.0;
    const double y0_hi = std::min(y_P0 + beta, setting.y_A0()) - 1e-9;
    if (interval_gain(y0_hi) <= delta_mid)
        demo.y0_star = y0_hi;
    else
        demo.y0_star = num::bisect(
            [&](double y) { return interval_gain(y) - delta_mid; }, cap, y0_hi, 1e-12);
    demo.delta0 = interval_gain(demo.y0_star);
    demo.ineq_delta = demo.delta1 > demo.delta0;

    const double conj_star = ex_ante_conjugate(setting, demo.y0_star);
    demo.u_P1_hollow_star =
        evaluate(setting, probe,
                 DelegationSet::make({{beta, demo.y0_star}, {conj_star, conj_star}}))
            .u_P1;
    demo.ineq_hollow_below_u0 = demo.u_P1_hollow_star < demo.u0;
    demo.ineq_high_above_hollow = demo.u_P1_high > demo.u_P1_hollow_star;

    if (!demo.ineq_delta || !demo.ineq_high_above_u0 || !demo.ineq_high_above_hollow) {
        demo.failure = !demo.ineq_delta ? "delta1 <= delta0"
                       : !demo.ineq_high_above_u0
                           ? "u_P1(high set) <= u0"
                           : "u_P1(high set) <= u_P1(hollow comparison set)";
        return demo;
    }

    // Effort function eps * sigma((x - x0)/s): near zero below delta0, near
    // eps above delta1. s places delta0 and delta1 two logit widths out, so
    // effort(delta0) < eps^2 and effort(delta1) > eps(1 - eps).
    demo.cost_x0 = 0.5 * (demo.delta0 + demo.delta1);
    double cur_eps = eps;
    for (int attempt = 1; attempt <= 11; ++attempt, cur_eps *= 0.5) {
        demo.attempts = attempt;
        const double L = std::log((1.0 - cur_eps) / cur_eps);
        demo.cost_s = (demo.delta1 - demo.delta0) / (4.0 * L);
        const CostModel cost = CostModel::near_step(cur_eps, demo.cost_x0, demo.cost_s);

        demo.value_high_point = evaluate(setting, cost, high_set).U_P;
        demo.singleton_value = evaluate(setting, cost, DelegationSet::point(y_P0)).U_P;

        const FamilyBest fi = optimize_family(setting, cost, Family::Interval, grid_n);
        const FamilyBest fh = optimize_family(setting, cost, Family::Hollow, grid_n);
        const FamilyBest fp = optimize_family(setting, cost, Family::HighPoint, grid_n);
        demo.best_interval = fi.U_P;
        demo.best_hollow = fh.U_P;
        demo.best_high_point =
            std::max(fp.feasible ? fp.U_P : -1e300, demo.value_high_point);

        demo.dominates_interval = demo.value_high_point > demo.best_interval;
        demo.dominates_hollow = demo.value_high_point > demo.best_hollow;
        if (demo.dominates_interval && demo.dominates_hollow &&
            demo.value_high_point > demo.singleton_value) {
            demo.success = true;
            demo.eps_used = cur_eps;
            return demo;
        }
    }
    demo.failure = "no eps made the high-point set dominate the interval and hollow "
                   "search grids";
    return demo;
}

} // namespace delegation
