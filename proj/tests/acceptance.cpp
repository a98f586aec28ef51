// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
// Each criterion pins its tolerances and runtime budget in code.

#include "delegation/bias_analysis.hpp"
#include "delegation/numerics.hpp"
#include "delegation/oracle.hpp"
#include "delegation/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

using namespace delegation;

namespace {

int g_jobs = 1;

struct Criterion {
    int id;
    std::string title;
    double budget_seconds;
    std::function<bool(std::string&)> body;
};

std::vector<DelegationSet> random_sets(const DecisionSetting& setting, int count,
                                       uint64_t seed) {
    std::mt19937_64 rng(seed);
    const double lo = setting.y_A(setting.theta_lo()) - 0.1;
    const double hi = setting.y_A(setting.theta_hi()) + 0.5;
    std::uniform_real_distribution<double> point(lo, hi);
    std::uniform_int_distribution<int> pieces(1, 4);
    std::vector<DelegationSet> sets;
    for (int i = 0; i < count; ++i) {
        const int k = pieces(rng);
        std::vector<std::pair<double, double>> raw;
        for (int p = 0; p < k; ++p) {
            double a = point(rng), b = point(rng);
            if (a > b) std::swap(a, b);
            raw.emplace_back(a, b);
        }
        sets.push_back(DelegationSet::make(raw));
    }
    return sets;
}

bool is_hollow(const std::string& form) {
    return form == "hollow" || form == "hollow_singleton";
}

// ---------------------------------------------------------------------------

bool criterion1(std::string& detail) {
    for (double beta = 0.05; beta < 0.4501; beta += 0.05) {
        const Benchmark b = informed_benchmark(uqc_setting(beta));
        if (std::fabs(b.theta_hat - (1.0 - 2.0 * beta)) > 1e-8) {
            detail = "beta=" + std::to_string(beta) +
                     " theta_hat=" + std::to_string(b.theta_hat);
            return false;
        }
    }
    return true;
}

bool criterion2(std::string& detail) {
    for (double beta : {0.1, 0.3}) {
        const DecisionSetting st = uqc_setting(beta, Normalization::Generic);
        for (const auto& D : random_sets(st, 100, 20240 + static_cast<int>(beta * 10))) {
            const double direct = integrate_rule(st, informed_rule(st, D)).u_P1;
            const double env = informed_payoff_envelope(st, D);
            if (std::fabs(env - direct) > 1e-6) {
                detail = "envelope error " + std::to_string(env - direct);
                return false;
            }
        }
    }
    return true;
}

bool criterion3(std::string& detail) {
    for (double beta : {0.05, 0.15, 0.24}) {
        for (double kappa : {0.01, 0.05, 0.2}) {
            const SolveResult r = solve(uqc_setting(beta), CostModel::szalay(kappa));
            if (!is_hollow(r.classification)) {
                detail = "expected hollow at (" + std::to_string(beta) + ", " +
                         std::to_string(kappa) + "), got " + r.classification;
                return false;
            }
        }
    }
    for (double beta : {0.40, 0.45}) {
        for (double kappa : {0.01, 0.05, 0.2}) {
            const SolveResult r = solve(uqc_setting(beta), CostModel::szalay(kappa));
            if (r.classification != "interval" && r.classification != "high_point") {
                detail = "expected interval/high-point at (" + std::to_string(beta) +
                         ", " + std::to_string(kappa) + "), got " + r.classification;
                return false;
            }
        }
    }
    const SolveResult steep = solve(uqc_setting(0.30), CostModel::szalay(1e-4));
    if (steep.classification != "interval") {
        detail = "expected interval at (0.30, 1e-4), got " + steep.classification;
        return false;
    }
    return true;
}

bool criterion4(std::string& detail) {
    std::vector<double> betas;
    for (double b = 0.02; b < 0.4801; b += 0.01) betas.push_back(b);
    const auto cells = regime_map(betas, {0.02}, 200, g_jobs);

    std::vector<double> widths;
    int transition = -1;
    for (size_t i = 0; i < cells.size(); ++i) {
        if (is_hollow(cells[i].form)) {
            if (transition >= 0) {
                detail = "hollow reappeared after the transition";
                return false;
            }
            widths.push_back(cells[i].y2_or_ybar - cells[i].y1);
        } else if (transition < 0) {
            transition = static_cast<int>(i);
        }
    }
    if (widths.empty() || transition <= 0) {
        detail = "no hollow-to-interval transition in the sweep";
        return false;
    }
    for (size_t i = 0; i + 1 < widths.size(); ++i) {
        if (widths[i + 1] > widths[i] + 1e-3) {
            detail = "width increased at step " + std::to_string(i);
            return false;
        }
    }
    if (widths.back() > 1e-7) {
        detail = "upper interval did not shrink to a point before the transition";
        return false;
    }
    const RegimeCell& last_hollow = cells[static_cast<size_t>(transition) - 1];
    const RegimeCell& first_interval = cells[static_cast<size_t>(transition)];
    if (!(first_interval.effort < last_hollow.effort)) {
        detail = "effort did not drop at the transition";
        return false;
    }
    const double u_P0_hollow =
        solve(uqc_setting(last_hollow.beta), CostModel::szalay(0.02)).evaluation.u_P0;
    const double u_P0_interval =
        solve(uqc_setting(first_interval.beta), CostModel::szalay(0.02)).evaluation.u_P0;
    if (!(u_P0_interval > u_P0_hollow)) {
        detail = "uninformed-agent payoff did not rise at the transition";
        return false;
    }
    return true;
}

bool criterion5(std::string& detail) {
    const CostModel cost = CostModel::szalay(0.05);
    if (!szalay_condition(cost).holds) {
        detail = "condition should hold at kappa=0.05";
        return false;
    }
    const UnbiasedOptimum base = unbiased_optimum(cost);
    if (!(base.radius > 1e-4)) {
        detail = "unbiased radius " + std::to_string(base.radius);
        return false;
    }
    for (double beta : {0.005, 0.01, 0.02}) {
        const TranslationBound rep = translation_bound_check(0.05, beta);
        if (!(rep.V_beta > rep.V0)) {
            detail = "V(beta) <= V(0) at beta=" + std::to_string(beta);
            return false;
        }
        if (!rep.bound_holds) {
            detail = "translation bound failed at beta=" + std::to_string(beta);
            return false;
        }
    }
    return true;
}

bool criterion6(std::string& detail) {
    std::vector<double> beta_grid;
    for (double b = 0.0; b < 0.1001; b += 0.0025) beta_grid.push_back(b);

    double max_beta_star = 0.0;
    double beta_star_008 = -1.0, gain_008 = 0.0;
    double max_gain = -1.0, max_gain_kappa = 0.0;
    for (double kappa = 0.01; kappa < 0.1501; kappa += 0.005) {
        const BiasCurve curve = optimal_bias(kappa, beta_grid, 200, g_jobs);
        max_beta_star = std::max(max_beta_star, curve.beta_star);
        const double gain = curve.value_star - curve.unbiased_value;
        if (gain > max_gain) {
            max_gain = gain;
            max_gain_kappa = kappa;
        }
        if (std::fabs(kappa - 0.08) < 1e-9) {
            beta_star_008 = curve.beta_star;
            gain_008 = gain;
        }
    }
    if (std::fabs(max_beta_star - 0.045) > 0.005) {
        detail = "max beta* = " + std::to_string(max_beta_star);
        return false;
    }
    if (std::fabs(beta_star_008 - 0.036) > 0.004) {
        detail = "beta*(0.08) = " + std::to_string(beta_star_008);
        return false;
    }
    const double equiv = informed_equivalent_bias(gain_008);
    if (std::fabs(equiv - 0.027) > 0.005) {
        detail = "informed-equivalent bias " + std::to_string(equiv);
        return false;
    }
    if (max_gain_kappa < 0.06 || max_gain_kappa > 0.09) {
        detail = "gain peaks at kappa = " + std::to_string(max_gain_kappa);
        return false;
    }
    return true;
}

bool criterion7(std::string& detail) {
    const struct {
        double beta, kappa;
    } cells[] = {{0.1, 0.02}, {0.3, 0.05}, {0.45, 0.05}};
    for (const auto& c : cells) {
        const DecisionSetting st = uqc_setting(c.beta);
        const CharacterizationReport rep = verify_characterization(
            st, CostModel::szalay(c.kappa), default_oracle_grid(st, 12), g_jobs);
        if (!rep.pass) {
            detail = "cell (" + std::to_string(c.beta) + ", " + std::to_string(c.kappa) +
                     "): value_ok=" + std::to_string(rep.value_ok) +
                     " gaps_ok=" + std::to_string(rep.gaps_ok) +
                     " form=" + rep.oracle.nearest_form + " vs " + rep.solve_form;
            return false;
        }
    }
    return true;
}

bool criterion8(std::string& detail) {
    for (double beta : {0.28, 0.3, 0.35}) {
        const HighPointDemo demo = high_point_demo(beta, 0.01, 200);
        if (!demo.success) {
            detail = "demo failed at beta=" + std::to_string(beta) + ": " + demo.failure;
            return false;
        }
        if (!(demo.ybar > 1.0 + beta && demo.ybar < 1.5 + 2.0 * beta)) {
            detail = "ybar outside (1+beta, 3/2+2beta) at beta=" + std::to_string(beta);
            return false;
        }
        if (!(demo.y0_star > 0.5 && demo.y0_star < 0.5 + beta)) {
            detail = "y0* outside (1/2, 1/2+beta) at beta=" + std::to_string(beta);
            return false;
        }
        if (!(demo.ineq_delta && demo.ineq_high_above_u0 && demo.ineq_high_above_hollow)) {
            detail = "threshold inequalities failed at beta=" + std::to_string(beta);
            return false;
        }
        if (!(demo.dominates_interval && demo.dominates_hollow)) {
            detail = "dominance failed at beta=" + std::to_string(beta);
            return false;
        }

        // Exact price of the conjugate point added to [beta, 1/2]: the
        // informed payoff falls by (beta/2)(4 beta - 1).
        const DecisionSetting st = uqc_setting(beta);
        const double u_base =
            integrate_rule(st, informed_rule(st, DelegationSet::interval(beta, 0.5)))
                .u_P1;
        const double point = 0.5 + 2.0 * beta;
        const double u_with =
            integrate_rule(st, informed_rule(st, DelegationSet::make(
                                                     {{beta, 0.5}, {point, point}})))
                .u_P1;
        if (std::fabs((u_base - u_with) - (beta / 2.0) * (4.0 * beta - 1.0)) > 1e-8) {
            detail = "conjugate-point price mismatch at beta=" + std::to_string(beta);
            return false;
        }
    }
    return true;
}

bool criterion9(std::string& detail) {
    const DecisionSetting st = uqc_setting(0.3);
    const CostModel cost = CostModel::szalay(0.05);
    const double full =
        agent_response(st, cost, DelegationSet::make({{0.3, 1.3}})).info_gain;
    if (std::fabs(full - 1.0 / 12.0) > 1e-9) {
        detail = "unrestricted gain " + std::to_string(full);
        return false;
    }
    const double capped =
        agent_response(st, cost, DelegationSet::make({{0.3, 0.8}})).info_gain;
    if (std::fabs(capped - 1.0 / 24.0) > 1e-9) {
        detail = "capped gain " + std::to_string(capped);
        return false;
    }
    const AgentResponse solo = agent_response(st, cost, DelegationSet::point(0.7));
    if (solo.info_gain != 0.0 || solo.effort != 0.0) {
        detail = "singleton gain/effort nonzero";
        return false;
    }
    const double e = effort_of_gain(cost, 1.0 / 12.0);
    if (std::fabs(e - (1.0 - std::exp(-5.0 / 3.0))) > 1e-12) {
        detail = "effort at 1/12 = " + std::to_string(e);
        return false;
    }
    return true;
}

bool criterion10(std::string& detail) {
    for (const char* suite : {"agent", "principal"}) {
        for (const auto& check : verify_suite(suite, g_jobs)) {
            if (!check.pass) {
                detail = std::string(suite) + ": " + check.name + " (" + check.detail +
                         ")";
                return false;
            }
        }
    }
    return true;
}

} // namespace

int main() {
    g_jobs = std::max(1u, std::thread::hardware_concurrency());

    const std::vector<Criterion> criteria = {
        {1, "benchmark cap theta_hat = 1 - 2 beta within 1e-8", 1.0, criterion1},
        {2, "envelope identity on 200 random sets within 1e-6", 10.0, criterion2},
        {3, "optimal form at the regime landmarks", 160.0, criterion3},
        {4, "kappa = 0.02 sweep: widths shrink, effort and u_P0 jump", 300.0,
         criterion4},
        {5, "benefit-from-bias suite at kappa = 0.05", 120.0, criterion5},
        {6, "bias-curve landmarks over the kappa sweep", 900.0, criterion6},
        {7, "oracle agreement on three landmark cells (m = 12)", 180.0, criterion7},
        {8, "high-point construction at beta in {0.28, 0.3, 0.35}", 300.0, criterion8},
        {9, "agent response exact values", 1.0, criterion9},
        {10, "comparative-statics property sweeps", 60.0, criterion10},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        const bool in_budget = elapsed < c.budget_seconds;
        const bool pass = ok && in_budget;
        std::printf("[%s] criterion %2d: %s (%.2f s%s)\n", pass ? "PASS" : "FAIL", c.id,
                    c.title.c_str(), elapsed,
                    in_budget ? "" : ", over the runtime budget");
        if (!pass) {
            if (!detail.empty()) std::printf("       %s\n", detail.c_str());
            ++failures;
        }
    }
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
