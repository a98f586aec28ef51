#include "delegation/oracle.hpp"
#include "delegation/errors.hpp"
#include "delegation/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace delegation {

namespace {

DelegationSet subset_set(const std::vector<double>& grid, uint32_t mask) {
    std::vector<std::pair<double, double>> pts;
    for (size_t i = 0; i < grid.size(); ++i)
        if (mask & (1u << i)) pts.emplace_back(grid[i], grid[i]);
    return DelegationSet::make(pts);
}

std::vector<int> subset_indices(uint32_t mask, size_t m) {
    std::vector<int> out;
    for (size_t i = 0; i < m; ++i)
        if (mask & (1u << i)) out.push_back(static_cast<int>(i));
    return out;
}

double grid_step(const std::vector<double>& grid) {
    double h = 1e300;
    for (size_t i = 0; i + 1 < grid.size(); ++i)
        h = std::min(h, grid[i + 1] - grid[i]);
    return grid.size() > 1 ? h : 0.0;
}

// Probability that the agent's realized decision equals d: the informed rule
// weighted by effort plus the uninformed decision weighted by failure.
double choice_probability(const DecisionSetting& setting, const Evaluation& ev,
                          const PiecewiseRule& rule, double d) {
    double p_informed = 0.0;
    for (const auto& seg : rule.segments) {
        if (!seg.ideal && std::fabs(seg.y - d) <= kEpsMerge)
            p_informed += setting.dist().cdf(seg.t1) - setting.dist().cdf(seg.t0);
    }
    const double e = ev.agent.effort;
    double p = e * p_informed;
    if (std::fabs(ev.agent.uninformed_decision - d) <= kEpsMerge) p += 1.0 - e;
    return p;
}

// Perturbing a gap endpoint by one grid step h moves the agent's ex ante
// utility by at most |d/dy E u_A| h plus curvature; the optimal continuum gap
// is exactly indifferent, so the grid value can miss by this much.
double indifference_bound(const DecisionSetting& setting, double d1, double d2, double h) {
    auto slope = [&](double y) {
        const double dh = 1e-6;
        return (setting.mean_u_A(y + dh) - setting.mean_u_A(y - dh)) / (2.0 * dh);
    };
    const double s = std::max(std::fabs(slope(d1)), std::fabs(slope(d2)));
    const double curv = 1e6 * std::fabs(setting.mean_u_A(d1 + 1e-6) -
                                        2.0 * setting.mean_u_A(d1) +
                                        setting.mean_u_A(d1 - 1e-6)) * 1e6;
    return 2.0 * h * s + 2.0 * h * h * std::max(curv, 1.0);
}

} // namespace

std::vector<double> default_oracle_grid(const DecisionSetting& setting, int m) {
    const double lo = setting.y_A(setting.theta_lo());
    const double hi = setting.y_A(setting.theta_hi());
    const double top = hi + 0.5 * (hi - lo);
    std::vector<double> grid(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i)
        grid[static_cast<size_t>(i)] = lo + (top - lo) * i / (m - 1);
    return grid;
}

OracleResult enumerate_best(const DecisionSetting& setting, const CostModel& cost,
                            const std::vector<double>& grid, int jobs) {
    const size_t m = grid.size();
    if (m < 1 || m > 18)
        throw ConfigError("oracle: grid size must lie in [1, 18] (2^18 subsets)");
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw ConfigError("oracle: grid must be sorted");
    if (grid.front() < setting.working_lo() || grid.back() > setting.working_hi())
        throw ConfigError("oracle: grid outside the working range");

    const uint32_t count = 1u << m;
    std::vector<double> values(count, -1e300);
    parallel_for(static_cast<int>(count - 1), jobs, [&](int i) {
        const uint32_t mask = static_cast<uint32_t>(i) + 1;
        values[mask] = evaluate(setting, cost, subset_set(grid, mask)).U_P;
    });

    // Deterministic reduction independent of the job partition: maximum value
    // first, then the lexicographically smallest index set within 1e-12.
    double best_value = -1e300;
    for (uint32_t mask = 1; mask < count; ++mask)
        best_value = std::max(best_value, values[mask]);
    uint32_t best_mask = 0;
    std::vector<int> best_idx;
    for (uint32_t mask = 1; mask < count; ++mask) {
        if (values[mask] < best_value - 1e-12) continue;
        std::vector<int> idx = subset_indices(mask, m);
        if (best_mask == 0 ||
            std::lexicographical_compare(idx.begin(), idx.end(), best_idx.begin(),
                                         best_idx.end())) {
            best_mask = mask;
            best_idx = std::move(idx);
        }
    }

    OracleResult res;
    res.grid = grid;
    res.best_subset = best_idx;
    res.best_value = values[best_mask];

    const DelegationSet best = subset_set(grid, best_mask);
    const Evaluation ev = evaluate(setting, cost, best);
    const PiecewiseRule rule = informed_rule(setting, best);
    const double h = grid_step(grid);
    const double ya_hi = setting.y_A(setting.theta_hi());

    for (const auto& gap : best.gaps()) {
        GapCheck gc;
        gc.d1 = gap.d1;
        gc.d2 = gap.d2;
        gc.prob_d1 = choice_probability(setting, ev, rule, gap.d1);
        gc.prob_d2 = choice_probability(setting, ev, rule, gap.d2);
        gc.material = gc.prob_d1 > 1e-3 && gc.prob_d2 > 1e-3 &&
                      (gap.d2 - gap.d1) > 2.0 * h;
        gc.straddles = gap.d1 < setting.y_A0() && setting.y_A0() < gap.d2;
        gc.ex_ante_diff = setting.mean_u_A(gap.d1) - setting.mean_u_A(gap.d2);
        const double bound = indifference_bound(setting, gap.d1, gap.d2, h);
        gc.borderline = std::fabs(gap.d2 - ya_hi) <= h;
        if (gc.material) {
            if (!gc.straddles) {
                gc.pass = false;
            } else if (gc.borderline) {
                gc.pass = true; // coarse grids blur the boundary case
            } else if (gap.d2 > ya_hi) {
                // Strict ex ante preference for d1 is admissible here.
                gc.indifference_ok = gc.ex_ante_diff > -bound;
                gc.pass = gc.indifference_ok;
            } else {
                gc.indifference_ok = std::fabs(gc.ex_ante_diff) <= bound;
                gc.pass = gc.indifference_ok;
            }
        }
        res.gap_checks.push_back(gc);
    }

    // Shape heuristic from the gap diagnostics alone; the characterization
    // check replaces this with the distance-based classification against the
    // parametric family optima.
    bool straddling_gap = false;
    bool top_is_high_point = false;
    for (const auto& gc : res.gap_checks) {
        if (gc.straddles && gc.d2 - gc.d1 > h * 1.5) {
            straddling_gap = true;
            const double bound = indifference_bound(setting, gc.d1, gc.d2, h);
            if (gc.d2 > ya_hi + h && gc.ex_ante_diff > bound &&
                gc.d2 == best.intervals().back().lo)
                top_is_high_point = true;
        }
    }
    res.nearest_form = !straddling_gap ? "interval"
                       : top_is_high_point ? "high_point"
                                           : "hollow";
    return res;
}

namespace {

double point_distance(double x, const DelegationSet& D) {
    double best = 1e300;
    for (const auto& iv : D.intervals()) {
        if (x >= iv.lo && x <= iv.hi) return 0.0;
        best = std::min(best, std::min(std::fabs(x - iv.lo), std::fabs(x - iv.hi)));
    }
    return best;
}

// sup over A of dist(., B). The distance function is piecewise linear with
// kinks at B's endpoints and gap midpoints, so the supremum over each
// interval of A is attained at its endpoints or at a kink inside it.
double directed_hausdorff(const DelegationSet& A, const DelegationSet& B) {
    std::vector<double> kinks;
    const auto& ivs = B.intervals();
    for (size_t i = 0; i < ivs.size(); ++i) {
        kinks.push_back(ivs[i].lo);
        kinks.push_back(ivs[i].hi);
        if (i + 1 < ivs.size())
            kinks.push_back(0.5 * (ivs[i].hi + ivs[i + 1].lo));
    }
    double sup = 0.0;
    for (const auto& iv : A.intervals()) {
        sup = std::max({sup, point_distance(iv.lo, B), point_distance(iv.hi, B)});
        for (double k : kinks)
            if (k > iv.lo && k < iv.hi) sup = std::max(sup, point_distance(k, B));
    }
    return sup;
}

double hausdorff(const DelegationSet& A, const DelegationSet& B) {
    return std::max(directed_hausdorff(A, B), directed_hausdorff(B, A));
}

} // namespace

CharacterizationReport verify_characterization(const DecisionSetting& setting,
                                               const CostModel& cost,
                                               const std::vector<double>& grid,
                                               int jobs) {
    CharacterizationReport rep;
    rep.oracle = enumerate_best(setting, cost, grid, jobs);
    const SolveResult s = solve(setting, cost);
    rep.solve_value = s.evaluation.U_P;
    rep.solve_form = s.classification;
    rep.oracle.parametric_value = rep.solve_value;

    rep.value_ok = rep.oracle.best_value <= rep.solve_value + 1e-6;
    rep.gaps_ok = true;
    for (const auto& gc : rep.oracle.gap_checks)
        if (!gc.pass) rep.gaps_ok = false;

    // Nearest characterized form: smallest Hausdorff distance between the
    // best subset and each family's own optimum. A coarse grid cannot express
    // a gap narrower than its spacing, so shape heuristics on the subset
    // alone under-report hollows; distance to the family optima does not.
    DelegationSet best_set = DelegationSet::point(rep.oracle.grid.front());
    {
        std::vector<std::pair<double, double>> pts;
        for (int idx : rep.oracle.best_subset) {
            const double d = rep.oracle.grid[static_cast<size_t>(idx)];
            pts.emplace_back(d, d);
        }
        best_set = DelegationSet::make(pts);
    }
    double best_dist = 1e300;
    for (const auto& [name, fb] : s.per_family) {
        if (!fb.feasible) continue;
        const double d = hausdorff(best_set, fb.set);
        if (d < best_dist) {
            best_dist = d;
            rep.oracle.nearest_form = name;
        }
    }

    auto bucket = [](const std::string& form) {
        return form == "hollow_singleton" ? std::string("hollow") : form;
    };
    rep.form_matches = bucket(rep.oracle.nearest_form) == bucket(rep.solve_form);
    rep.pass = rep.value_ok && rep.gaps_ok && rep.form_matches;
    return rep;
}

} // namespace delegation
