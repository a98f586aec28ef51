#pragma once

#include "delegation/principal.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace delegation {

enum class Family { Hollow, Interval, HighPoint };

std::string family_name(Family f);

// One of the three candidate shapes for an optimal delegation set.
//   Hollow:    [y_A(lo) ^ y0, y0] u [y1, y2], y0 < y_A0 < y1 <= y2, with y1
//              the ex ante conjugate of y0 (agent indifferent).
//   Interval:  [y_A(lo), y0] with y_P0 < y0 < y_A0.
//   HighPoint: [y_A(lo) ^ y0, y0] u {ybar}, y0 < y_A0 < y_A(hi) < ybar, with
//              the agent ex ante strictly preferring y0.
struct DelegationForm {
    Family kind = Family::Interval;
    double y0 = 0.0;
    double y1 = 0.0;   // Hollow
    double y2 = 0.0;   // Hollow
    double ybar = 0.0; // HighPoint

    static DelegationForm hollow(double y0, double y1, double y2);
    static DelegationForm interval(double y0);
    static DelegationForm high_point(double y0, double ybar);
};

// Canonical set for a form; throws ConfigError naming any violated
// constraint (ordering, conjugacy within 1e-8, strict ex ante preference).
DelegationSet realize(const DecisionSetting& setting, const DelegationForm& form);

struct FamilyBest {
    bool feasible = false;
    DelegationForm form;
    DelegationSet set;
    double U_P = 0.0;
    Evaluation evaluation;
};

// Coarse grid (grid_n per dimension) over the family's parameter box plus
// golden-section refinement (coordinate descent in 2D) to parameter
// tolerance 1e-6. An empty box yields feasible = false, not an error.
FamilyBest optimize_family(const DecisionSetting& setting, const CostModel& cost,
                           Family family, int grid_n = 200);

struct RegimeFlags {
    bool low_bias = false;       // E[theta + b] <= theta_hat + b(theta_hat)
    bool very_high_bias = false; // u_P1({y_P0}) >= u_P1([y_A(lo), y_A0])
    double min_arrow_pratt = 0.0;
};

struct SolveResult {
    DelegationForm best_form;
    DelegationSet best_set;
    Evaluation evaluation;
    // hollow | hollow_singleton | interval | high_point. A hollow whose upper
    // interval is a point stays hollow when the agent is ex ante indifferent
    // (within 1e-8); high_point requires a strict preference gap > 1e-6.
    std::string classification;
    std::map<std::string, FamilyBest> per_family;
    double singleton_guard_U_P = 0.0; // U_P({y_P0}), always-feasible guard
    RegimeFlags regime_flags;
};

SolveResult solve(const DecisionSetting& setting, const CostModel& cost,
                  int grid_n = 200);

struct RegimeCell {
    double beta = 0.0;
    double kappa = 0.0;
    std::string form;
    double y0 = 0.0;
    double y1 = 0.0;          // hollow only
    double y2_or_ybar = 0.0;  // hollow cap or high point
    double U_P = 0.0;
    double effort = 0.0;
};

// UQC preset with Szalay costs over the (beta, kappa) grid; cells are
// independent and evaluated in parallel, merged in cell order.
std::vector<RegimeCell> regime_map(const std::vector<double>& betas,
                                   const std::vector<double>& kappas,
                                   int grid_n = 200, int jobs = 1);

// CSV with header beta,kappa,form,y0,y1,y2_or_ybar,U_P,effort; floats with
// 10 significant digits; empty cells for parameters a form does not have.
std::string regime_map_csv(const std::vector<RegimeCell>& cells);

// The appendix construction: for bias in (1/4, 1/2), pick a high point and a
// comparison cap, build a near-step effort function separating their returns,
// and verify on search grids that the high-point set beats every interval
// and hollow candidate. Halves eps on failure (up to 10 times).
struct HighPointDemo {
    bool success = false;
    double beta = 0.0;
    double eps_requested = 0.0;
    double eps_used = 0.0;
    int attempts = 0;

    double ybar = 0.0;     // selected high point, in (1 + beta, 3/2 + 2 beta)
    double y0_star = 0.0;  // comparison cap, in (1/2, 1/2 + beta)
    double delta0 = 0.0;   // Delta_A([beta, y0_star])
    double delta1 = 0.0;   // Delta_A([beta, 1/2] u {ybar})
    double u0 = 0.0;       // principal payoff of the constant decision 1/2
    double u_P1_high = 0.0;        // u_P1([beta, 1/2] u {ybar})
    double u_P1_hollow_star = 0.0; // u_P1([beta, y0_star] u {conjugate})

    bool ineq_delta = false;       // delta1 > delta0
    bool ineq_high_above_u0 = false;      // u_P1_high > u0
    bool ineq_hollow_below_u0 = false;    // u_P1_hollow_star < u0
    bool ineq_high_above_hollow = false;  // u_P1_high > u_P1_hollow_star

    double cost_x0 = 0.0, cost_s = 0.0;
    double value_high_point = 0.0; // U_P of the constructed high-point set
    double best_high_point = 0.0;  // family search seeded with the construction
    double best_interval = 0.0;
    double best_hollow = 0.0;
    double singleton_value = 0.0;
    bool dominates_interval = false;
    bool dominates_hollow = false;

    std::string failure; // violated inequality when !success
};

HighPointDemo high_point_demo(double beta, double eps = 0.01, int grid_n = 200);

} // namespace delegation
