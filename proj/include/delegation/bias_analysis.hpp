#pragma once

#include "delegation/optimizer.hpp"

namespace delegation {

// Optimal-delegation value V(beta) in the UQC setting. For beta > 0 this is
// solve(...).U_P over the three families; for beta = 0 the families are
// replaced by the symmetric punctured interval [0,1] \ (1/2 - r, 1/2 + r)
// over r >= 0 (the unbiased problem is outside A2).
double delegation_value(double beta, const CostModel& cost, int grid_n = 200);

// The unbiased optimum: radius, effort, value, and the realized set.
struct UnbiasedOptimum {
    double radius = 0.0;
    double effort = 0.0;
    double value = 0.0;
    DelegationSet set;
};

UnbiasedOptimum unbiased_optimum(const CostModel& cost, int grid_n = 200);

struct BiasCurve {
    double kappa = 0.0;
    std::vector<double> betas;
    std::vector<double> values;    // V(beta) per grid point
    double beta_star = 0.0;        // argmax, golden-refined to 1e-4
    double value_star = 0.0;       // V(beta_star)
    double unbiased_value = 0.0;   // V(0)
};

BiasCurve optimal_bias(double kappa, const std::vector<double>& beta_grid,
                       int grid_n = 200, int jobs = 1);

struct SzalayCondition {
    bool holds = false;     // c'(e0)/c''(e0) > 1 - e0, strictly
    bool boundary = false;  // equality within 1e-12 (reported as false)
    double e0 = 0.0;        // effort at the unbiased unrestricted return
    double ratio = 0.0;     // c'(e0)/c''(e0)
};

// e0 is the effort chosen by an unbiased agent facing an unrestricted set:
// the return is Var(theta) = 1/12 in loss units.
SzalayCondition szalay_condition(const CostModel& cost);

struct TranslationBound {
    bool applicable = false; // szalay_condition must hold
    double radius = 0.0;     // unbiased optimal gap radius r
    double effort = 0.0;     // e* at the unbiased optimum
    double V0 = 0.0;
    double V_beta = 0.0;
    double lower_bound = 0.0;     // beta (2 r (1 - e*) - beta)
    bool bound_holds = false;     // V(beta) - V(0) >= bound - 1e-6
    double shifted_gain = 0.0;    // Delta_A of beta + D* at bias beta
    double shifted_effort = 0.0;
    bool shift_invariant = false; // gain/effort match the unbiased ones (1e-9)
};

TranslationBound translation_bound_check(double kappa, double beta, int grid_n = 200);

// Solves beta^2 - (4/3) beta^3 = gain on [0, 1/2]: the bias whose
// informed-agent delegation loss equals the given gain.
double informed_equivalent_bias(double gain);

} // namespace delegation
