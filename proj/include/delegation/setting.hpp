#pragma once

#include "delegation/distribution.hpp"

#include <string>

namespace delegation {

enum class Normalization { Generic, QuadraticLoss };
enum class Player { Principal, Agent };

// Decision payoff kernel a(y): strictly concave, defines u_P = theta*y + a(y).
// QuadraticLoss fixes a(y) = -y^2/2 and reports utilities in loss units
// u_i = -(y - theta - b_i)^2, i.e. 2*(generic value) minus a decision-
// irrelevant state term.
struct PayoffKernel {
    Fn a;
    Fn a_prime;
    Fn a_second;
    Normalization normalization = Normalization::Generic;
    bool quadratic = false; // a(y) == -y^2/2
    std::string name;

    static PayoffKernel quadratic_generic();
    static PayoffKernel quadratic_loss();
    static PayoffKernel custom(Fn a, Fn a_prime, Fn a_second, std::string name = "custom");
};

// State-dependent bias b(theta) with 1 + b'(theta) > 0.
struct BiasFunction {
    Fn b;
    Fn b_prime;
    bool constant = false;
    double constant_value = 0.0;
    std::string name;

    double B(double theta) const { return b(theta) / (1.0 + b_prime(theta)); }

    static BiasFunction constant_bias(double beta);
    static BiasFunction custom(Fn b, Fn b_prime, std::string name = "custom");
};

struct AssumptionCheck {
    bool pass = true;
    double worst_point = 0.0; // grid state achieving the worst margin
    double worst_value = 0.0; // the margin itself (negative = violated)
    std::string detail;
};

struct AssumptionReport {
    AssumptionCheck a1, a2, a3;
    bool all_pass() const { return a1.pass && a2.pass && a3.pass; }
};

// The decision environment (F, a, b) plus derived favorite-decision maps.
// Immutable after construction; all member operations are pure.
class DecisionSetting {
  public:
    DecisionSetting(StateDistribution dist, PayoffKernel kernel, BiasFunction bias);

    const StateDistribution& dist() const { return dist_; }
    const PayoffKernel& kernel() const { return kernel_; }
    const BiasFunction& bias() const { return bias_; }
    Normalization normalization() const { return kernel_.normalization; }

    double theta_lo() const { return dist_.support_lo; }
    double theta_hi() const { return dist_.support_hi; }

    // theta + b(theta), the agent's target level; strictly increasing.
    double g(double theta) const { return theta + bias_.b(theta); }
    // Inverse of g by monotone bisection (closed form for constant bias).
    double g_inverse(double level) const;

    double u_P(double y, double theta) const;
    double u_A(double y, double theta) const;

    // E[u_P(y, theta)] and E[u_A(y, theta)]; closed in the state moments.
    double mean_u_P(double y) const;
    double mean_u_A(double y) const;

    double favorite_decision(Player who, double theta) const;
    double y_P(double theta) const { return favorite_decision(Player::Principal, theta); }
    double y_A(double theta) const { return favorite_decision(Player::Agent, theta); }

    double y_P0() const { return y_P0_; }
    double y_A0() const { return y_A0_; }
    // Root of theta + b(theta) = E[theta + b(theta)].
    double theta_A() const { return theta_A_; }

    double mean_theta() const { return mean_theta_; }
    double mean_theta_sq() const { return mean_theta_sq_; }
    double mean_g() const { return mean_g_; }     // E[theta + b(theta)]
    double mean_g_sq() const { return mean_g_sq_; }

    double working_lo() const { return working_lo_; }
    double working_hi() const { return working_hi_; }

    // Hot-loop flag: uniform state + quadratic kernel + constant bias admits
    // closed-form piecewise integrals.
    bool fast_uqc() const { return fast_uqc_; }

    AssumptionReport check_assumptions(int grid_n = 2001) const;

  private:
    double solve_foc(double target) const; // root of a'(y) + target = 0

    StateDistribution dist_;
    PayoffKernel kernel_;
    BiasFunction bias_;
    double mean_theta_, mean_theta_sq_, mean_g_, mean_g_sq_;
    double y_P0_, y_A0_, theta_A_;
    double working_lo_, working_hi_;
    bool fast_uqc_;
};

// UQC preset: uniform state on [0,1], quadratic payoffs, constant bias beta.
// Loss normalization by default (the setting's numeric landmarks are stated
// in loss units); pass Generic for the envelope identity.
DecisionSetting uqc_setting(double beta,
                            Normalization norm = Normalization::QuadraticLoss);

} // namespace delegation
