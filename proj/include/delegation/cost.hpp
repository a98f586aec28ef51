#pragma once

#include <functional>
#include <string>

namespace delegation {

enum class CostKind { SzalayExponential, NearStepLogistic, Custom };

// Effort cost c(e) on [0, 1) and the induced effort function
// effort(x) = (c')^{-1}(x), the agent's best response to return x.
//
// SzalayExponential(kappa): c(e) = kappa [(1 - e) log(1 - e) + e], giving
// effort(x) = 1 - exp(-x/kappa) with a constant Arrow-Pratt ratio 1/kappa.
//
// NearStepLogistic(eps, x0, s): effort specified directly as
// eps * sigma((x - x0)/s), a differentiable strictly increasing
// approximation of eps * [x >= x0]. Used by the high-point construction,
// which only constrains the cost at four points; effort saturates at eps,
// so c' jumps to infinity at e = eps rather than at e = 1.
struct CostModel {
    CostKind kind = CostKind::SzalayExponential;
    double kappa = 0.0;          // SzalayExponential
    double eps = 0.0, x0 = 0.0, s = 0.0; // NearStepLogistic
    std::function<double(double)> custom_c, custom_c_prime, custom_c_second;
    std::string name;

    static CostModel szalay(double kappa);
    static CostModel near_step(double eps, double x0, double s);
    static CostModel custom(std::function<double(double)> c,
                            std::function<double(double)> c_prime,
                            std::function<double(double)> c_second);

    double c(double e) const;
    double c_prime(double e) const;
    double c_second(double e) const;

    // (c')^{-1}(x): closed form for the built-ins, bisection for Custom.
    double effort(double x) const;
    double effort_prime(double x) const;
    double effort_second(double x) const;

    // Grid checks c(0) = 0, c'(0) = 0, c'' > 0, c' divergence at the top of
    // the effective effort range (1 for Szalay/Custom, eps for NearStep).
    void validate() const;
};

// -effort''(x)/effort'(x): analytic for built-ins, central differences with
// step 1e-6 * max(x, 1) for Custom. Throws NumericError when effort'(x)
// falls below 1e-14.
double arrow_pratt(const CostModel& cost, double x);

} // namespace delegation
