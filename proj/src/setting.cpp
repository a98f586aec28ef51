#include "delegation/setting.hpp"
#include "delegation/errors.hpp"
#include "delegation/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace delegation {

PayoffKernel PayoffKernel::quadratic_generic() {
    PayoffKernel k;
    k.a = [](double y) { return -0.5 * y * y; };
    k.a_prime = [](double y) { return -y; };
    k.a_second = [](double) { return -1.0; };
    k.normalization = Normalization::Generic;
    k.quadratic = true;
    k.name = "quadratic";
    return k;
}

PayoffKernel PayoffKernel::quadratic_loss() {
    PayoffKernel k = quadratic_generic();
    k.normalization = Normalization::QuadraticLoss;
    k.name = "quadratic_loss";
    return k;
}

PayoffKernel PayoffKernel::custom(Fn a, Fn a_prime, Fn a_second, std::string name) {
    PayoffKernel k;
    k.a = std::move(a);
    k.a_prime = std::move(a_prime);
    k.a_second = std::move(a_second);
    k.normalization = Normalization::Generic;
    k.quadratic = false;
    k.name = std::move(name);
    return k;
}

BiasFunction BiasFunction::constant_bias(double beta) {
    BiasFunction b;
    b.b = [beta](double) { return beta; };
    b.b_prime = [](double) { return 0.0; };
    b.constant = true;
    b.constant_value = beta;
    b.name = "constant";
    return b;
}

BiasFunction BiasFunction::custom(Fn b, Fn b_prime, std::string name) {
    BiasFunction out;
    out.b = std::move(b);
    out.b_prime = std::move(b_prime);
    out.constant = false;
    out.name = std::move(name);
    return out;
}

DecisionSetting::DecisionSetting(StateDistribution dist, PayoffKernel kernel,
                                 BiasFunction bias)
    : dist_(std::move(dist)), kernel_(std::move(kernel)), bias_(std::move(bias)) {
    dist_.validate();

    // Bias admissibility: 1 + b' > 0 with a safety floor. Slopes within 1e-6
    // of -1 make the target level g nearly flat and its inversion unstable.
    constexpr int kGrid = 2001;
    double min_one_plus_bp = 1e100;
    for (int i = 0; i < kGrid; ++i) {
        const double t = theta_lo() + dist_.width() * i / (kGrid - 1);
        min_one_plus_bp = std::min(min_one_plus_bp, 1.0 + bias_.b_prime(t));
    }
    if (min_one_plus_bp < 1e-6)
        throw ConfigError("bias: min(1 + b') = " + std::to_string(min_one_plus_bp) +
                          " below the 1e-6 admissibility floor");

    if (kernel_.normalization == Normalization::QuadraticLoss && !kernel_.quadratic)
        throw ConfigError("kernel: QuadraticLoss normalization requires a(y) = -y^2/2");

    mean_theta_ = dist_.mean();
    mean_theta_sq_ = dist_.mean_sq();
    mean_g_ = dist_.expectation([this](double t) { return g(t); });
    mean_g_sq_ = dist_.expectation([this](double t) { const double v = g(t); return v * v; });

    // Concavity on a provisional range around the favorite decisions.
    y_P0_ = solve_foc(mean_theta_);
    y_A0_ = solve_foc(mean_g_);

    const double yp_lo = solve_foc(theta_lo());
    const double ya_hi = solve_foc(g(theta_hi()));
    const double span = ya_hi - yp_lo;
    if (!(span > 0.0))
        throw ConfigError("setting: favorite-decision span is not positive");
    // Contains all optimizer search regions, including the high points used
    // by the construction in the appendix.
    working_lo_ = yp_lo - span;
    working_hi_ = ya_hi + 2.0 * span;

    // Strict concavity on the working range. Isolated zeros of a'' (the
    // quartic -y^4/4 at the origin) are admissible; flat or convex stretches
    // are not.
    bool prev_zero = false;
    for (int i = 0; i < kGrid; ++i) {
        const double y = working_lo_ + (working_hi_ - working_lo_) * i / (kGrid - 1);
        const double app = kernel_.a_second(y);
        if (app > 0.0)
            throw ConfigError("kernel: a''(y) must be nonpositive on the working "
                              "range (violated at y = " + std::to_string(y) + ")");
        const bool zero = app == 0.0;
        if (zero && prev_zero)
            throw ConfigError("kernel: a'' vanishes on a whole grid cell near y = " +
                              std::to_string(y) + "; a must be strictly concave");
        prev_zero = zero;
    }

    // Range condition at the working-range endpoints: -a' must cross every
    // target level used by either player.
    const double lo_target = std::min(theta_lo(), g(theta_lo()));
    const double hi_target = std::max(theta_hi(), g(theta_hi()));
    if (!(-kernel_.a_prime(working_lo_) < lo_target))
        throw ConfigError("kernel: range condition fails at the lower working bound "
                          "(-a'(y) must fall below all favorite-decision targets)");
    if (!(-kernel_.a_prime(working_hi_) > hi_target))
        throw ConfigError("kernel: range condition fails at the upper working bound "
                          "(-a'(y) must exceed all favorite-decision targets)");

    theta_A_ = g_inverse(mean_g_);

    fast_uqc_ = dist_.uniform && kernel_.quadratic && bias_.constant;
}

double DecisionSetting::solve_foc(double target) const {
    if (kernel_.quadratic) return target;
    // Root of a'(y) + target = 0; a' is strictly decreasing.
    double lo = -1.0, hi = 1.0;
    auto f = [&](double y) { return kernel_.a_prime(y) + target; };
    try {
        num::expand_bracket(f, lo, hi);
    } catch (const NumericError&) {
        throw ConfigError("favorite decision not bracketed in working range for "
                          "target " + std::to_string(target) +
                          "; the kernel violates the range condition");
    }
    return num::bisect(f, lo, hi, 1e-13 * std::max(1.0, std::fabs(target)));
}

double DecisionSetting::g_inverse(double level) const {
    if (bias_.constant) return level - bias_.constant_value;
    const double glo = g(theta_lo()), ghi = g(theta_hi());
    if (level <= glo) return theta_lo();
    if (level >= ghi) return theta_hi();
    return num::bisect([&](double t) { return g(t) - level; }, theta_lo(), theta_hi(),
                       1e-13 * dist_.width());
}

double DecisionSetting::u_P(double y, double theta) const {
    if (kernel_.normalization == Normalization::QuadraticLoss) {
        const double d = y - theta;
        return -d * d;
    }
    return theta * y + kernel_.a(y);
}

double DecisionSetting::u_A(double y, double theta) const {
    if (kernel_.normalization == Normalization::QuadraticLoss) {
        const double d = y - theta - bias_.b(theta);
        return -d * d;
    }
    return g(theta) * y + kernel_.a(y);
}

double DecisionSetting::mean_u_P(double y) const {
    if (kernel_.normalization == Normalization::QuadraticLoss)
        return -(y * y - 2.0 * y * mean_theta_ + mean_theta_sq_);
    return mean_theta_ * y + kernel_.a(y);
}

double DecisionSetting::mean_u_A(double y) const {
    if (kernel_.normalization == Normalization::QuadraticLoss)
        return -(y * y - 2.0 * y * mean_g_ + mean_g_sq_);
    return mean_g_ * y + kernel_.a(y);
}

double DecisionSetting::favorite_decision(Player who, double theta) const {
    if (theta < theta_lo() - 1e-12 || theta > theta_hi() + 1e-12)
        throw RangeError("favorite_decision: theta outside the support");
    const double target = who == Player::Principal ? theta : g(theta);
    return solve_foc(target);
}

AssumptionReport DecisionSetting::check_assumptions(int grid_n) const {
    if (grid_n < 3) grid_n = 3;
    AssumptionReport rep;

    // A1: f + (Bf)' > 0 on the grid. (Bf)' is analytic for constant bias with
    // an analytic f'; otherwise central differences with h = width * 1e-5.
    auto Bf = [this](double t) { return bias_.B(t) * dist_.pdf(t); };
    const double h = dist_.width() * 1e-5;
    rep.a1.worst_value = 1e100;
    for (int i = 0; i < grid_n; ++i) {
        const double t = theta_lo() + dist_.width() * i / (grid_n - 1);
        double bf_prime;
        if (bias_.constant && dist_.pdf_derivative)
            bf_prime = bias_.constant_value * dist_.pdf_derivative(t);
        else
            bf_prime = num::derivative(Bf, t, h, theta_lo(), theta_hi());
        const double margin = dist_.pdf(t) + bf_prime;
        if (margin < rep.a1.worst_value) {
            rep.a1.worst_value = margin;
            rep.a1.worst_point = t;
        }
    }
    rep.a1.pass = rep.a1.worst_value > 0.0;
    if (!rep.a1.pass) {
        std::ostringstream os;
        os << "A1 fails: f + (Bf)' = " << rep.a1.worst_value << " at theta = "
           << rep.a1.worst_point;
        rep.a1.detail = os.str();
    }

    // A2: b(lo) >= 0, b(hi) > 0, E[b] > 0.
    const double b_lo = bias_.b(theta_lo());
    const double b_hi = bias_.b(theta_hi());
    const double mean_b = mean_g_ - mean_theta_;
    rep.a2.pass = b_lo >= 0.0 && b_hi > 0.0 && mean_b > 0.0;
    rep.a2.worst_value = std::min({b_lo, b_hi, mean_b});
    if (!rep.a2.pass) {
        std::ostringstream os;
        os << "A2 fails: b(lo) = " << b_lo << ", b(hi) = " << b_hi
           << ", E[b] = " << mean_b;
        rep.a2.detail = os.str();
    }

    // A3: lo + b(lo) < E[theta].
    rep.a3.worst_value = mean_theta_ - g(theta_lo());
    rep.a3.worst_point = theta_lo();
    rep.a3.pass = rep.a3.worst_value > 0.0;
    if (!rep.a3.pass) {
        std::ostringstream os;
        os << "A3 fails: lo + b(lo) = " << g(theta_lo()) << " >= E[theta] = "
           << mean_theta_;
        rep.a3.detail = os.str();
    }
    return rep;
}

DecisionSetting uqc_setting(double beta, Normalization norm) {
    PayoffKernel k = norm == Normalization::QuadraticLoss ? PayoffKernel::quadratic_loss()
                                                          : PayoffKernel::quadratic_generic();
    return DecisionSetting(uniform_distribution(0.0, 1.0), std::move(k),
                           BiasFunction::constant_bias(beta));
}

} // namespace delegation
