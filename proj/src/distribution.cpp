#include "delegation/distribution.hpp"
#include "delegation/errors.hpp"
#include "delegation/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace delegation {

double StateDistribution::pdf_prime(double theta) const {
    if (pdf_derivative) return pdf_derivative(theta);
    const double h = width() * 1e-5;
    return num::derivative(pdf, theta, h, support_lo, support_hi);
}

double StateDistribution::expectation(const Fn& g, int panels) const {
    return integrate(g, support_lo, support_hi, panels);
}

double StateDistribution::integrate(const Fn& g, double a, double b, int panels) const {
    if (b <= a) return 0.0;
    if (panels < 1) {
        if (polynomial_pdf) {
            panels = 1;
        } else {
            const double share = (b - a) / width();
            panels = std::max(1, static_cast<int>(std::ceil(num::default_panels() * share)));
        }
    }
    return num::gauss_legendre([&](double t) { return g(t) * pdf(t); }, a, b, panels);
}

double StateDistribution::mean() const {
    return expectation([](double t) { return t; });
}

double StateDistribution::mean_sq() const {
    return expectation([](double t) { return t * t; });
}

double StateDistribution::conditional_mean_above(double t) const {
    if (t < support_lo || t >= support_hi)
        throw RangeError("conditional_mean_above: t must lie in [lo, hi)");
    const double tail = 1.0 - cdf(t);
    if (tail < 1e-12)
        throw NumericError("conditional_mean_above: degenerate tail (1 - F(t) < 1e-12)");
    const double num_ = integrate([](double x) { return x; }, t, support_hi);
    return num_ / tail;
}

void StateDistribution::validate(int grid_n) const {
    if (!(support_hi > support_lo))
        throw ConfigError("distribution: support_hi must exceed support_lo");
    if (!cdf || !pdf)
        throw ConfigError("distribution: cdf and pdf are required");
    if (grid_n < 3) grid_n = 3;

    // Positivity and continuity are checked on interior grid points: densities
    // like F(theta) = theta^2 legitimately vanish at a support endpoint.
    double prev_cdf = cdf(support_lo);
    if (std::fabs(prev_cdf) > 1e-8)
        throw ConfigError("distribution: cdf(support_lo) must be 0");
    for (int i = 1; i < grid_n; ++i) {
        const double t = support_lo + width() * i / (grid_n - 1);
        const double c = cdf(t);
        if (c < prev_cdf - 1e-12)
            throw ConfigError("distribution: cdf not nondecreasing on grid");
        prev_cdf = c;
        if (i < grid_n - 1 && !(pdf(t) > 0.0))
            throw ConfigError("distribution: pdf not strictly positive on interior grid");
    }
    if (std::fabs(cdf(support_hi) - 1.0) > 1e-8)
        throw ConfigError("distribution: cdf(support_hi) must be 1");
    const double mass = expectation([](double) { return 1.0; });
    if (std::fabs(mass - 1.0) > 1e-8)
        throw ConfigError("distribution: pdf does not integrate to 1 (got " +
                          std::to_string(mass) + ")");
}

StateDistribution uniform_distribution(double lo, double hi) {
    StateDistribution d;
    d.support_lo = lo;
    d.support_hi = hi;
    const double w = hi - lo;
    d.cdf = [lo, w](double t) { return std::clamp((t - lo) / w, 0.0, 1.0); };
    d.pdf = [w](double) { return 1.0 / w; };
    d.pdf_derivative = [](double) { return 0.0; };
    d.name = "uniform";
    d.polynomial_pdf = true;
    d.uniform = true;
    d.validate();
    return d;
}

StateDistribution power_distribution(double k, double lo, double hi) {
    if (!(k >= 1.0))
        throw ConfigError("power_distribution: k must be >= 1");
    StateDistribution d;
    d.support_lo = lo;
    d.support_hi = hi;
    const double w = hi - lo;
    d.cdf = [lo, w, k](double t) {
        return std::pow(std::clamp((t - lo) / w, 0.0, 1.0), k);
    };
    d.pdf = [lo, w, k](double t) {
        const double u = std::clamp((t - lo) / w, 0.0, 1.0);
        return k * std::pow(u, k - 1.0) / w;
    };
    d.pdf_derivative = [lo, w, k](double t) {
        const double u = std::clamp((t - lo) / w, 0.0, 1.0);
        return k * (k - 1.0) * std::pow(u, k - 2.0) / (w * w);
    };
    d.name = "power";
    d.polynomial_pdf = std::floor(k) == k;
    d.validate();
    return d;
}

} // namespace delegation
