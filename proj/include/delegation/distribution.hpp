#pragma once

#include <functional>
#include <string>

namespace delegation {

using Fn = std::function<double(double)>;

// State distribution F on [support_lo, support_hi] with density f.
// pdf_derivative may be empty; consumers fall back to finite differences.
struct StateDistribution {
    double support_lo = 0.0;
    double support_hi = 1.0;
    Fn cdf;
    Fn pdf;
    Fn pdf_derivative; // optional

    std::string name; // for diagnostics only

    // Set by factories that know the density is (piecewise) polynomial of low
    // degree, so a single order-8 panel integrates polynomial payoffs exactly.
    bool polynomial_pdf = false;
    bool uniform = false;

    double width() const { return support_hi - support_lo; }

    // f'(theta); finite-differenced when no analytic derivative is supplied.
    double pdf_prime(double theta) const;

    // E[g(theta)] by composite Gauss-Legendre quadrature over the support.
    double expectation(const Fn& g, int panels = -1) const;

    // Integral of g(theta) f(theta) over [a, b] (a sub-range of the support).
    double integrate(const Fn& g, double a, double b, int panels = -1) const;

    double mean() const;
    double mean_sq() const;

    // E[theta | theta >= t]; throws NumericError when 1 - F(t) < 1e-12.
    double conditional_mean_above(double t) const;

    // Grid checks: density positive, cdf endpoints/monotone, unit mass.
    void validate(int grid_n = 2001) const;
};

StateDistribution uniform_distribution(double lo, double hi);

// F((theta - lo)/(hi - lo))^k on [lo, hi]; k = 2 gives F(theta) = theta^2
// on [0, 1]. Density vanishes at the lower endpoint for k > 1, which the
// positivity check tolerates (it inspects interior grid points).
StateDistribution power_distribution(double k, double lo, double hi);

} // namespace delegation
