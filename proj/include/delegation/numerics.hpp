#pragma once

#include <functional>
#include <vector>

namespace delegation::num {

// Composite Gauss-Legendre quadrature, fixed order 8 per panel.
// Exact for polynomial integrands up to degree 15 on each panel.
double gauss_legendre(const std::function<double(double)>& g, double lo, double hi,
                      int panels);

// Panel count used when a caller does not specify one. Defaults to 256;
// the environment variable DELEGATE_QUAD_PANELS overrides it (read once).
int default_panels();

// Root of a continuous function with f(lo) and f(hi) of opposite (weak) sign.
// Plain bisection: robust on the monotone residuals used throughout.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double xtol, int max_iter = 200);

// Expands [lo, hi] geometrically around the seed interval until f changes
// sign. Throws NumericError if no bracket is found within max_expand rounds.
void expand_bracket(const std::function<double(double)>& f, double& lo, double& hi,
                    int max_expand = 60);

// Maximizer of a function on [lo, hi] by golden-section search (unimodal f).
double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double xtol);

// Central difference derivative with one-sided fallback at domain edges.
double derivative(const std::function<double(double)>& f, double x, double h,
                  double domain_lo, double domain_hi);

// n equally spaced points from lo to hi inclusive (n >= 2).
std::vector<double> linspace(double lo, double hi, int n);

} // namespace delegation::num
