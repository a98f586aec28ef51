#include "delegation/numerics.hpp"
#include "delegation/errors.hpp"

#include <cmath>
#include <cstdlib>

namespace delegation::num {

namespace {

// Order-8 Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kNodes[4] = {
    0.1834346424956498049394761,
    0.5255324099163289858177390,
    0.7966664774136267395915539,
    0.9602898564975362316835609,
};
constexpr double kWeights[4] = {
    0.3626837833783619829651504,
    0.3137066458778872873379622,
    0.2223810344533744705443560,
    0.1012285362903762591525314,
};

} // namespace

double gauss_legendre(const std::function<double(double)>& g, double lo, double hi,
                      int panels) {
    if (panels < 1) panels = 1;
    const double width = (hi - lo) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double a = lo + p * width;
        const double mid = a + 0.5 * width;
        const double half = 0.5 * width;
        double acc = 0.0;
        for (int k = 0; k < 4; ++k) {
            const double d = half * kNodes[k];
            acc += kWeights[k] * (g(mid - d) + g(mid + d));
        }
        total += acc * half;
    }
    if (!std::isfinite(total))
        throw NumericError("quadrature produced a non-finite value");
    return total;
}

int default_panels() {
    static const int panels = [] {
        if (const char* env = std::getenv("DELEGATE_QUAD_PANELS")) {
            const int v = std::atoi(env);
            if (v >= 1) return v;
        }
        return 256;
    }();
    return panels;
}

double bisect(const std::function<double(double)>& f, double lo, double hi,
              double xtol, int max_iter) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw NumericError("bisect: root not bracketed");
    for (int i = 0; i < max_iter && (hi - lo) > xtol; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

void expand_bracket(const std::function<double(double)>& f, double& lo, double& hi,
                    int max_expand) {
    double flo = f(lo);
    double fhi = f(hi);
    double step = hi - lo;
    for (int i = 0; i < max_expand; ++i) {
        if ((flo > 0.0) != (fhi > 0.0) || flo == 0.0 || fhi == 0.0) return;
        step *= 2.0;
        lo -= step;
        hi += step;
        flo = f(lo);
        fhi = f(hi);
    }
    throw NumericError("expand_bracket: no sign change found");
}

double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double xtol) {
    constexpr double invphi = 0.6180339887498948482;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > xtol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

double derivative(const std::function<double(double)>& f, double x, double h,
                  double domain_lo, double domain_hi) {
    const double lo = x - h, hi = x + h;
    if (lo >= domain_lo && hi <= domain_hi)
        return (f(hi) - f(lo)) / (2.0 * h);
    if (lo < domain_lo)
        return (f(x + h) - f(x)) / h;
    return (f(x) - f(x - h)) / h;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        v[static_cast<size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    return v;
}

} // namespace delegation::num
