#include "delegation/cost.hpp"
#include "delegation/errors.hpp"
#include "delegation/numerics.hpp"

#include <cmath>

namespace delegation {

namespace {
double logistic(double z) {
    // Stable on both tails.
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}
} // namespace

CostModel CostModel::szalay(double kappa) {
    if (!(kappa > 0.0)) throw ConfigError("szalay cost: kappa must be positive");
    CostModel m;
    m.kind = CostKind::SzalayExponential;
    m.kappa = kappa;
    m.name = "szalay";
    return m;
}

CostModel CostModel::near_step(double eps, double x0, double s) {
    if (!(eps > 0.0 && eps < 0.5))
        throw ConfigError("near_step cost: eps must lie in (0, 1/2)");
    if (!(x0 > 0.0) || !(s > 0.0))
        throw ConfigError("near_step cost: x0 and s must be positive");
    CostModel m;
    m.kind = CostKind::NearStepLogistic;
    m.eps = eps;
    m.x0 = x0;
    m.s = s;
    m.name = "near_step";
    return m;
}

CostModel CostModel::custom(std::function<double(double)> c,
                            std::function<double(double)> c_prime,
                            std::function<double(double)> c_second) {
    CostModel m;
    m.kind = CostKind::Custom;
    m.custom_c = std::move(c);
    m.custom_c_prime = std::move(c_prime);
    m.custom_c_second = std::move(c_second);
    m.name = "custom";
    return m;
}

double CostModel::c(double e) const {
    switch (kind) {
        case CostKind::SzalayExponential:
            if (e <= 0.0) return 0.0;
            return kappa * ((1.0 - e) * std::log1p(-e) + e);
        case CostKind::NearStepLogistic: {
            // Integral of c' = effort^{-1} from the effort at return 0; the
            // construction never consumes c itself, only c' orderings.
            if (e <= 0.0) return 0.0;
            if (e >= eps) throw RangeError("near_step cost: effort saturates at eps");
            const double u = e / eps;
            return x0 * e + s * eps * (u * std::log(u) + (1.0 - u) * std::log1p(-u));
        }
        case CostKind::Custom:
            return custom_c(e);
    }
    return 0.0;
}

double CostModel::c_prime(double e) const {
    switch (kind) {
        case CostKind::SzalayExponential:
            return -kappa * std::log1p(-e);
        case CostKind::NearStepLogistic: {
            if (e <= 0.0 || e >= eps)
                throw RangeError("near_step cost: c' defined on (0, eps)");
            return x0 + s * std::log(e / (eps - e));
        }
        case CostKind::Custom:
            return custom_c_prime(e);
    }
    return 0.0;
}

double CostModel::c_second(double e) const {
    switch (kind) {
        case CostKind::SzalayExponential:
            return kappa / (1.0 - e);
        case CostKind::NearStepLogistic: {
            if (e <= 0.0 || e >= eps)
                throw RangeError("near_step cost: c'' defined on (0, eps)");
            return s * eps / (e * (eps - e));
        }
        case CostKind::Custom:
            return custom_c_second(e);
    }
    return 0.0;
}

double CostModel::effort(double x) const {
    if (x <= 0.0) return 0.0;
    switch (kind) {
        case CostKind::SzalayExponential:
            return -std::expm1(-x / kappa);
        case CostKind::NearStepLogistic:
            return eps * logistic((x - x0) / s);
        case CostKind::Custom: {
            // c' is strictly increasing with c'(e) -> infinity as e -> 1.
            const double top = 1.0 - 1e-12;
            if (custom_c_prime(top) <= x) return top;
            return num::bisect([&](double e) { return custom_c_prime(e) - x; }, 0.0, top,
                               1e-14, 200);
        }
    }
    return 0.0;
}

double CostModel::effort_prime(double x) const {
    switch (kind) {
        case CostKind::SzalayExponential:
            return std::exp(-x / kappa) / kappa;
        case CostKind::NearStepLogistic: {
            const double sig = logistic((x - x0) / s);
            return eps / s * sig * (1.0 - sig);
        }
        case CostKind::Custom: {
            const double h = 1e-6 * std::max(std::fabs(x), 1.0);
            auto e = [this](double v) { return effort(v); };
            return (e(x + h) - e(x - h)) / (2.0 * h);
        }
    }
    return 0.0;
}

double CostModel::effort_second(double x) const {
    switch (kind) {
        case CostKind::SzalayExponential:
            return -std::exp(-x / kappa) / (kappa * kappa);
        case CostKind::NearStepLogistic: {
            const double sig = logistic((x - x0) / s);
            return eps / (s * s) * sig * (1.0 - sig) * (1.0 - 2.0 * sig);
        }
        case CostKind::Custom: {
            const double h = 1e-6 * std::max(std::fabs(x), 1.0);
            auto e = [this](double v) { return effort(v); };
            return (e(x + h) - 2.0 * e(x) + e(x - h)) / (h * h);
        }
    }
    return 0.0;
}

void CostModel::validate() const {
    const double top = kind == CostKind::NearStepLogistic ? eps : 1.0;
    if (std::fabs(c(0.0)) > 1e-12) throw ConfigError("cost: c(0) must be 0");
    if (kind != CostKind::NearStepLogistic && std::fabs(c_prime(0.0)) > 1e-9)
        throw ConfigError("cost: c'(0) must be 0");
    double prev = -1e300;
    for (int i = 1; i <= 64; ++i) {
        const double e = top * i / 65.0;
        if (!(c_second(e) > 0.0))
            throw ConfigError("cost: c'' must be positive on the effort range");
        const double cp = c_prime(e);
        if (cp <= prev) throw ConfigError("cost: c' must be strictly increasing");
        prev = cp;
    }
    if (!(c_prime(top - top * 1e-6) > c_prime(top / 2.0)))
        throw ConfigError("cost: c' must diverge at the top of the effort range");
    // Round trip c'(effort(x)) = x on sampled positive returns. Saturated
    // efforts (within 1e-7 of the top) are skipped: 1 - e is no longer
    // representable accurately enough to invert.
    for (double x : {1e-4, 1e-2, 0.1, 0.5}) {
        const double e = effort(x);
        if (e <= 0.0 || e >= top * (1.0 - 1e-7)) continue;
        if (std::fabs(c_prime(e) - x) > 1e-9 * std::max(1.0, x))
            throw ConfigError("cost: c'(effort(x)) != x beyond tolerance");
    }
}

double arrow_pratt(const CostModel& cost, double x) {
    if (!(x > 0.0)) throw RangeError("arrow_pratt: x must be positive");
    switch (cost.kind) {
        case CostKind::SzalayExponential:
            return 1.0 / cost.kappa;
        case CostKind::NearStepLogistic: {
            const double sig = logistic((x - cost.x0) / cost.s);
            return (2.0 * sig - 1.0) / cost.s;
        }
        case CostKind::Custom: {
            const double ep = cost.effort_prime(x);
            if (std::fabs(ep) < 1e-14)
                throw NumericError("arrow_pratt: effort'(x) below 1e-14");
            return -cost.effort_second(x) / ep;
        }
    }
    return 0.0;
}

} // namespace delegation
