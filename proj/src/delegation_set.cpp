#include "delegation/delegation_set.hpp"
#include "delegation/errors.hpp"
#include "delegation/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace delegation {

namespace {

DelegationSet::Storage canonicalize(std::vector<std::pair<double, double>> raw) {
    if (raw.empty())
        throw ConfigError("delegation set: at least one interval is required");
    for (auto& [lo, hi] : raw) {
        if (!(lo <= hi))
            throw ConfigError("delegation set: interval with lo > hi");
        if (!std::isfinite(lo) || !std::isfinite(hi))
            throw ConfigError("delegation set: non-finite endpoint");
    }
    std::sort(raw.begin(), raw.end());
    DelegationSet::Storage out;
    for (const auto& [lo, hi] : raw) {
        if (!out.empty() && lo <= out.back().hi + kEpsMerge)
            out.back().hi = std::max(out.back().hi, hi);
        else
            out.push_back({lo, hi});
    }
    return out;
}

} // namespace

DelegationSet DelegationSet::make(std::initializer_list<std::pair<double, double>> raw) {
    return make(std::vector<std::pair<double, double>>(raw));
}

DelegationSet DelegationSet::make(const std::vector<std::pair<double, double>>& raw) {
    return DelegationSet(canonicalize(raw));
}

boost::container::small_vector<Gap, 4> DelegationSet::gaps() const {
    boost::container::small_vector<Gap, 4> out;
    for (size_t i = 0; i + 1 < intervals_.size(); ++i)
        out.push_back({intervals_[i].hi, intervals_[i + 1].lo});
    return out;
}

bool DelegationSet::contains(double y, double tol) const {
    for (const auto& iv : intervals_)
        if (y >= iv.lo - tol && y <= iv.hi + tol) return true;
    return false;
}

bool DelegationSet::operator==(const DelegationSet& other) const {
    if (intervals_.size() != other.intervals_.size()) return false;
    for (size_t i = 0; i < intervals_.size(); ++i)
        if (intervals_[i].lo != other.intervals_[i].lo ||
            intervals_[i].hi != other.intervals_[i].hi)
            return false;
    return true;
}

namespace {

// Conjugate of y about a single-peaked value function v with peak at p.
double conjugate_impl(const DecisionSetting& setting, const Fn& v, double p, double y) {
    if (std::fabs(y - p) <= 1e-10) return y;
    if (y < setting.working_lo() || y > setting.working_hi())
        throw RangeError("conjugate: y outside working range");
    if (setting.kernel().quadratic) {
        const double out = 2.0 * p - y;
        if (out < setting.working_lo() || out > setting.working_hi())
            throw RangeError("conjugate: reflected value outside working range");
        return out;
    }
    const double target = v(y);
    auto h = [&](double x) { return v(x) - target; };
    double lo, hi;
    if (y < p) {
        lo = p;
        hi = setting.working_hi();
    } else {
        lo = setting.working_lo();
        hi = p;
    }
    if ((h(lo) > 0.0) == (h(hi) > 0.0))
        throw RangeError("conjugate: no matching decision inside working range");
    return num::bisect(h, lo, hi, 1e-12, 200);
}

} // namespace

double theta_conjugate(const DecisionSetting& setting, double theta, double y) {
    const double p = setting.y_A(theta);
    return conjugate_impl(
        setting, [&](double x) { return setting.u_A(x, theta); }, p, y);
}

double ex_ante_conjugate(const DecisionSetting& setting, double y) {
    return conjugate_impl(
        setting, [&](double x) { return setting.mean_u_A(x); }, setting.y_A0(), y);
}

DelegationSet minimalize(const DecisionSetting& setting, const DelegationSet& D) {
    // Largest agent-optimal decision at theta_lo, smallest at theta_hi.
    auto pick = [&](double theta, bool take_max) {
        const double ideal = setting.y_A(theta);
        const auto& ivs = D.intervals();
        if (ideal <= ivs.front().lo) return ivs.front().lo;
        if (ideal >= ivs.back().hi) return ivs.back().hi;
        // The ideal is interior: either inside an interval or in a gap, in
        // which case the two straddling endpoints are the candidates.
        double lo_cand = ivs.front().lo;
        double hi_cand = ivs.back().hi;
        for (const auto& iv : ivs) {
            if (ideal >= iv.lo && ideal <= iv.hi) return ideal;
            if (iv.hi < ideal) lo_cand = iv.hi;
            if (iv.lo > ideal) {
                hi_cand = iv.lo;
                break;
            }
        }
        const double ul = setting.u_A(lo_cand, theta);
        const double uh = setting.u_A(hi_cand, theta);
        if (std::fabs(ul - uh) <= 1e-9)
            return take_max ? std::max(lo_cand, hi_cand) : std::min(lo_cand, hi_cand);
        return ul > uh ? lo_cand : hi_cand;
    };
    const double y_lo = pick(setting.theta_lo(), /*take_max=*/true);
    const double y_hi = pick(setting.theta_hi(), /*take_max=*/false);

    std::vector<std::pair<double, double>> clipped;
    for (const auto& iv : D.intervals()) {
        const double lo = std::max(iv.lo, y_lo);
        const double hi = std::min(iv.hi, y_hi);
        if (lo <= hi) clipped.emplace_back(lo, hi);
    }
    if (clipped.empty()) clipped.emplace_back(y_lo, y_lo);
    return DelegationSet::make(clipped);
}

} // namespace delegation
