#pragma once

#include "delegation/setting.hpp"

#include <boost/container/small_vector.hpp>
#include <utility>

namespace delegation {

// Two decisions closer than this are one decision: below root-finder
// tolerance, avoids phantom gaps.
inline constexpr double kEpsMerge = 1e-9;

struct DecisionInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool singleton() const { return hi - lo < kEpsMerge; }
};

// Gap between consecutive intervals: [d1, d2] intersects the set in {d1, d2}.
struct Gap {
    double d1 = 0.0;
    double d2 = 0.0;
};

// A finite union of disjoint closed decision intervals, kept canonical
// (sorted, merged, nonempty). Points are degenerate intervals.
class DelegationSet {
  public:
    using Storage = boost::container::small_vector<DecisionInterval, 4>;

    // Degenerate singleton {0}; canonical and nonempty like any other set.
    DelegationSet() : intervals_{DecisionInterval{0.0, 0.0}} {}

    // Sorts and merges intervals overlapping or closer than kEpsMerge.
    static DelegationSet make(std::initializer_list<std::pair<double, double>> raw);
    static DelegationSet make(const std::vector<std::pair<double, double>>& raw);
    static DelegationSet point(double y) { return make({{y, y}}); }
    static DelegationSet interval(double lo, double hi) { return make({{lo, hi}}); }

    const Storage& intervals() const { return intervals_; }
    size_t size() const { return intervals_.size(); }
    double min() const { return intervals_.front().lo; }
    double max() const { return intervals_.back().hi; }

    boost::container::small_vector<Gap, 4> gaps() const;

    bool contains(double y, double tol = 0.0) const;

    bool operator==(const DelegationSet& other) const;

  private:
    explicit DelegationSet(Storage iv) : intervals_(std::move(iv)) {}
    Storage intervals_;
};

// The unique decision != y with u_A(y', theta) = u_A(y, theta): reflection
// 2 y_A(theta) - y for quadratic kernels, bisection on the far side of the
// peak otherwise. y at the peak is its own conjugate (within 1e-10).
double theta_conjugate(const DecisionSetting& setting, double theta, double y);

// Same with E[u_A(., theta)]; reflection 2 y_A0 - y for quadratic kernels.
double ex_ante_conjugate(const DecisionSetting& setting, double y);

// Minimal representative: intersects D with [y_lo, y_hi] where y_lo is the
// largest agent-optimal decision at theta_lo and y_hi the smallest at
// theta_hi. Payoff-equivalent to D for all interior states, and every
// remaining decision is uniquely optimal in some state.
DelegationSet minimalize(const DecisionSetting& setting, const DelegationSet& D);

} // namespace delegation
