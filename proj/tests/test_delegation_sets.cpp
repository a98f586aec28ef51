#include "delegation/delegation_set.hpp"
#include "delegation/errors.hpp"
#include "delegation/numerics.hpp"
#include "delegation/verify.hpp"

#include <doctest.h>

#include <cmath>

using namespace delegation;

namespace {

DecisionSetting quartic_setting(double beta) {
    return DecisionSetting(
        uniform_distribution(0.0, 1.0),
        PayoffKernel::custom([](double y) { return -0.25 * y * y * y * y; },
                             [](double y) { return -y * y * y; },
                             [](double y) { return -3.0 * y * y; }, "quartic"),
        BiasFunction::constant_bias(beta));
}

// Scan-based conjugate oracle: walk the far side of the peak until the value
// function crosses the target, then bisect the bracketing cell.
double conjugate_oracle(const std::function<double(double)>& value, double peak,
                        double y, double far_end) {
    const double target = value(y);
    const int n = 200000;
    double prev_x = peak, prev_v = value(peak) - target;
    for (int i = 1; i <= n; ++i) {
        const double x = peak + (far_end - peak) * i / n;
        const double v = value(x) - target;
        if ((v >= 0.0) != (prev_v >= 0.0))
            return num::bisect([&](double t) { return value(t) - target; },
                               std::min(prev_x, x), std::max(prev_x, x), 1e-13);
        prev_x = x;
        prev_v = v;
    }
    return std::nan("");
}

} // namespace

TEST_SUITE("delegation_sets") {

TEST_CASE("make_set canonicalizes") {
    const DelegationSet a = DelegationSet::make({{0.3, 0.5}, {1.1, 1.2}});
    REQUIRE(a.size() == 2);
    CHECK(a.intervals()[0].lo == 0.3);
    CHECK(a.intervals()[1].hi == 1.2);

    const DelegationSet b = DelegationSet::make({{0.0, 0.5}, {0.4, 1.0}});
    REQUIRE(b.size() == 1);
    CHECK(b.intervals()[0].lo == 0.0);
    CHECK(b.intervals()[0].hi == 1.0);

    const DelegationSet c = DelegationSet::make({{0.5, 0.5}});
    REQUIRE(c.size() == 1);
    CHECK(c.intervals()[0].singleton());

    CHECK_THROWS_AS(DelegationSet::make(std::vector<std::pair<double, double>>{}),
                    ConfigError);
    CHECK_THROWS_AS(DelegationSet::make({{0.5, 0.2}}), ConfigError);
}

TEST_CASE("unordered and nearly-touching intervals merge") {
    const DelegationSet d = DelegationSet::make({{0.8, 1.0}, {0.1, 0.2}, {0.2 + 1e-12, 0.4}});
    REQUIRE(d.size() == 2);
    CHECK(d.intervals()[0].lo == 0.1);
    CHECK(d.intervals()[0].hi == 0.4);
}

TEST_CASE("gaps") {
    CHECK(DelegationSet::make({{0.3, 0.5}, {1.1, 1.2}}).gaps().size() == 1);
    CHECK(DelegationSet::make({{0.0, 1.0}}).gaps().empty());
    const auto gs = DelegationSet::make({{0.0, 0.2}, {0.4, 0.4}, {0.9, 1.0}}).gaps();
    REQUIRE(gs.size() == 2);
    CHECK(gs[0].d1 == 0.2);
    CHECK(gs[0].d2 == 0.4);
    CHECK(gs[1].d1 == 0.4);
    CHECK(gs[1].d2 == 0.9);
}

TEST_CASE("theta conjugate in the quadratic setting") {
    const DecisionSetting st = uqc_setting(0.3);
    CHECK(theta_conjugate(st, 0.5, 0.5) == doctest::Approx(1.1).epsilon(1e-12));
    // The peak is its own conjugate.
    CHECK(theta_conjugate(st, 0.5, st.y_A(0.5)) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("theta conjugate for a quartic kernel matches the scan oracle") {
    const DecisionSetting st = quartic_setting(0.0);
    const double got = theta_conjugate(st, 0.5, 0.5);
    const double peak = st.y_A(0.5);
    CHECK(got > peak);
    const double oracle = conjugate_oracle(
        [&](double y) { return st.u_A(y, 0.5); }, peak, 0.5, st.working_hi());
    CHECK(got == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("ex ante conjugate") {
    const DecisionSetting st = uqc_setting(0.3);
    CHECK(ex_ante_conjugate(st, 0.5) == doctest::Approx(1.1).epsilon(1e-12));
    CHECK(ex_ante_conjugate(st, st.y_A0()) == doctest::Approx(0.8).epsilon(1e-12));

    const DecisionSetting q = quartic_setting(0.1);
    const double got = ex_ante_conjugate(q, 0.6);
    CHECK(got > q.y_A0());
    const double oracle = conjugate_oracle([&](double y) { return q.mean_u_A(y); },
                                           q.y_A0(), 0.6, q.working_hi());
    CHECK(got == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("conjugates outside the working range are rejected") {
    const DecisionSetting st = uqc_setting(0.3);
    CHECK_THROWS_AS(theta_conjugate(st, 0.0, st.working_lo() - 1.0), RangeError);
    // Reflecting a point near the top lands below the bottom of the range.
    CHECK_THROWS_AS(ex_ante_conjugate(st, st.working_hi() - 1e-6), RangeError);
}

TEST_CASE("minimalize") {
    const DecisionSetting st = uqc_setting(0.3);

    const DelegationSet wide = minimalize(st, DelegationSet::make({{-1.0, 3.0}}));
    REQUIRE(wide.size() == 1);
    CHECK(wide.intervals()[0].lo == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(wide.intervals()[0].hi == doctest::Approx(1.3).epsilon(1e-12));

    const DelegationSet trimmed =
        minimalize(st, DelegationSet::make({{0.3, 0.5}, {1.4, 1.6}}));
    REQUIRE(trimmed.size() == 2);
    CHECK(trimmed.intervals()[0].lo == doctest::Approx(0.3));
    CHECK(trimmed.intervals()[0].hi == doctest::Approx(0.5));
    CHECK(trimmed.intervals()[1].lo == doctest::Approx(1.4));
    CHECK(trimmed.intervals()[1].singleton());

    const DelegationSet already = DelegationSet::make({{0.3, 1.3}});
    CHECK(minimalize(st, already) == already);
}

TEST_CASE("module invariants") {
    for (const auto& check : verify_suite("sets")) {
        INFO(check.name, ": ", check.detail);
        CHECK(check.pass);
    }
}

} // TEST_SUITE
