#include "delegation/agent.hpp"
#include "delegation/errors.hpp"
#include "delegation/numerics.hpp"
#include "delegation/verify.hpp"

#include <doctest.h>

#include <cmath>

using namespace delegation;

TEST_SUITE("agent") {

TEST_CASE("informed choice projects onto the set") {
    const DecisionSetting st = uqc_setting(0.3);
    const DelegationSet D = DelegationSet::make({{0.3, 0.5}, {1.1, 1.2}});
    // Ideal 0.9 sits in the gap, closer to 1.1 in loss units.
    CHECK(informed_choice(st, D, 0.6) == doctest::Approx(1.1));
    // Inside the big interval the favorite is available.
    CHECK(informed_choice(st, DelegationSet::make({{0.3, 1.3}}), 0.6) ==
          doctest::Approx(0.9));
    // Exact indifference between 0.5 and 1.1: the principal prefers 0.5.
    CHECK(informed_choice(st, D, 0.5) == doctest::Approx(0.5));
}

TEST_CASE("residual ties go to the lower decision") {
    // Unbiased and symmetric: the agent and the principal are both
    // indifferent between the two points at theta = 1/2.
    const DecisionSetting st = uqc_setting(0.0);
    const DelegationSet D = DelegationSet::make({{0.4, 0.4}, {0.6, 0.6}});
    CHECK(informed_choice(st, D, 0.5) == doctest::Approx(0.4));
    CHECK(uninformed_choice(st, D).first == doctest::Approx(0.4));
}

TEST_CASE("uninformed choice and payoff") {
    const DecisionSetting st = uqc_setting(0.3);

    const auto [tie, tie_val] =
        uninformed_choice(st, DelegationSet::make({{0.3, 0.5}, {1.1, 1.2}}));
    CHECK(tie == doctest::Approx(0.5)); // conjugate tie broken downward
    CHECK(tie_val == doctest::Approx(st.mean_u_A(0.5)).epsilon(1e-12));

    const auto [clamp, clamp_val] =
        uninformed_choice(st, DelegationSet::make({{0.3, 0.7}}));
    CHECK(clamp == doctest::Approx(0.7));
    CHECK(clamp_val == doctest::Approx(-(0.01 + 1.0 / 12.0)).epsilon(1e-10));

    const auto [solo, solo_val] = uninformed_choice(st, DelegationSet::point(0.9));
    CHECK(solo == doctest::Approx(0.9));
    CHECK(solo_val == doctest::Approx(st.mean_u_A(0.9)).epsilon(1e-12));
}

TEST_CASE("information gain of benchmark sets") {
    const DecisionSetting st = uqc_setting(0.3);
    const CostModel cost = CostModel::szalay(0.05);

    const AgentResponse full =
        agent_response(st, cost, DelegationSet::make({{0.3, 1.3}}));
    CHECK(std::fabs(full.info_gain - 1.0 / 12.0) < 1e-9);

    const AgentResponse capped =
        agent_response(st, cost, DelegationSet::make({{0.3, 0.8}}));
    CHECK(std::fabs(capped.info_gain - 1.0 / 24.0) < 1e-9);

    const AgentResponse solo = agent_response(st, cost, DelegationSet::point(0.7));
    CHECK(solo.info_gain == doctest::Approx(0.0));
    CHECK(solo.effort == doctest::Approx(0.0));
}

TEST_CASE("gap thresholds are the indifference states") {
    const DecisionSetting st = uqc_setting(0.3);
    const AgentResponse r = agent_response(st, CostModel::szalay(0.05),
                                           DelegationSet::make({{0.3, 0.5}, {1.1, 1.2}}));
    REQUIRE(r.thresholds.size() == 1);
    CHECK(r.thresholds[0].theta == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(r.thresholds[0].left == doctest::Approx(0.5));
    CHECK(r.thresholds[0].right == doctest::Approx(1.1));
}

TEST_CASE("effort closed form for the exponential family") {
    const CostModel cost = CostModel::szalay(0.05);
    CHECK(std::fabs(effort_of_gain(cost, 1.0 / 12.0) - (1.0 - std::exp(-5.0 / 3.0))) <
          1e-12);
    CHECK(effort_of_gain(cost, 0.0) == doctest::Approx(0.0));
    for (double e : {0.1, 0.5, 0.9}) {
        const double x = cost.c_prime(e);
        CHECK(x == doctest::Approx(-0.05 * std::log1p(-e)).epsilon(1e-12));
        CHECK(effort_of_gain(cost, x) == doctest::Approx(e).epsilon(1e-9));
    }
}

TEST_CASE("custom costs invert through bisection") {
    const double kappa = 0.07;
    const CostModel custom = CostModel::custom(
        [kappa](double e) { return kappa * ((1.0 - e) * std::log1p(-e) + e); },
        [kappa](double e) { return -kappa * std::log1p(-e); },
        [kappa](double e) { return kappa / (1.0 - e); });
    custom.validate();
    const CostModel closed = CostModel::szalay(kappa);
    for (double x : {0.01, 0.1, 0.4})
        CHECK(custom.effort(x) == doctest::Approx(closed.effort(x)).epsilon(1e-9));
}

TEST_CASE("arrow-pratt curvature of the effort response") {
    for (double x : {0.01, 0.1, 0.3})
        CHECK(arrow_pratt(CostModel::szalay(0.02), x) == doctest::Approx(50.0));
    CHECK(arrow_pratt(CostModel::szalay(0.05), 0.3) == doctest::Approx(20.0));

    const CostModel step = CostModel::near_step(0.01, 0.02, 1e-4);
    CHECK(std::fabs(arrow_pratt(step, 0.02)) < 1e-9); // inflection
    CHECK(arrow_pratt(step, 0.02 + 10e-4) > 1e3);
    CHECK(arrow_pratt(step, 0.02 - 10e-4) < -1e3);
    CHECK_THROWS_AS(arrow_pratt(step, 0.0), RangeError);
}

TEST_CASE("cost validation") {
    CHECK_NOTHROW(CostModel::szalay(0.05).validate());
    CHECK_NOTHROW(CostModel::near_step(0.01, 0.02, 1e-4).validate());
    CHECK_THROWS_AS(CostModel::szalay(-1.0), ConfigError);
    CHECK_THROWS_AS(CostModel::near_step(0.7, 0.02, 1e-4), ConfigError);
    // c'' < 0 is rejected by the grid check.
    const CostModel bad = CostModel::custom([](double e) { return std::sqrt(e); },
                                            [](double e) { return 0.5 / std::sqrt(e); },
                                            [](double e) { return -0.25 / std::pow(e, 1.5); });
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("module invariants") {
    for (const auto& check : verify_suite("agent")) {
        INFO(check.name, ": ", check.detail);
        CHECK(check.pass);
    }
}

} // TEST_SUITE
