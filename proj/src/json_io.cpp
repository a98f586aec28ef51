#include "delegation/json_io.hpp"
#include "delegation/errors.hpp"

#include <cmath>

namespace delegation {

Json set_to_json(const DelegationSet& D) {
    Json intervals = Json::array();
    for (const auto& iv : D.intervals()) intervals.push_back({iv.lo, iv.hi});
    return Json{{"intervals", intervals}};
}

DelegationSet set_from_json(const Json& j) {
    if (!j.contains("intervals") || !j["intervals"].is_array())
        throw ConfigError("delegation-set JSON requires an \"intervals\" array");
    std::vector<std::pair<double, double>> raw;
    for (const auto& iv : j["intervals"]) {
        if (!iv.is_array() || iv.size() != 2)
            throw ConfigError("delegation-set JSON: each interval is a [lo, hi] pair");
        raw.emplace_back(iv[0].get<double>(), iv[1].get<double>());
    }
    return DelegationSet::make(raw);
}

namespace {

Normalization normalization_from(const Json& j, Normalization fallback) {
    if (!j.contains("normalization")) return fallback;
    const std::string s = j["normalization"].get<std::string>();
    if (s == "generic") return Normalization::Generic;
    if (s == "loss" || s == "quadratic_loss") return Normalization::QuadraticLoss;
    throw ConfigError("unknown normalization \"" + s + "\"");
}

} // namespace

DecisionSetting setting_from_json(const Json& j) {
    if (j.contains("preset")) {
        const std::string preset = j["preset"].get<std::string>();
        if (preset != "uqc") throw ConfigError("unknown preset \"" + preset + "\"");
        if (!j.contains("beta")) throw ConfigError("uqc preset requires \"beta\"");
        return uqc_setting(j["beta"].get<double>(),
                           normalization_from(j, Normalization::QuadraticLoss));
    }
    if (!j.contains("dist") || !j.contains("kernel") || !j.contains("bias"))
        throw ConfigError("setting JSON requires dist, kernel and bias (or a preset)");

    const Json& jd = j["dist"];
    const std::string dtype = jd.value("type", "");
    StateDistribution dist;
    if (dtype == "uniform")
        dist = uniform_distribution(jd.value("lo", 0.0), jd.value("hi", 1.0));
    else if (dtype == "power")
        dist = power_distribution(jd.value("k", 2.0), jd.value("lo", 0.0),
                                  jd.value("hi", 1.0));
    else
        throw ConfigError("unknown distribution type \"" + dtype + "\"");

    const Json& jk = j["kernel"];
    const std::string ktype = jk.value("type", "");
    PayoffKernel kernel;
    if (ktype == "quadratic_loss")
        kernel = PayoffKernel::quadratic_loss();
    else if (ktype == "quadratic")
        kernel = PayoffKernel::quadratic_generic();
    else if (ktype == "quartic")
        kernel = PayoffKernel::custom([](double y) { return -0.25 * y * y * y * y; },
                                      [](double y) { return -y * y * y; },
                                      [](double y) { return -3.0 * y * y; }, "quartic");
    else
        throw ConfigError("unknown kernel type \"" + ktype + "\"");

    const Json& jb = j["bias"];
    const std::string btype = jb.value("type", "");
    if (btype != "constant")
        throw ConfigError("unknown bias type \"" + btype + "\"");
    return DecisionSetting(std::move(dist), std::move(kernel),
                           BiasFunction::constant_bias(jb.value("value", 0.0)));
}

CostModel cost_from_json(const Json& j) {
    const std::string kind = j.value("kind", "");
    if (kind == "szalay") {
        if (!j.contains("kappa")) throw ConfigError("szalay cost requires \"kappa\"");
        return CostModel::szalay(j["kappa"].get<double>());
    }
    if (kind == "near_step") {
        for (const char* key : {"eps", "x0", "s"})
            if (!j.contains(key))
                throw ConfigError(std::string("near_step cost requires \"") + key + "\"");
        return CostModel::near_step(j["eps"].get<double>(), j["x0"].get<double>(),
                                    j["s"].get<double>());
    }
    throw ConfigError("unknown cost kind \"" + kind + "\"");
}

Json evaluation_to_json(const Evaluation& ev) {
    return Json{{"u_P0", ev.u_P0},
                {"u_P1", ev.u_P1},
                {"delta_A", ev.agent.info_gain},
                {"effort", ev.agent.effort},
                {"U_P", ev.U_P},
                {"uninformed_decision", ev.agent.uninformed_decision}};
}

Json assumptions_to_json(const AssumptionReport& rep) {
    auto one = [](const AssumptionCheck& c) {
        Json j{{"pass", c.pass},
               {"worst_point", c.worst_point},
               {"worst_value", c.worst_value}};
        if (!c.detail.empty()) j["detail"] = c.detail;
        return j;
    };
    return Json{{"A1", one(rep.a1)},
                {"A2", one(rep.a2)},
                {"A3", one(rep.a3)},
                {"all_pass", rep.all_pass()}};
}

namespace {

Json form_to_json(const DelegationForm& form) {
    Json j{{"kind", family_name(form.kind)}, {"y0", form.y0}};
    if (form.kind == Family::Hollow) {
        j["y1"] = form.y1;
        j["y2"] = form.y2;
    } else if (form.kind == Family::HighPoint) {
        j["ybar"] = form.ybar;
    }
    return j;
}

} // namespace

Json solve_result_to_json(const SolveResult& res) {
    Json per_family = Json::object();
    for (const auto& [name, fb] : res.per_family) {
        if (!fb.feasible) {
            per_family[name] = Json{{"feasible", false}};
            continue;
        }
        per_family[name] = Json{{"feasible", true},
                                {"params", form_to_json(fb.form)},
                                {"U_P", fb.U_P}};
    }
    return Json{{"form", res.classification},
                {"params", form_to_json(res.best_form)},
                {"set", set_to_json(res.best_set)["intervals"]},
                {"evaluation", evaluation_to_json(res.evaluation)},
                {"per_family", per_family},
                {"singleton_guard_U_P", res.singleton_guard_U_P},
                {"regime_flags",
                 Json{{"low_bias", res.regime_flags.low_bias},
                      {"very_high_bias", res.regime_flags.very_high_bias},
                      {"min_arrow_pratt", res.regime_flags.min_arrow_pratt}}}};
}

Json characterization_to_json(const CharacterizationReport& rep) {
    Json gaps = Json::array();
    for (const auto& gc : rep.oracle.gap_checks) {
        gaps.push_back(Json{{"d1", gc.d1},
                            {"d2", gc.d2},
                            {"prob_d1", gc.prob_d1},
                            {"prob_d2", gc.prob_d2},
                            {"material", gc.material},
                            {"straddles_y_A0", gc.straddles},
                            {"ex_ante_diff", gc.ex_ante_diff},
                            {"borderline", gc.borderline},
                            {"pass", gc.pass}});
    }
    return Json{{"best_value", rep.oracle.best_value},
                {"parametric_value", rep.solve_value},
                {"best_subset", rep.oracle.best_subset},
                {"grid", rep.oracle.grid},
                {"gap_checks", gaps},
                {"nearest_form", rep.oracle.nearest_form},
                {"solve_form", rep.solve_form},
                {"value_ok", rep.value_ok},
                {"gaps_ok", rep.gaps_ok},
                {"form_matches", rep.form_matches},
                {"pass", rep.pass}};
}

Json demo_to_json(const HighPointDemo& demo) {
    Json j{{"success", demo.success},
           {"beta", demo.beta},
           {"eps_requested", demo.eps_requested},
           {"eps_used", demo.eps_used},
           {"attempts", demo.attempts},
           {"ybar", demo.ybar},
           {"y0_star", demo.y0_star},
           {"delta0", demo.delta0},
           {"delta1", demo.delta1},
           {"u0", demo.u0},
           {"u_P1_high", demo.u_P1_high},
           {"u_P1_hollow_star", demo.u_P1_hollow_star},
           {"ineq_delta", demo.ineq_delta},
           {"ineq_high_above_u0", demo.ineq_high_above_u0},
           {"ineq_hollow_below_u0", demo.ineq_hollow_below_u0},
           {"ineq_high_above_hollow", demo.ineq_high_above_hollow},
           {"cost_x0", demo.cost_x0},
           {"cost_s", demo.cost_s},
           {"value_high_point", demo.value_high_point},
           {"best_high_point", demo.best_high_point},
           {"best_interval", demo.best_interval},
           {"best_hollow", demo.best_hollow},
           {"singleton_value", demo.singleton_value},
           {"dominates_interval", demo.dominates_interval},
           {"dominates_hollow", demo.dominates_hollow}};
    if (!demo.failure.empty()) j["failure"] = demo.failure;
    return j;
}

Json bias_summary_to_json(const BiasCurve& curve) {
    const double gain = curve.value_star - curve.unbiased_value;
    return Json{{"kappa", curve.kappa},
                {"beta_star", curve.beta_star},
                {"V_star", curve.value_star},
                {"V0", curve.unbiased_value},
                {"gain", gain},
                {"informed_equivalent_bias",
                 gain >= 0.0 ? informed_equivalent_bias(gain) : 0.0}};
}

} // namespace delegation
