#include "delegation/cli.hpp"
#include "delegation/errors.hpp"
#include "delegation/json_io.hpp"
#include "delegation/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace delegation::cli {

namespace {

std::vector<double> single_or_range(const std::string& spec) { return parse_range(spec); }

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open file: " + path);
    Json j;
    in >> j;
    return j;
}

struct CommonOpts {
    std::string preset = "uqc";
    double beta = std::nan("");
    double kappa = std::nan("");
    std::string setting_file;
    std::string cost_file;
    std::string normalization;
};

void add_setting_flags(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--preset", opts.preset, "setting preset (uqc)");
    cmd->add_option("--beta", opts.beta, "constant bias for the preset");
    cmd->add_option("--setting", opts.setting_file, "setting config JSON file");
    cmd->add_option("--normalization", opts.normalization,
                    "generic or loss (preset only)");
}

void add_cost_flags(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--kappa", opts.kappa, "Szalay cost parameter");
    cmd->add_option("--cost", opts.cost_file, "cost config JSON file");
}

DecisionSetting make_setting(const CommonOpts& opts) {
    if (!opts.setting_file.empty()) return setting_from_json(load_json_file(opts.setting_file));
    Json j{{"preset", opts.preset}};
    if (!std::isnan(opts.beta)) j["beta"] = opts.beta;
    if (!opts.normalization.empty()) j["normalization"] = opts.normalization;
    return setting_from_json(j);
}

CostModel make_cost(const CommonOpts& opts) {
    if (!opts.cost_file.empty()) return cost_from_json(load_json_file(opts.cost_file));
    if (std::isnan(opts.kappa))
        throw ConfigError("a cost is required: pass --kappa or --cost FILE");
    return CostModel::szalay(opts.kappa);
}

void emit(const std::string& payload, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << payload;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw ConfigError("cannot write file: " + out_path);
    f << payload;
}

std::string csv_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

} // namespace

std::vector<double> parse_range(const std::string& spec) {
    const size_t c1 = spec.find(':');
    if (c1 == std::string::npos) {
        try {
            return {std::stod(spec)};
        } catch (...) {
            throw ConfigError("bad range or number: " + spec);
        }
    }
    const size_t c2 = spec.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw ConfigError("range must be lo:hi:step, got: " + spec);
    double lo, hi, step;
    try {
        lo = std::stod(spec.substr(0, c1));
        hi = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
        step = std::stod(spec.substr(c2 + 1));
    } catch (...) {
        throw ConfigError("bad range: " + spec);
    }
    if (!(step > 0.0) || hi < lo) throw ConfigError("bad range bounds: " + spec);
    std::vector<double> out;
    const int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
    for (int i = 0; i <= n; ++i) out.push_back(lo + i * step);
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"delegate: optimal delegation with costly information acquisition"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string set_file, out_path, format = "json", suite = "all";
    std::string beta_range, kappa_range, beta_grid_spec = "0:0.1:0.0025";
    int grid_size = 0;
    int jobs = 1;
    double demo_eps = 0.01;

    auto* c_solve = app.add_subcommand("solve", "optimal delegation set");
    add_setting_flags(c_solve, opts);
    add_cost_flags(c_solve, opts);
    c_solve->add_option("--grid-size", grid_size, "search grid per dimension");
    c_solve->add_option("--out", out_path, "write output to this file");

    auto* c_eval = app.add_subcommand("eval", "payoffs of an explicit set");
    add_setting_flags(c_eval, opts);
    add_cost_flags(c_eval, opts);
    c_eval->add_option("--set", set_file, "delegation-set JSON file")->required();
    c_eval->add_option("--format", format, "json or csv");
    c_eval->add_option("--out", out_path, "write output to this file");

    auto* c_check = app.add_subcommand("check-assumptions", "A1-A3 report");
    add_setting_flags(c_check, opts);
    c_check->add_option("--out", out_path, "write output to this file");

    auto* c_map = app.add_subcommand("regime-map", "optimal form over (beta, kappa)");
    c_map->add_option("--beta", beta_range, "beta range lo:hi:step")->required();
    c_map->add_option("--kappa", kappa_range, "kappa range lo:hi:step")->required();
    c_map->add_option("--grid-size", grid_size, "search grid per dimension");
    c_map->add_option("--jobs", jobs, "parallel workers");
    c_map->add_option("--out", out_path, "write CSV to this file");

    auto* c_curve = app.add_subcommand("bias-curve", "V(beta) and beta*(kappa)");
    c_curve->add_option("--kappa", kappa_range, "kappa value or range")->required();
    c_curve->add_option("--beta-grid", beta_grid_spec, "beta grid lo:hi:step");
    c_curve->add_option("--grid-size", grid_size, "search grid per dimension");
    c_curve->add_option("--jobs", jobs, "parallel workers");
    c_curve->add_option("--out", out_path, "write CSV to this file");

    auto* c_oracle = app.add_subcommand("oracle", "exhaustive finite-grid check");
    add_setting_flags(c_oracle, opts);
    add_cost_flags(c_oracle, opts);
    c_oracle->add_option("--grid-size", grid_size, "oracle grid points (<= 18)");
    c_oracle->add_option("--jobs", jobs, "parallel workers");
    c_oracle->add_option("--out", out_path, "write output to this file");

    auto* c_demo = app.add_subcommand("high-point-demo", "appendix construction");
    c_demo->add_option("--beta", opts.beta, "bias in (1/4, 1/2)")->required();
    c_demo->add_option("--eps", demo_eps, "initial effort scale");
    c_demo->add_option("--grid-size", grid_size, "search grid per dimension");
    c_demo->add_option("--out", out_path, "write output to this file");

    auto* c_verify = app.add_subcommand("verify", "invariant suites");
    c_verify->add_option("--suite", suite, "all or one of the module suites");
    c_verify->add_option("--jobs", jobs, "parallel workers");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help();
        return 1;
    }

    try {
        const int n = grid_size > 0 ? grid_size : 200;

        if (c_solve->parsed()) {
            const SolveResult res = solve(make_setting(opts), make_cost(opts), n);
            emit(solve_result_to_json(res).dump(2) + "\n", out_path, out);
            return 0;
        }

        if (c_eval->parsed()) {
            const Evaluation ev = evaluate(make_setting(opts), make_cost(opts),
                                           set_from_json(load_json_file(set_file)));
            if (format == "csv") {
                std::string csv = "u_P0,u_P1,delta_A,effort,U_P,uninformed_decision\n";
                csv += csv_num(ev.u_P0) + "," + csv_num(ev.u_P1) + "," +
                       csv_num(ev.agent.info_gain) + "," + csv_num(ev.agent.effort) +
                       "," + csv_num(ev.U_P) + "," +
                       csv_num(ev.agent.uninformed_decision) + "\n";
                emit(csv, out_path, out);
            } else if (format == "json") {
                emit(evaluation_to_json(ev).dump(2) + "\n", out_path, out);
            } else {
                throw ConfigError("unknown format \"" + format + "\"");
            }
            return 0;
        }

        if (c_check->parsed()) {
            const AssumptionReport rep = make_setting(opts).check_assumptions();
            emit(assumptions_to_json(rep).dump(2) + "\n", out_path, out);
            return rep.all_pass() ? 0 : 1;
        }

        if (c_map->parsed()) {
            const auto cells = regime_map(single_or_range(beta_range),
                                          single_or_range(kappa_range), n, jobs);
            emit(regime_map_csv(cells), out_path, out);
            return 0;
        }

        if (c_curve->parsed()) {
            const std::vector<double> kappas = single_or_range(kappa_range);
            const std::vector<double> beta_grid = single_or_range(beta_grid_spec);
            std::string csv = "kappa,beta,V\n";
            Json summaries = Json::array();
            for (double kappa : kappas) {
                const BiasCurve curve = optimal_bias(kappa, beta_grid, n, jobs);
                for (size_t i = 0; i < curve.betas.size(); ++i)
                    csv += csv_num(kappa) + "," + csv_num(curve.betas[i]) + "," +
                           csv_num(curve.values[i]) + "\n";
                summaries.push_back(bias_summary_to_json(curve));
            }
            if (!out_path.empty()) emit(csv, out_path, out);
            const Json payload = kappas.size() == 1 ? summaries[0] : summaries;
            out << payload.dump(2) << "\n";
            return 0;
        }

        if (c_oracle->parsed()) {
            const DecisionSetting setting = make_setting(opts);
            const int m = grid_size > 0 ? grid_size : 12;
            const CharacterizationReport rep = verify_characterization(
                setting, make_cost(opts), default_oracle_grid(setting, m), jobs);
            emit(characterization_to_json(rep).dump(2) + "\n", out_path, out);
            return 0;
        }

        if (c_demo->parsed()) {
            const HighPointDemo demo = high_point_demo(opts.beta, demo_eps, n);
            emit(demo_to_json(demo).dump(2) + "\n", out_path, out);
            return demo.success ? 0 : 2;
        }

        if (c_verify->parsed()) {
            std::string report;
            const bool ok = run_verification(suite, jobs, report);
            out << report;
            out << (ok ? "verification passed\n" : "verification FAILED\n");
            return ok ? 0 : 2;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << app.help();
    return 1;
}

} // namespace delegation::cli
