#include "delegation/cli.hpp"
#include "delegation/errors.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace delegation;
using nlohmann::json;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("range parsing") {
    const auto r = cli::parse_range("0.01:0.05:0.02");
    REQUIRE(r.size() == 3);
    CHECK(r[0] == doctest::Approx(0.01));
    CHECK(r[2] == doctest::Approx(0.05));
    CHECK(cli::parse_range("0.08").size() == 1);
    CHECK(cli::parse_range("0.01:0.15:0.005").size() == 29);
    CHECK_THROWS_AS(cli::parse_range("a:b:c"), ConfigError);
    CHECK_THROWS_AS(cli::parse_range("0.2:0.1:0.05"), ConfigError);
}

TEST_CASE("unknown commands and missing flags fail with usage") {
    CHECK(run_cli({"frobnicate"}).code == 1);
    CHECK(run_cli({}).code == 1);
    // eval without --set is a parse error.
    CHECK(run_cli({"eval", "--beta", "0.3", "--kappa", "0.05"}).code == 1);
    // solve without any cost is a validation error.
    CHECK(run_cli({"solve", "--beta", "0.3"}).code == 1);
}

TEST_CASE("solve emits a well-formed result") {
    const RunResult r =
        run_cli({"solve", "--preset", "uqc", "--beta", "0.1", "--kappa", "0.02"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["form"] == "hollow");
    CHECK(j["evaluation"].contains("U_P"));
    CHECK(j["regime_flags"]["low_bias"] == true);
}

TEST_CASE("check-assumptions exit codes") {
    CHECK(run_cli({"check-assumptions", "--preset", "uqc", "--beta", "0.3"}).code == 0);
    const RunResult bad =
        run_cli({"check-assumptions", "--preset", "uqc", "--beta", "0.6"});
    CHECK(bad.code == 1);
    const json j = json::parse(bad.out);
    CHECK(j["A3"]["pass"] == false);
}

TEST_CASE("eval reads set files and honors --format") {
    const std::string set_path = temp_path("delegate_test_set.json");
    {
        std::ofstream f(set_path);
        f << R"({"intervals":[[0.3,0.5],[1.1,1.2]]})";
    }
    const RunResult r = run_cli({"eval", "--preset", "uqc", "--beta", "0.3", "--kappa",
                                 "0.05", "--set", set_path});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["delta_A"] == doctest::Approx(0.155).epsilon(1e-10));
    CHECK(j["uninformed_decision"] == doctest::Approx(0.5));
    for (const char* key :
         {"u_P0", "u_P1", "delta_A", "effort", "U_P", "uninformed_decision"})
        CHECK(j.contains(key));

    const RunResult c = run_cli({"eval", "--preset", "uqc", "--beta", "0.3", "--kappa",
                                 "0.05", "--set", set_path, "--format", "csv"});
    REQUIRE(c.code == 0);
    CHECK(c.out.rfind("u_P0,u_P1,delta_A,effort,U_P,uninformed_decision\n", 0) == 0);
    std::remove(set_path.c_str());
}

TEST_CASE("near-step cost config") {
    const std::string cost_path = temp_path("delegate_test_nearstep.json");
    const std::string set_path = temp_path("delegate_test_set3.json");
    {
        std::ofstream f(cost_path);
        f << R"({"kind":"near_step","eps":0.01,"x0":0.02,"s":1e-4})";
    }
    {
        std::ofstream f(set_path);
        f << R"({"intervals":[[0.3,1.3]]})";
    }
    const RunResult r = run_cli({"eval", "--preset", "uqc", "--beta", "0.3", "--cost",
                                 cost_path, "--set", set_path});
    REQUIRE(r.code == 0);
    // Return 1/12 is far above x0, so effort saturates at eps.
    const double effort = json::parse(r.out)["effort"].get<double>();
    CHECK(effort > 0.0099);
    CHECK(effort <= 0.01);
    std::remove(cost_path.c_str());
    std::remove(set_path.c_str());
}

TEST_CASE("setting and cost files override the presets") {
    const std::string setting_path = temp_path("delegate_test_setting.json");
    const std::string cost_path = temp_path("delegate_test_cost.json");
    {
        std::ofstream f(setting_path);
        f << R"({"dist":{"type":"uniform","lo":0,"hi":1},)"
          << R"("kernel":{"type":"quadratic_loss"},)"
          << R"("bias":{"type":"constant","value":0.3}})";
    }
    {
        std::ofstream f(cost_path);
        f << R"({"kind":"szalay","kappa":0.05})";
    }
    const RunResult a = run_cli({"check-assumptions", "--setting", setting_path});
    CHECK(a.code == 0);
    const std::string set_path = temp_path("delegate_test_set2.json");
    {
        std::ofstream f(set_path);
        f << R"({"intervals":[[0.3,1.3]]})";
    }
    const RunResult b = run_cli({"eval", "--setting", setting_path, "--cost", cost_path,
                                 "--set", set_path});
    REQUIRE(b.code == 0);
    CHECK(json::parse(b.out)["delta_A"] == doctest::Approx(1.0 / 12.0).epsilon(1e-9));
    std::remove(setting_path.c_str());
    std::remove(cost_path.c_str());
    std::remove(set_path.c_str());
}

TEST_CASE("regime map output is byte-identical across runs and job counts") {
    const std::string p1 = temp_path("delegate_map1.csv");
    const std::string p2 = temp_path("delegate_map2.csv");
    const std::vector<std::string> base = {"regime-map", "--beta",      "0.1:0.2:0.05",
                                           "--kappa",    "0.02:0.04:0.02", "--grid-size",
                                           "80"};
    auto with = [&](const std::string& out_path, const std::string& jobs) {
        auto v = base;
        v.insert(v.end(), {"--jobs", jobs, "--out", out_path});
        return v;
    };
    REQUIRE(run_cli(with(p1, "1")).code == 0);
    REQUIRE(run_cli(with(p2, "2")).code == 0);
    const std::string a = slurp(p1), b = slurp(p2);
    CHECK(!a.empty());
    CHECK(a == b);
    CHECK(a.rfind("beta,kappa,form,y0,y1,y2_or_ybar,U_P,effort\n", 0) == 0);
    std::remove(p1.c_str());
    std::remove(p2.c_str());
}

TEST_CASE("bias-curve emits a summary and optional CSV") {
    const std::string p = temp_path("delegate_curve.csv");
    const RunResult r = run_cli({"bias-curve", "--kappa", "0.2", "--beta-grid",
                                 "0:0.04:0.01", "--grid-size", "100", "--jobs", "2",
                                 "--out", p});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    for (const char* key :
         {"kappa", "beta_star", "V_star", "V0", "gain", "informed_equivalent_bias"})
        CHECK(j.contains(key));
    const std::string csv = slurp(p);
    CHECK(csv.rfind("kappa,beta,V\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6); // header + 5 rows
    std::remove(p.c_str());
}

TEST_CASE("oracle subcommand reports a pass on a landmark cell") {
    const RunResult r = run_cli({"oracle", "--preset", "uqc", "--beta", "0.1", "--kappa",
                                 "0.02", "--grid-size", "10", "--jobs", "2"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["pass"] == true);
    CHECK(j["nearest_form"] == "hollow");
}

TEST_CASE("verify subcommand runs a fast suite") {
    const RunResult r = run_cli({"verify", "--suite", "model_core"});
    CHECK(r.code == 0);
    CHECK(r.out.find("[PASS]") != std::string::npos);
    CHECK(r.out.find("[FAIL]") == std::string::npos);
    CHECK(run_cli({"verify", "--suite", "nonsense"}).code == 1);
}

TEST_CASE("solve output bytes are reproducible") {
    const std::vector<std::string> args = {"solve",   "--preset", "uqc",  "--beta",
                                           "0.3",     "--kappa",  "0.05", "--grid-size",
                                           "120"};
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

} // TEST_SUITE
