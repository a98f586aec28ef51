#pragma once

#include <string>
#include <vector>

namespace delegation {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Invariant suites: model_core, sets, agent, principal, optimizer, bias,
// oracle. Each check is pure and deterministic.
std::vector<std::string> verify_suite_names();

std::vector<CheckResult> verify_suite(const std::string& suite, int jobs = 1);

// Runs the named suites ("all" expands to every suite); true iff all pass.
bool run_verification(const std::string& suite, int jobs, std::string& report);

} // namespace delegation
