#pragma once

#include "delegation/optimizer.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace delegation {

struct GapCheck {
    double d1 = 0.0, d2 = 0.0;
    double prob_d1 = 0.0, prob_d2 = 0.0; // choice probabilities of the endpoints
    bool material = false;     // both endpoints chosen, width > 2 grid steps
    bool straddles = false;    // d1 < y_A0 < d2
    double ex_ante_diff = 0.0; // E[u_A(d1)] - E[u_A(d2)]
    bool indifference_ok = false; // |diff| within the grid-step-induced bound
    bool borderline = false;   // d2 within one grid step of y_A(theta_hi)
    bool pass = true;
};

struct OracleResult {
    std::vector<double> grid;
    std::vector<int> best_subset; // indices into grid
    double best_value = -1e300;
    double parametric_value = 0.0; // solve(...) over the three families
    std::string nearest_form;      // interval | hollow | high_point
    std::vector<GapCheck> gap_checks;
};

// Exhaustively evaluates U_P over every nonempty subset of the decision grid
// (|grid| <= 18) with principal-favored tie-breaking: at equal value within
// 1e-12 the lexicographically smallest index set wins.
OracleResult enumerate_best(const DecisionSetting& setting, const CostModel& cost,
                            const std::vector<double>& grid, int jobs = 1);

// Default oracle grid: m equispaced decisions on
// [y_A(lo), y_A(hi) + (y_A(hi) - y_A(lo)) / 2], the extension admitting
// high points.
std::vector<double> default_oracle_grid(const DecisionSetting& setting, int m);

struct CharacterizationReport {
    OracleResult oracle;
    double solve_value = 0.0;
    std::string solve_form;
    bool value_ok = false;      // oracle best <= parametric best + 1e-6
    bool gaps_ok = false;       // every material gap straddles y_A0, diff bounded
    bool form_matches = false;  // nearest form agrees with solve's
    bool pass = false;
};

CharacterizationReport verify_characterization(const DecisionSetting& setting,
                                               const CostModel& cost,
                                               const std::vector<double>& grid,
                                               int jobs = 1);

} // namespace delegation
