#pragma once

#include "hs/problem.hpp"

#include <string>
#include <vector>

namespace hs {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string details;
};

// The five fixed benchmark problems used by the asymptotic criteria.
std::vector<LameProblem> benchmark_problems();

// Runs acceptance criterion `id` (1..11), or all of them for id = 0.
// Every tolerance is pinned in the implementation; results report measured
// values alongside each verdict.
std::vector<CriterionResult> run_acceptance(int id = 0);

std::string acceptance_json(const std::vector<CriterionResult>& results);

} // namespace hs
