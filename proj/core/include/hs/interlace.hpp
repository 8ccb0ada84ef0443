#pragma once

#include "hs/eigen.hpp"
#include "hs/problem.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hs {

// Verdict on the strict chain  lo < outer_1 < inner_1 < outer_2 < ... <
// inner_m < outer_{m+1} < hi.  Comparisons are exact (no epsilon): the
// theorem claims strict inequality and the inputs carry certified brackets.
//
// violation_index counts comparisons along the chain from 0 = (lo, outer_1)
// through 2m+1 = (outer_{m+1}, hi); the first failing comparison is recorded.
struct InterlaceVerdict {
    bool holds = false;
    bool lower_bound_ok = false;
    bool upper_bound_ok = false;
    double min_gap = 0.0;
    std::optional<int> violation_index;
};

InterlaceVerdict check_interlacing(const std::vector<double>& inner,
                                   const std::vector<double>& outer,
                                   double lo, double hi);

std::string verdict_to_json(const InterlaceVerdict& v);

// Minimum distance between the order-k and order-(k+1) Van Vleck zero sets
// (distinctness witness; the harness asserts it exceeds the certified
// bracket widths).
double check_distinct_across_orders(const LameProblem& problem, int k);

// Theorem-level sweep: verdicts for consecutive orders (k, k+1), k = 1..k_max-1,
// with bounds (alpha1, alpha3).  Before comparing, certified brackets are
// consulted; overlapping brackets trigger re-solves at 100x tighter tolerance
// (a handful of rounds) so no verdict is ever an artifact of floating point.
std::vector<InterlaceVerdict> check_theorem_2_1(const LameProblem& problem, int k_max);

} // namespace hs
