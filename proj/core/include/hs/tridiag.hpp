#pragma once

#include <vector>

namespace hs {

// Symmetric tridiagonal eigenvalue machinery (Sturm-sequence bisection in the
// style of Barth-Martin-Wilkinson BISECT, plus shifted inverse iteration).
// Every eigenvalue comes with its final bisection bracket: the count function
// proves there is exactly one eigenvalue inside [lo, hi].

struct EigenvalueBracket {
    double value = 0.0;  // midpoint of the final bracket
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
};

// Number of eigenvalues of T strictly below x (negative-pivot count of the
// LDL^T recurrence, with the usual tiny-pivot guard).
int sturm_count_below(const std::vector<double>& diag,
                      const std::vector<double>& offdiag, double x);

// All eigenvalues, ascending, each bisected to bracket width <= abs_tol.
std::vector<EigenvalueBracket> tridiag_eigenvalues_bisect(
    const std::vector<double>& diag, const std::vector<double>& offdiag,
    double abs_tol);

// Solve (T - shift I) x = b by Gaussian elimination with partial pivoting
// (one fill-in superdiagonal).  Near-singular pivots are clamped, which is
// exactly what inverse iteration wants.
std::vector<double> tridiag_solve_shifted(const std::vector<double>& diag,
                                          const std::vector<double>& offdiag,
                                          double shift,
                                          const std::vector<double>& b);

// Two rounds of inverse iteration from a flat start; returns a unit-norm
// eigenvector estimate for the eigenvalue nearest shift.
std::vector<double> inverse_iteration(const std::vector<double>& diag,
                                      const std::vector<double>& offdiag,
                                      double shift);

} // namespace hs
