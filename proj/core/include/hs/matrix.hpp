#pragma once

#include "hs/problem.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace hs {

// Order-(k+1) tridiagonal matrix whose eigenvalues are the normalized Van
// Vleck zeros of order k and whose eigenvectors hold Stieltjes coefficients.
//
// Rows are 0-based, row j carrying coefficient a_j of S_k(x) = sum a_j x^j.
// Identifying powers of x in A S'' + B S' = mu_k (x - nu) S and dividing the
// coefficient relation by -mu_k gives
//   sub[j-1]  = 1 - mu_{j-1}/mu_k          (entry (j, j-1), j = 1..k)
//   diag[j]   = j ((alpha-1)(j-1) + g1)/mu_k,  g1 = -2 (rho2+rho3 - alpha (rho1+rho2))
//   super[j]  = (j+1) alpha (j + 2 rho2)/mu_k  (entry (j, j+1), j = 0..k-1)
// Off-diagonal entries are strictly positive for valid problems (alpha > 0,
// rho_i > 0, mu monotone), which is what makes symmetrization possible.
struct TridiagonalSpectralMatrix {
    int k = 0;                    // Stieltjes order
    int order = 0;                // k + 1
    std::vector<double> sub;      // size k
    std::vector<double> diag;     // size k + 1
    std::vector<double> super;    // size k
    NormalizedProblem source{};

    double mu_k() const { return mu(k, source.rho_sum()); }
    double trace() const;
    // Banded trace of the square: sum diag^2 + 2 sum sub*super.
    double trace_of_square() const;
};

TridiagonalSpectralMatrix build_matrix(const NormalizedProblem& np, int k);

// B^(k)(0): the alpha -> 0 limit at rho = (1/2, 1/2, 1/2).  Lower bidiagonal;
// eigenvalues are the diagonal entries -j(j+1)/(k(k+2)), j = 0..k.
TridiagonalSpectralMatrix build_matrix_at_alpha_zero(int k);

// Symmetric form D^{-1} M D with offdiag = sqrt(sub*super).  The similarity
// scalings grow geometrically with the row index, so they are kept as logs;
// similarity() materializes them (finite only while exp stays in range).
struct SymmetrizedMatrix {
    int order = 0;
    std::vector<double> diag;
    std::vector<double> offdiag;         // size order - 1
    std::vector<double> log_similarity;  // log d_r, d_0 = 1

    std::vector<double> similarity() const;
};

SymmetrizedMatrix symmetrize(const TridiagonalSpectralMatrix& m);

// d/dalpha of the eigenvalue branch that vanishes at alpha = 0 (rho = 1/2),
// via first-order perturbation w^T A^(k) v / (w^T v) around B^(k)(0).  The
// left eigenvector is e_0 (the first row of B^(k)(0) vanishes), so only
// v_1/v_0 enters and the value is exact in small-integer rational arithmetic.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};
Rational eigenvalue_slope_at_zero_rational(int k);
double eigenvalue_slope_at_zero(int k);

// Largest eigenvalue of B^(k)(alpha) at rho = 1/2 (finite-difference probes).
double largest_eigenvalue_at(double alpha_value, int k);

// Debug/oracle dump: CSV rows "row,col,value" (17 significant digits).
void write_matrix_csv(std::ostream& os, const TridiagonalSpectralMatrix& m);

} // namespace hs
