#pragma once

#include "hs/interlace.hpp"

#include <complex>
#include <vector>

namespace hs {

using Complex = std::complex<double>;

// Coefficient matrix for singular points at the cube roots of unity,
// A(x) = x^3 - 1.  Row j couples a_{j-1}, a_j, a_{j+1}, a_{j+2}:
//   sub   (j, j-1): 1 - m_{j-1}/mu_k,    m_j = j (j - 1 + 2 (r1+r2+r3))
//   diag  (j, j):   -2 c1 j / mu_k,      c1 = r1 + w r2 + w^2 r3
//   sup1  (j, j+1): -2 c0 (j+1) / mu_k,  c0 = r1 + w^2 r2 + w r3
//   sup2  (j, j+2): (j+2)(j+1) / mu_k
// with w = exp(2 pi i/3) and mu_k = k (k - 1 + 2 (r1+r2+r3)).  For equal rho
// the diag and sup1 bands vanish identically and the matrix is real.
struct EquilateralMatrix {
    int k = 0;
    int order = 0;
    double rho1 = 0.5, rho2 = 0.5, rho3 = 0.5;
    double mu_k = 0.0;
    bool equal_rho = true;
    std::vector<double> sub;       // size k
    std::vector<Complex> diag;     // size k+1
    std::vector<Complex> sup1;     // size k
    std::vector<double> sup2;      // size max(k-1, 0)
};

EquilateralMatrix build_equilateral_matrix(double rho, int k);
EquilateralMatrix build_equilateral_matrix(double rho1, double rho2, double rho3, int k);

// det(M - nu I) and d/dnu via the banded minor recurrence (lower bandwidth 1,
// upper bandwidth 2), power-of-two rescaled.  value/deriv share the scale, so
// Newton steps and Aberth corrections use them directly.
struct EquilateralCharPoly {
    Complex value;
    Complex deriv;
    long exp2 = 0;
    double peak = 0.0;  // largest intermediate minor at the same scale convention
    long peak_exp2 = 0;

    double value_relative_to_peak() const;
};
EquilateralCharPoly equilateral_char_poly(const EquilateralMatrix& m, Complex nu);

// All k+1 eigenvalues: Aberth-Ehrlich from a spiral start on the incircle,
// Newton polish, then collapse of near-zero clusters to their centroid (the
// center eigenvalue is algebraically double when order = 1 mod 3, and the
// cluster centroid restores it to full precision).  Deterministic order:
// sorted by (modulus, argument).
std::vector<Complex> equilateral_eigenvalues(const EquilateralMatrix& m);

// Exact symbolic expansion of det(M - nu I) into monomial coefficients
// (ascending powers of nu), and an independent Durand-Kerner rooter over
// those coefficients -- the dense oracle pair for small orders.
std::vector<Complex> equilateral_charpoly_coefficients(const EquilateralMatrix& m);
std::vector<Complex> durand_kerner(const std::vector<Complex>& coeffs);

struct EquilateralSpectrum {
    int k = 0;
    double rho = 0.5;
    std::vector<Complex> zeros;        // all k+1, sorted by (modulus, argument)
    std::vector<double> ray_moduli;    // sorted, one entry per ray triple
    bool center_zero_present = false;
    int center_multiplicity = 0;       // (k+1) mod 3 when the structure holds
    std::vector<double> residuals;     // relative ODE residual per zero
};

// Equal-rho spectrum with ray classification (argument within 1e-8 of
// {0, +-2pi/3}, center below modulus 1e-10) and per-eigenpair ODE residual
// certification on an incircle grid.  Throws ClassificationFailure when a
// zero falls off the rays.
EquilateralSpectrum equilateral_zeros(double rho, int k);

// General-rho variant (used for the symmetry-breaking negative test): the
// classification rules are the equal-rho ones, so unequal exponents are
// expected to throw ClassificationFailure.
EquilateralSpectrum equilateral_zeros(double rho1, double rho2, double rho3, int k);

// Ray-modulus interlacing between orders 3k-1 (inner, k moduli) and 3k+2
// (outer, k+1 moduli) inside (0, 1).  Conjecture evidence, never a theorem
// check: callers report, they do not assert.
InterlaceVerdict check_radial_conjecture(double rho, int k);

// Relative ODE residual of ((x^3 - 1) S'' + B S' - mu_k (x - nu) S) over a
// grid inside the triangle's incircle, product-form evaluation from the
// Stieltjes roots.
double equilateral_ode_residual(double rho1, double rho2, double rho3, int k,
                                Complex nu, const std::vector<Complex>& stieltjes_roots);

} // namespace hs
