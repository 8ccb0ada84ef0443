#pragma once

#include "hs/matrix.hpp"
#include "hs/problem.hpp"
#include "hs/tridiag.hpp"

#include <optional>
#include <vector>

namespace hs {

// Monic polynomial expansion from sorted roots, linear factor at a time with
// compensated accumulation.  Coefficients ascending; entries may overflow for
// extreme degree/span combinations -- callers must check finiteness.
std::vector<double> expand_monic_from_roots(const std::vector<double>& roots);

// Monic original-frame coefficients of scale^deg * S_norm((x - shift)/scale)
// given normalized-frame monic coefficients (Taylor shift).
std::vector<double> poly_from_normalized(const std::vector<double>& cn,
                                         double scale, double shift);

// Horner evaluation of p, p', p'' (ascending coefficients).
struct HornerEval {
    double value, d1, d2;
};
HornerEval horner_eval2(const std::vector<double>& coeffs, double x);

// A Stieltjes polynomial in original coordinates.  The roots are the primary
// representation (stable to evaluate at any degree); the monic coefficient
// vector is populated whenever its entries are representable in doubles.
struct StieltjesPolynomial {
    int degree = 0;
    double associated_nu = 0.0;            // original frame
    std::vector<double> roots;             // ascending, original frame, size == degree
    std::vector<double> coefficients;      // ascending powers, monic; empty if unrepresentable

    bool has_coefficients() const { return !coefficients.empty(); }
};

struct VanVleckSpectrum {
    int k = 0;
    std::vector<double> zeros;             // ascending, original coordinates
    std::vector<double> zeros_normalized;  // same, normalized frame
    std::vector<EigenvalueBracket> brackets;  // certified brackets, normalized frame
    std::vector<StieltjesPolynomial> stieltjes;  // size k+1 when eigenvectors requested
    std::vector<double> residuals;               // relative ODE residuals, same size
};

struct SolveOptions {
    double tol_factor = 1e-13;     // bracket width target: tol_factor * (alpha3 - alpha1)
    bool with_eigenvectors = true;
    // Above this order the dense Newton systems of the eigenvector path get
    // expensive; zeros-only solves have no such limit.
    int max_eigenvector_order = 512;
};

// All k+1 Van Vleck zeros of order k: Sturm bisection on the symmetrized
// matrix, certified brackets, denormalization, and (optionally) Stieltjes
// polynomials with per-eigenpair ODE residual certificates.
//
// Throws SolverError(DegenerateSpectrum) if two zeros approach within
// 1e-11 * (alpha3 - alpha1) and SolverError(NonConvergence) on solver
// breakdown.  Neither occurs for valid inputs.
VanVleckSpectrum van_vleck_zeros(const LameProblem& problem, int k,
                                 const SolveOptions& options = {});

// det(M - nu I) by the three-term minor recurrence over the bands, with
// power-of-two rescaling so the value is usable at any order.
struct CharPolyValue {
    double mantissa = 0.0;   // det = mantissa * 2^exp2
    long exp2 = 0;
    double peak_mantissa = 0.0;  // max intermediate |minor|, same scaling
    long peak_exp2 = 0;

    int sign() const { return mantissa > 0.0 ? 1 : (mantissa < 0.0 ? -1 : 0); }
    // |det| relative to the largest intermediate minor (the "running scale").
    double relative_to_peak() const;
};
CharPolyValue char_poly_oracle(const TridiagonalSpectralMatrix& m, double nu);

// True when the characteristic polynomial changes sign across
// [nu - delta, nu + delta]: an independent bracket certificate for nu.
bool char_poly_sign_change(const TridiagonalSpectralMatrix& m, double nu, double delta);

// Relative ODE residual of the eigenpair (s, nu) on a 200-point Chebyshev
// grid over [alpha1, alpha3]:
//    max |A S'' + B S' - mu_k (x-nu) S|  /  max (|A S''| + |B S'| + |mu_k (x-nu) S|).
// Root-product evaluation when roots are present (stable at any degree),
// coefficient Horner otherwise.
enum class ResidualRoute { Auto, Roots, Coefficients };
double ode_residual(const LameProblem& problem, const StieltjesPolynomial& s,
                    double nu, ResidualRoute route = ResidualRoute::Auto);

// --- building blocks, exposed for oracles and tests ---

// Roots of the Stieltjes polynomial for eigenindex i (zeros ascending) via
// damped Newton on the electrostatic equilibrium
//   sum_{j != r} 1/(z_r - z_j) + sum_i rho_i/(z_r - alpha_i) = 0
// with occupancy (i, k-i): i roots in (-1, 0), k-i in (0, alpha).
// Returned ascending, normalized frame.
std::vector<double> stieltjes_roots_electrostatic(const NormalizedProblem& np,
                                                  int k, int eigenindex);

// nu recovered from the roots by matching the x^k coefficient; independent of
// the matrix eigenvalue route.
double nu_from_roots(const NormalizedProblem& np, int k,
                     const std::vector<double>& roots);

// Monic Stieltjes coefficients (normalized frame) via inverse iteration on the
// symmetrized matrix; reliable for small orders (k <= ~20), where coefficient
// arithmetic is well conditioned.
std::vector<double> stieltjes_from_inverse_iteration(
    const TridiagonalSpectralMatrix& m, const SymmetrizedMatrix& s, double nu_normalized);

// Root extraction from a monic coefficient vector by scanning for sign
// changes, bisecting each bracket, and Newton polish.  Valid while Horner
// evaluation of the polynomial is (small degrees).
std::vector<double> roots_from_coefficients(const std::vector<double>& coeffs,
                                            double lo, double hi);

} // namespace hs
