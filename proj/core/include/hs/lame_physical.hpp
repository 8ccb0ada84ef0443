#pragma once

#include "hs/eigen.hpp"
#include "hs/interlace.hpp"
#include "hs/problem.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace hs {

// Exponent-pattern index of a physical eigenvalue family: gamma in {0,1}^3.
// A class participates in order n only when n = |gamma| (mod 2).
struct GammaClass {
    std::array<int, 3> gamma{0, 0, 0};

    int weight() const { return gamma[0] + gamma[1] + gamma[2]; }
    bool admissible_for(int n) const { return ((n - weight()) % 2) == 0 && n >= weight(); }
    // degree of the polynomial factor at order n
    int poly_degree(int n) const { return (n - weight()) / 2; }
};

// The four classes of the given parity, in a fixed deterministic order.
std::vector<GammaClass> admissible_gammas(int n);

struct LamePhysicalProblem {
    double modulus = 0.5;   // elliptic modulus in (0, 1)
    int n = 1;
};

// Singular points (0, 1, modulus^-2) with exponents rho_i = (gamma_i + 1/2)/2.
LameProblem gamma_to_problem(const GammaClass& g, double modulus);

// The printed affine eigenvalue map and its inverse (round-trip exact).
double lambda_from_h(double h, const GammaClass& g, double modulus, int m);
double h_from_lambda(double lambda, const GammaClass& g, double modulus, int m);

// Constant k^-2 h appearing in the algebraic-form equation, self-consistent
// with the Heine-Stieltjes reduction:
//   4 m (m + |gamma| + 1/2) lambda = kinv2 h - kinv2 (2 g1 g2 + g1 + g2) - (2 g1 g3 + g1 + g3).
// This is what makes the eigenfunction satisfy the algebraic equation; the
// printed map above does not (see the module tests).
double algebraic_rhs_constant(double lambda, const GammaClass& g, double modulus, int m);

// The lambda-family of class gamma at order n: exactly the Van Vleck zeros of
// order m = (n - |gamma|)/2 for gamma_to_problem.  Requires m >= 1; the m = 0
// classes are degenerate (constant polynomial factor, lambda map undefined)
// and are counted separately.
std::vector<double> eigenvalues_lambda_class(int n, const GammaClass& g, double modulus);

// |Lambda_n^gamma| including the degenerate m = 0 member.
int class_cardinality(int n, const GammaClass& g);

// Interlacing of the class family across orders n and n+2 within (0, modulus^-2);
// Theorem-level: must hold.
InterlaceVerdict check_prop_4_1(int n, const GammaClass& g, double modulus);

// phi(x) = |x|^{g1/2} |x-1|^{g2/2} |x-kinv2|^{g3/2} P_m(x), inspection only.
double evaluate_eigenfunction_algebraic(const GammaClass& g, double modulus,
                                        const StieltjesPolynomial& s, double x);

// JSON report for one (n, modulus): classes with lambda and h lists, count
// identity, Prop 4.1 verdicts.
std::string lame_report_json(int n, double modulus);

} // namespace hs
