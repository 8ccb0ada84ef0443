#pragma once

#include "hs/problem.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace hs {

// Monic spectral polynomial p_{k+1} from the sorted order-k Van Vleck zeros,
// accumulated one linear factor at a time in sorted order.
std::vector<double> build_spectral_poly(const std::vector<double>& zeros);

// (sum nu_i^(k), sum (nu_i^(k))^2) in original coordinates, computed from the
// matrix trace and the banded trace of the square -- never from roots.
std::pair<double, double> zero_power_sums(const LameProblem& problem, int k);

// Candidate three-term recurrence coefficients from the trace formulas:
//   a_n = sum nu^(n-1) - sum nu^(n-2)
//   b_n = -a_n^2/2 + (sum (nu^(n-1))^2 - sum (nu^(n-2))^2)/2
// Defined for n >= 3: order-0 zero sums do not exist (mu_0 = 0 makes the
// order-0 Van Vleck polynomial vanish identically, leaving nu undefined).
double recurrence_a(const LameProblem& problem, int n);
double recurrence_b(const LameProblem& problem, int n);

// Their limits, closed form.
double recurrence_a_limit(const LameProblem& problem);  // (a1+a2+a3)/3
double recurrence_b_limit(const LameProblem& problem);  // (2/45)(sum a^2 - sum aa)

// Closed-form slopes of the trace growth (first and second moment).
double trace1_slope(const LameProblem& problem);
double trace2_slope(const LameProblem& problem);

struct AsymptoticFit {
    double slope = 0.0;
    double intercept = 0.0;
    // fitted exponent of |t_k - slope k - intercept| ~ k^p; -999 marks
    // residuals at the floating-point noise floor (nothing left to fit)
    double residual_decay_exponent = -999.0;
};

// Fits sum nu and sum nu^2 against slope*k + intercept over k_list (ascending,
// >= 3 entries).  Slope by two-stage Richardson over the largest geometric
// quadruple {K/8, K/4, K/2, K} present in k_list (falls back to least squares
// on {k, 1, 1/k, 1/k^2}); remainder decay from a log-log fit.
std::pair<AsymptoticFit, AsymptoticFit> trace_asymptotics(const LameProblem& problem,
                                                          const std::vector<int>& k_list);

// The asymptotic Van Vleck zero density: on each side of alpha2 a complete
// elliptic-type theta-integral after s = const + gap*sin^2(theta), which
// removes both endpoint singularities.  Diverges logarithmically at alpha2.
class RhoADensity {
public:
    explicit RhoADensity(const LameProblem& problem);

    double support_lo() const { return a1_; }
    double support_hi() const { return a3_; }

    // Rejects x outside (alpha1, alpha3) or within 1e-8 * span of alpha2.
    double operator()(double x) const;

    // CDF by adaptive Simpson over the density with geometric refinement into
    // the alpha2 singularity; table built lazily, ~1e-9 absolute accuracy.
    double cdf(double t) const;

    // Independent CDF route: exchange of integration order makes the inner
    // x-integral analytic, leaving a smooth theta-integrand (oracle for cdf()).
    double cdf_exchanged(double t) const;

    // total mass by adaptive quadrature of the density (invariant check)
    double mass() const;

private:
    double a1_, a2_, a3_;
    double span_;
    mutable std::vector<double> nodes_;     // cdf table
    mutable std::vector<double> prefix_;
    void build_table() const;
    double density_branch(double x) const;
};

// Arcsine law on [center - halfwidth, center + halfwidth].
struct ArcsineDensity {
    double center = 0.0;
    double halfwidth = 1.0;
    double operator()(double x) const;
    double cdf(double x) const;
};

// Both support variants for the arcsine comparison: the printed one
// (a -+ 2/b) and the standard normalization (a -+ 2 sqrt(b)); surfaced side
// by side rather than silently resolved.
struct ArcsineSupports {
    ArcsineDensity printed;     // halfwidth 2/b
    ArcsineDensity standard;    // halfwidth 2 sqrt(b)
};
ArcsineSupports arcsine_supports(double a_limit, double b_limit);

// sup |F - G| over a dense grid of [lo, hi].
double ks_distance(const std::function<double(double)>& F,
                   const std::function<double(double)>& G,
                   double lo, double hi, int n_grid = 4001);

// Kolmogorov statistic of sorted samples against a CDF.
double ks_empirical(const std::vector<double>& sorted_samples,
                    const std::function<double(double)>& F);

// Relative residual of the Heun operator 8 A rho'' + 8 A' rho' + A'' rho on
// the quadrature-evaluated density, fourth-order central differences with
// h = 1e-4 * span.  x must stay 0.05 * span away from every singular point.
double heun_residual(const LameProblem& problem, double x);

// max-norm over a 100-point Chebyshev grid of p_n - (x - a_n) p_{n-1} + b_n p_{n-2},
// relative to the grid norm of p_n, with a_n/b_n from the trace formulas and the
// p's evaluated from their zeros.  Nonvanishing of this ratio as n grows is the
// executable content of the non-orthogonality theorem.
double recurrence_residual_ratio(const LameProblem& problem, int n);

} // namespace hs
