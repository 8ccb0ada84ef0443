#include "hs/eigen.hpp"
#include "hs/errors.hpp"
#include "hs/matrix.hpp"
#include "hs/numerics.hpp"
#include "hs/problem.hpp"
#include "hs/tridiag.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace hs;

namespace {

LameProblem random_problem(Rng& rng, double rho_lo = 1e-2, double rho_hi = 1e2) {
    for (;;) {
        double a[3] = {rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
        std::sort(a, a + 3);
        const double span = a[2] - a[0];
        if (span < 1e-2 || a[1] - a[0] < 1e-3 * span || a[2] - a[1] < 1e-3 * span) continue;
        return LameProblem(a[0], a[1], a[2], rng.log_uniform(rho_lo, rho_hi),
                           rng.log_uniform(rho_lo, rho_hi), rng.log_uniform(rho_lo, rho_hi));
    }
}

const LameProblem& sym_problem() {
    static const LameProblem p(-1.0, 0.0, 1.0, 0.5, 0.5, 0.5);
    return p;
}

} // namespace

TEST_SUITE_BEGIN("eigen");

TEST_CASE("k=1 symmetric zeros are +-1/sqrt(3) (closed-form quadratic oracle)") {
    // roots of 3 nu^2 + 2(1-alpha) nu - alpha at alpha = 1
    const auto spec = van_vleck_zeros(sym_problem(), 1);
    REQUIRE(spec.zeros.size() == 2);
    CHECK(spec.zeros[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(spec.zeros[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(spec.residuals[0] < 1e-12);
    CHECK(spec.residuals[1] < 1e-12);
}

TEST_CASE("k=1 general alpha agrees with the quadratic 3nu^2+2(1-alpha)nu-alpha") {
    Rng rng(55);
    for (int t = 0; t < 10; ++t) {
        const double alpha = rng.log_uniform(0.1, 10.0);
        // original frame (-1, 0, alpha) with rho = 1/2: scale 1, shift 0
        const LameProblem p(-1.0, 0.0, alpha, 0.5, 0.5, 0.5);
        const auto spec = van_vleck_zeros(p, 1);
        const double disc = std::sqrt((1.0 - alpha) * (1.0 - alpha) + 3.0 * alpha);
        const double lo = ((alpha - 1.0) - disc) / 3.0;
        const double hi = ((alpha - 1.0) + disc) / 3.0;
        CHECK(spec.zeros[0] == doctest::Approx(lo).epsilon(1e-11));
        CHECK(spec.zeros[1] == doctest::Approx(hi).epsilon(1e-11));
    }
}

TEST_CASE("k=2 symmetric spectrum is {-sqrt(7)/4, 0, sqrt(7)/4}") {
    // hand expansion of the 3x3 determinant: -nu^3 + (7/16) nu
    const auto spec = van_vleck_zeros(sym_problem(), 2);
    REQUIRE(spec.zeros.size() == 3);
    CHECK(std::abs(spec.zeros[1]) < 1e-13);
    CHECK(spec.zeros[2] == doctest::Approx(std::sqrt(7.0) / 4.0).epsilon(1e-12));
    CHECK(spec.zeros[0] == doctest::Approx(-std::sqrt(7.0) / 4.0).epsilon(1e-12));
}

TEST_CASE("k=5: six zeros inside (alpha1, alpha3), residuals below 1e-9") {
    Rng rng(56);
    for (int t = 0; t < 20; ++t) {
        const LameProblem p = random_problem(rng);
        const auto spec = van_vleck_zeros(p, 5);
        CHECK(static_cast<std::int64_t>(spec.zeros.size()) == heine_count(5));
        for (double z : spec.zeros) {
            CHECK(z > p.alpha1());
            CHECK(z < p.alpha3());
        }
        for (double r : spec.residuals) CHECK(r < 1e-9);
    }
}

TEST_CASE("char poly oracle: 2x2 symmetric case is nu^2 - 1/3") {
    const auto m = build_matrix(normalize(sym_problem()), 1);
    for (double nu : {0.0, 0.25, -0.8, 1.5}) {
        const auto v = char_poly_oracle(m, nu);
        CHECK(v.exp2 == 0);
        CHECK(v.mantissa == doctest::Approx(nu * nu - 1.0 / 3.0).epsilon(1e-14));
    }
    CHECK(char_poly_oracle(m, 1.0 / std::sqrt(3.0)).relative_to_peak() < 1e-8);
}

TEST_CASE("char poly changes sign across each simple eigenvalue") {
    Rng rng(57);
    for (int t = 0; t < 20; ++t) {
        const LameProblem p = random_problem(rng);
        const NormalizedProblem np = normalize(p);
        const int k = 1 + static_cast<int>(rng.uniform() * 29);
        SolveOptions opt;
        opt.with_eigenvectors = false;
        const auto spec = van_vleck_zeros(p, k, opt);
        const auto m = build_matrix(np, k);
        for (double nu : spec.zeros_normalized) {
            CHECK(char_poly_sign_change(m, nu, 1e-7 * np.span()));
        }
    }
    // on moderate exponents the determinant value at a bisected eigenvalue
    // also sits far below the running scale
    for (int t = 0; t < 20; ++t) {
        const LameProblem p = random_problem(rng, 1e-1, 1e1);
        const NormalizedProblem np = normalize(p);
        const int k = 1 + static_cast<int>(rng.uniform() * 29);
        SolveOptions opt;
        opt.with_eigenvectors = false;
        const auto spec = van_vleck_zeros(p, k, opt);
        const auto m = build_matrix(np, k);
        for (double nu : spec.zeros_normalized) {
            CHECK(char_poly_oracle(m, nu).relative_to_peak() < 1e-8);
        }
    }
}

TEST_CASE("char poly rescaling keeps large orders finite") {
    const auto m = build_matrix(normalize(sym_problem()), 400);
    const auto v = char_poly_oracle(m, 0.123);
    CHECK(std::isfinite(v.mantissa));
    CHECK(v.peak_mantissa > 0.0);
}

TEST_CASE("ode_residual: exact k=1 eigenpair evaluates below 1e-12") {
    // S(x) = x + c with c = nu + 2(1-alpha)/3 solves the order-1 equation
    const double alpha = 2.7;
    const LameProblem p(-1.0, 0.0, alpha, 0.5, 0.5, 0.5);
    const double disc = std::sqrt((1.0 - alpha) * (1.0 - alpha) + 3.0 * alpha);
    const double nu = ((alpha - 1.0) + disc) / 3.0;
    const double c = nu + 2.0 * (1.0 - alpha) / 3.0;
    StieltjesPolynomial s;
    s.degree = 1;
    s.associated_nu = nu;
    s.coefficients = {c, 1.0};
    s.roots = {-c};
    CHECK(ode_residual(p, s, nu, ResidualRoute::Coefficients) < 1e-12);
    CHECK(ode_residual(p, s, nu, ResidualRoute::Roots) < 1e-12);
}

TEST_CASE("ode_residual detects a 1e-3 perturbation of nu") {
    const auto spec = van_vleck_zeros(sym_problem(), 6);
    const auto& s = spec.stieltjes[3];
    CHECK(ode_residual(sym_problem(), s, s.associated_nu) < 1e-10);
    CHECK(ode_residual(sym_problem(), s, s.associated_nu + 1e-3) > 1e-5);
}

TEST_CASE("ode_residual rejects non-monic and empty input") {
    StieltjesPolynomial s;
    s.degree = 2;
    s.coefficients = {1.0, 2.0, 3.0};  // leading 3: not monic
    CHECK_THROWS_AS(ode_residual(sym_problem(), s, 0.1, ResidualRoute::Coefficients),
                    ValidationError);
    StieltjesPolynomial empty;
    empty.degree = 2;
    CHECK_THROWS_AS(ode_residual(sym_problem(), empty, 0.1), ValidationError);
}

TEST_CASE("residual certificates hold through k = 200 on an asymmetric problem") {
    const LameProblem p(0.0, 2.0, 8.0, 1.0, 0.3, 2.0);
    for (int k : {50, 200}) {
        const auto spec = van_vleck_zeros(p, k);
        for (double r : spec.residuals) CHECK(r < 1e-9);
    }
}

TEST_CASE("classic small-order route agrees with the electrostatic one") {
    // the coefficient-space route is exercised in its validity regime:
    // balanced gaps (alpha within a decade of 1) and small order
    Rng rng(58);
    for (int t = 0; t < 12; ++t) {
        LameProblem p = [&] {
            for (;;) {
                double a[3] = {rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4)};
                std::sort(a, a + 3);
                const double span = a[2] - a[0];
                if (span < 0.5 || a[1] - a[0] < 0.1 * span || a[2] - a[1] < 0.1 * span) continue;
                return LameProblem(a[0], a[1], a[2], rng.log_uniform(0.2, 5.0),
                                   rng.log_uniform(0.2, 5.0), rng.log_uniform(0.2, 5.0));
            }
        }();
        const NormalizedProblem np = normalize(p);
        const int k = 2 + static_cast<int>(rng.uniform() * 12);  // k <= 14
        const auto spec = van_vleck_zeros(p, k);
        const auto m = build_matrix(np, k);
        const auto sym = symmetrize(m);
        for (int i = 0; i <= k; ++i) {
            // inverse-iteration coefficients (normalized frame) vs the monic
            // expansion of the electrostatic roots
            const auto cn = stieltjes_from_inverse_iteration(m, sym, spec.zeros_normalized[i]);
            std::vector<double> rn(k);
            for (int j = 0; j < k; ++j) rn[j] = normalize_nu(spec.stieltjes[i].roots[j], np.scale, np.shift);
            const auto ce = expand_monic_from_roots(rn);
            double worst = 0.0, scale = 0.0;
            for (int j = 0; j <= k; ++j) {
                worst = std::max(worst, std::abs(cn[j] - ce[j]));
                scale = std::max(scale, std::abs(ce[j]));
            }
            CHECK(worst <= 1e-9 * scale);
            // spec'd root extraction route: bisection over the Horner-evaluated
            // polynomial, valid at these degrees
            const auto rb = roots_from_coefficients(cn, -1.0, np.alpha);
            REQUIRE(static_cast<int>(rb.size()) == k);
            for (int j = 0; j < k; ++j) {
                CHECK(std::abs(rb[j] - rn[j]) <= 1e-9 * np.span());
            }
        }
    }
}

TEST_CASE("electrostatic nu agrees with bisection through k = 200") {
    const LameProblem p(-2.0, 0.5, 1.0, 0.01, 5.0, 80.0);
    const NormalizedProblem np = normalize(p);
    SolveOptions opt;
    opt.with_eigenvectors = false;
    for (int k : {10, 60, 200}) {
        const auto spec = van_vleck_zeros(p, k, opt);
        for (int i : {0, k / 2, k}) {
            const auto roots = stieltjes_roots_electrostatic(np, k, i);
            const double nu = nu_from_roots(np, k, roots);
            CHECK(nu == doctest::Approx(spec.zeros_normalized[i]).epsilon(1e-11));
        }
    }
}

TEST_CASE("Stieltjes roots avoid alpha2 and stay inside (alpha1, alpha3)") {
    Rng rng(59);
    for (int t = 0; t < 10; ++t) {
        const LameProblem p = random_problem(rng);
        const int k = 1 + static_cast<int>(rng.uniform() * 19);
        const auto spec = van_vleck_zeros(p, k);
        for (const auto& s : spec.stieltjes) {
            // no Van Vleck zero is a root of its Stieltjes polynomial
            for (double r : s.roots) {
                CHECK(r > p.alpha1());
                CHECK(r < p.alpha3());
                CHECK(std::abs(r - p.alpha2()) > 1e-12 * p.span());
                CHECK(std::abs(r - s.associated_nu) > 1e-12 * p.span());
            }
            // simple roots: strictly increasing
            for (std::size_t j = 0; j + 1 < s.roots.size(); ++j) {
                CHECK(s.roots[j] < s.roots[j + 1]);
            }
        }
    }
}

TEST_CASE("Shah separation: a critical point or singular point between each root and nu") {
    Rng rng(60);
    for (int t = 0; t < 8; ++t) {
        const LameProblem p = random_problem(rng, 1e-1, 1e1);
        for (int k = 2; k <= 20; k += 6) {
            const auto spec = van_vleck_zeros(p, k);
            for (const auto& s : spec.stieltjes) {
                // S has simple roots, so S'/S = sum 1/(x - z_i) has exactly one
                // zero per root gap; bisection on that sum locates each
                // critical point without touching coefficients
                std::vector<double> crit;
                for (std::size_t g = 0; g + 1 < s.roots.size(); ++g) {
                    double lo = s.roots[g], hi = s.roots[g + 1];
                    auto f = [&](double x) {
                        double acc = 0.0;
                        for (double z : s.roots) acc += 1.0 / (x - z);
                        return acc;
                    };
                    // nudge inside the open gap; f -> +inf at lo+, -inf at hi-
                    const double eps = 1e-13 * (hi - lo);
                    lo += eps;
                    hi -= eps;
                    for (int it = 0; it < 200 && hi - lo > 1e-15 * p.span(); ++it) {
                        const double mid = 0.5 * (lo + hi);
                        if (f(mid) > 0.0) {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                    }
                    crit.push_back(0.5 * (lo + hi));
                }
                crit.push_back(p.alpha1());
                crit.push_back(p.alpha2());
                crit.push_back(p.alpha3());
                for (double z : s.roots) {
                    const double lo = std::min(z, s.associated_nu);
                    const double hi = std::max(z, s.associated_nu);
                    bool found = false;
                    for (double c : crit) {
                        if (c > lo && c < hi) {
                            found = true;
                            break;
                        }
                    }
                    CHECK(found);
                }
            }
        }
    }
}

TEST_CASE("mirror symmetry: spectrum negates under x -> -x when rho1 = rho3") {
    Rng rng(61);
    for (int t = 0; t < 6; ++t) {
        const double c = rng.log_uniform(0.2, 5.0);
        const double r13 = rng.log_uniform(0.1, 10.0);
        const LameProblem p(-c, 0.0, c, r13, rng.log_uniform(0.1, 10.0), r13);
        SolveOptions opt;
        opt.with_eigenvectors = false;
        const int k = 1 + static_cast<int>(rng.uniform() * 12);
        const auto spec = van_vleck_zeros(p, k, opt);
        for (std::size_t i = 0; i < spec.zeros.size(); ++i) {
            const double mirror = -spec.zeros[spec.zeros.size() - 1 - i];
            CHECK(std::abs(spec.zeros[i] - mirror) <= 1e-12 * p.span());
        }
    }
}

TEST_CASE("eigenvalue count always equals heine_count") {
    Rng rng(62);
    for (int t = 0; t < 10; ++t) {
        const LameProblem p = random_problem(rng);
        const int k = 1 + static_cast<int>(rng.uniform() * 30);
        SolveOptions opt;
        opt.with_eigenvectors = false;
        CHECK(static_cast<std::int64_t>(van_vleck_zeros(p, k, opt).zeros.size()) ==
              heine_count(k));
    }
}

TEST_CASE("eigenvector order guard") {
    SolveOptions opt;
    opt.max_eigenvector_order = 16;
    CHECK_THROWS_AS(van_vleck_zeros(sym_problem(), 17, opt), ValidationError);
}

TEST_SUITE_END();
