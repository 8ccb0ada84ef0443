#include "hs/errors.hpp"
#include "hs/lame_physical.hpp"
#include "hs/numerics.hpp"

#include <doctest.h>

#include <cmath>

using namespace hs;

TEST_SUITE_BEGIN("lame_physical");

TEST_CASE("gamma class to problem: points (0, 1, modulus^-2), exponents (gamma+1/2)/2") {
    const GammaClass g{{0, 0, 0}};
    const LameProblem p = gamma_to_problem(g, 0.5);
    CHECK(p.alpha1() == 0.0);
    CHECK(p.alpha2() == 1.0);
    CHECK(p.alpha3() == doctest::Approx(4.0));
    CHECK(p.rho1() == doctest::Approx(0.25));
    CHECK(p.rho2() == doctest::Approx(0.25));
    CHECK(p.rho3() == doctest::Approx(0.25));
    // mu_m = m (m + |gamma| + 1/2) through the generic formula
    for (int m : {1, 2, 5}) {
        CHECK(mu(m, p.rho_sum()) == doctest::Approx(m * (m + 0.5)).epsilon(1e-15));
    }
    const GammaClass g111{{1, 1, 1}};
    const LameProblem q = gamma_to_problem(g111, 0.5);
    CHECK(q.rho1() == doctest::Approx(0.75));
    for (int m : {1, 2, 5}) {
        CHECK(mu(m, q.rho_sum()) == doctest::Approx(m * (m + 3.5)).epsilon(1e-15));
    }
    CHECK(q.rho_sum() == doctest::Approx((3.0 + 1.5) / 2.0));
    CHECK_THROWS_AS(gamma_to_problem(g, 1.5), ValidationError);
}

TEST_CASE("lambda_from_h: gamma = 0 collapses to kinv2 h / (m(m+1/2)); round trip") {
    const GammaClass g{{0, 0, 0}};
    const double modulus = 0.7;
    const double kinv2 = 1.0 / (modulus * modulus);
    for (double h : {-3.0, 0.0, 2.5}) {
        CHECK(lambda_from_h(h, g, modulus, 2) ==
              doctest::Approx(kinv2 * h / (2.0 * 2.5)).epsilon(1e-14));
    }
    Rng rng(90);
    for (int t = 0; t < 100; ++t) {
        const GammaClass gg{{static_cast<int>(rng.uniform() * 2),
                             static_cast<int>(rng.uniform() * 2),
                             static_cast<int>(rng.uniform() * 2)}};
        const double mod = rng.uniform(0.1, 0.95);
        const int m = 1 + static_cast<int>(rng.uniform() * 6);
        const double h = rng.uniform(-40, 40);
        const double back = h_from_lambda(lambda_from_h(h, gg, mod, m), gg, mod, m);
        CHECK(back == doctest::Approx(h).epsilon(1e-13));
    }
    CHECK_THROWS_AS(lambda_from_h(1.0, g, 0.5, 0), ValidationError);
}

TEST_CASE("lambda ordering follows h ordering (positive affine slope)") {
    const GammaClass g{{1, 0, 1}};
    const double modulus = 0.6;
    const double l1 = lambda_from_h(1.0, g, modulus, 3);
    const double l2 = lambda_from_h(2.0, g, modulus, 3);
    CHECK(l2 > l1);
}

TEST_CASE("class lambda lists: counts and Prop 4.1 bounds") {
    const double modulus = 0.5;
    const GammaClass g{{0, 0, 0}};
    for (int n : {2, 4, 8}) {
        const auto lam = eigenvalues_lambda_class(n, g, modulus);
        CHECK(static_cast<int>(lam.size()) == n / 2 + 1);
        for (double l : lam) {
            CHECK(l > 0.0);
            CHECK(l < 1.0 / (modulus * modulus));
        }
    }
    CHECK_THROWS_AS(eigenvalues_lambda_class(3, g, modulus), ValidationError);  // parity
    const GammaClass g110{{1, 1, 0}};
    CHECK_THROWS_AS(eigenvalues_lambda_class(2, g110, modulus), ValidationError);  // m = 0
}

TEST_CASE("count identity: totals reach 2n+1 for n = 1..20") {
    for (int n = 1; n <= 20; ++n) {
        int total = 0;
        for (const auto& g : admissible_gammas(n)) total += class_cardinality(n, g);
        CHECK(total == 2 * n + 1);
    }
    // n = 2 splits as 2 + 1 + 1 + 1
    const auto gs = admissible_gammas(2);
    CHECK(gs.size() == 4);
    int m_pos = 0, degenerate = 0;
    for (const auto& g : gs) {
        if (g.poly_degree(2) >= 1) {
            ++m_pos;
            CHECK(class_cardinality(2, g) == 2);
        } else {
            ++degenerate;
            CHECK(class_cardinality(2, g) == 1);
        }
    }
    CHECK(m_pos == 1);
    CHECK(degenerate == 3);
}

TEST_CASE("Prop 4.1 verdicts hold (spec examples)") {
    CHECK(check_prop_4_1(2, GammaClass{{0, 0, 0}}, 0.5).holds);
    CHECK(check_prop_4_1(5, GammaClass{{1, 1, 1}}, 0.9).holds);
    CHECK_THROWS_AS(check_prop_4_1(3, GammaClass{{0, 0, 0}}, 0.5), ValidationError);
}

TEST_CASE("eigenfunction with gamma = 0 is the bare polynomial") {
    const GammaClass g{{0, 0, 0}};
    const double modulus = 0.5;
    const LameProblem p = gamma_to_problem(g, modulus);
    const auto spec = van_vleck_zeros(p, 2);
    const auto& s = spec.stieltjes[1];
    for (double x : {0.3, 0.8, 2.0}) {
        double poly = 1.0;
        for (double r : s.roots) poly *= (x - r);
        CHECK(evaluate_eigenfunction_algebraic(g, modulus, s, x) ==
              doctest::Approx(poly).epsilon(1e-12));
    }
}

TEST_CASE("half-power prefactor is even around its singular point") {
    const GammaClass g{{1, 0, 0}};
    StieltjesPolynomial constant;
    constant.degree = 0;
    constant.coefficients = {1.0};
    const double a = evaluate_eigenfunction_algebraic(g, 0.5, constant, 0.3);
    const double b = evaluate_eigenfunction_algebraic(g, 0.5, constant, -0.3);
    CHECK(a == doctest::Approx(b).epsilon(1e-14));
    CHECK_THROWS_AS(evaluate_eigenfunction_algebraic(g, 0.5, constant, 0.0), ValidationError);
}

TEST_CASE("eigenfunction satisfies the algebraic-form equation; printed map does not") {
    // finite-difference second derivative of phi against
    //   phi'' + (1/2)(1/x + 1/(x-1) + 1/(x-kinv2)) phi' = (n(n+1)x - kinv2 h)/(4 A) phi
    const double modulus = 0.5;
    const double kinv2 = 4.0;
    for (const auto& garr : {std::array<int, 3>{0, 0, 0}, std::array<int, 3>{1, 0, 1},
                             std::array<int, 3>{1, 1, 1}, std::array<int, 3>{0, 1, 0}}) {
        const GammaClass g{garr};
        for (int m : {1, 2, 3}) {
            const int n = 2 * m + g.weight();
            const LameProblem p = gamma_to_problem(g, modulus);
            const auto spec = van_vleck_zeros(p, m);
            for (int i = 0; i <= m; ++i) {
                const auto& s = spec.stieltjes[i];
                const double lambda = s.associated_nu;
                const double kh_true = algebraic_rhs_constant(lambda, g, modulus, m);
                const double kh_printed =
                    kinv2 * h_from_lambda(lambda, g, modulus, m);
                double worst_true = 0.0, worst_printed = 0.0;
                for (double x : {0.31, 0.73, 2.1, 3.47}) {
                    const double hh = 1e-3;
                    double f[5];
                    for (int t = -2; t <= 2; ++t) {
                        f[t + 2] = evaluate_eigenfunction_algebraic(g, modulus, s, x + t * hh);
                    }
                    const double d1 = (f[0] - 8 * f[1] + 8 * f[3] - f[4]) / (12 * hh);
                    const double d2 =
                        (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * hh * hh);
                    const double pref = 0.5 * (1.0 / x + 1.0 / (x - 1.0) + 1.0 / (x - kinv2));
                    const double lhs = d2 + pref * d1;
                    auto resid = [&](double kh) {
                        const double rhs =
                            (n * (n + 1.0) * x - kh) / (4.0 * x * (x - 1.0) * (x - kinv2)) * f[2];
                        const double den = std::abs(d2) + std::abs(pref * d1) + std::abs(rhs);
                        return std::abs(lhs - rhs) / den;
                    };
                    worst_true = std::max(worst_true, resid(kh_true));
                    worst_printed = std::max(worst_printed, resid(kh_printed));
                }
                CHECK(worst_true < 1e-8);
                // the printed eigenvalue map is not self-consistent with the
                // algebraic form (missing factor 4, misplaced kinv2)
                CHECK(worst_printed > 1e-3);
            }
        }
    }
}

TEST_CASE("JSON report carries classes, counts and verdicts") {
    const std::string j = lame_report_json(2, 0.5);
    CHECK(j.find("\"total_count\":5") != std::string::npos);
    CHECK(j.find("\"degenerate\"") != std::string::npos);
    CHECK(j.find("\"prop41\":[{\"holds\":true") != std::string::npos);
}

TEST_SUITE_END();
