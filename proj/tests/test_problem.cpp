#include "hs/errors.hpp"
#include "hs/numerics.hpp"
#include "hs/problem.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace hs;

TEST_SUITE_BEGIN("problem");

TEST_CASE("normalization of the canonical symmetric frame is the identity") {
    const LameProblem p(-1.0, 0.0, 1.0, 0.5, 0.5, 0.5);
    const NormalizedProblem n = normalize(p);
    CHECK(n.alpha == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(n.scale == doctest::Approx(1.0));
    CHECK(n.shift == doctest::Approx(0.0));
}

TEST_CASE("normalization maps (0,2,8) to alpha=3, scale=2, shift=2") {
    const LameProblem p(0.0, 2.0, 8.0, 1.0, 2.0, 3.0);
    const NormalizedProblem n = normalize(p);
    CHECK(n.alpha == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(n.scale == doctest::Approx(2.0));
    CHECK(n.shift == doctest::Approx(2.0));
}

TEST_CASE("normalization maps (-3,-1,0) to alpha=1/2, scale=2, shift=-1") {
    const LameProblem p(-3.0, -1.0, 0.0, 0.2, 0.3, 0.4);
    const NormalizedProblem n = normalize(p);
    CHECK(n.alpha == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(n.scale == doctest::Approx(2.0));
    CHECK(n.shift == doctest::Approx(-1.0));
}

TEST_CASE("denormalize_nu maps the normalized frame points back") {
    CHECK(denormalize_nu(0.0, 2.0, 2.0) == doctest::Approx(2.0));
    CHECK(denormalize_nu(3.0, 2.0, 2.0) == doctest::Approx(8.0));
    CHECK(denormalize_nu(-1.0, 2.0, 2.0) == doctest::Approx(0.0));
}

TEST_CASE("round trip reproduces singular points to 1e-14 relative") {
    Rng rng(101);
    for (int t = 0; t < 200; ++t) {
        double a[3] = {rng.uniform(-7, 7), rng.uniform(-7, 7), rng.uniform(-7, 7)};
        std::sort(a, a + 3);
        if (a[1] - a[0] < 1e-3 || a[2] - a[1] < 1e-3) continue;
        const LameProblem p(a[0], a[1], a[2], rng.log_uniform(0.01, 100),
                            rng.log_uniform(0.01, 100), rng.log_uniform(0.01, 100));
        const NormalizedProblem n = normalize(p);
        const double pts[3] = {-1.0, 0.0, n.alpha};
        for (int i = 0; i < 3; ++i) {
            const double back = denormalize_nu(pts[i], n.scale, n.shift);
            CHECK(std::abs(back - a[i]) <= 1e-14 * (std::abs(a[i]) + p.span()));
        }
    }
}

TEST_CASE("mu values and strict monotonicity") {
    CHECK(mu(0, 17.5) == 0.0);
    CHECK(mu(1, 1.5) == doctest::Approx(3.0));
    for (int k : {1, 2, 5, 10}) {
        CHECK(mu(k, 1.5) == doctest::Approx(static_cast<double>(k) * (k + 2)));
    }
    // mu_j - mu_{j-1} = 2(j-1) + 2 rho_sum > 0, spot-checked out to 1e6
    Rng rng(7);
    for (int t = 0; t < 20; ++t) {
        const double rs = rng.log_uniform(1e-2, 1e2);
        for (std::int64_t j : {1LL, 2LL, 10LL, 1000LL, 1000000LL}) {
            const double diff = mu(j, rs) - mu(j - 1, rs);
            CHECK(diff == doctest::Approx(2.0 * (j - 1) + 2.0 * rs).epsilon(1e-9));
            CHECK(diff > 0.0);
        }
    }
}

TEST_CASE("heine count is k+1") {
    CHECK(heine_count(1) == 2);
    CHECK(heine_count(2) == 3);
    CHECK(heine_count(10) == 11);
}

TEST_CASE("validation rejects bad input naming the offending field") {
    CHECK_THROWS_WITH_AS(LameProblem(1.0, 0.0, -1.0, 0.5, 0.5, 0.5),
                         doctest::Contains("alpha2"), ValidationError);
    CHECK_THROWS_WITH_AS(LameProblem(-1.0, 0.0, 1.0, 0.5, -0.5, 0.5),
                         doctest::Contains("rho2"), ValidationError);
    CHECK_THROWS_WITH_AS(LameProblem(-1.0, 2.0, 2.0, 0.5, 0.5, 0.5),
                         doctest::Contains("alpha3"), ValidationError);
    CHECK_THROWS_AS(LameProblem(0.0, 1e-12, 1.0, 0.5, 0.5, 0.5), ValidationError);
}

TEST_SUITE_END();
