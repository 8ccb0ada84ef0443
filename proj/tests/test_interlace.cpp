#include "hs/eigen.hpp"
#include "hs/errors.hpp"
#include "hs/interlace.hpp"
#include "hs/numerics.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace hs;

TEST_SUITE_BEGIN("interlace");

TEST_CASE("symmetric 1-vs-2 chain holds") {
    const InterlaceVerdict v = check_interlacing({0.0}, {-0.4, 0.4}, -1.0, 1.0);
    CHECK(v.holds);
    CHECK(v.lower_bound_ok);
    CHECK(v.upper_bound_ok);
    CHECK(!v.violation_index.has_value());
    CHECK(v.min_gap == doctest::Approx(0.4));
}

TEST_CASE("k=1 vs k=2 symmetric spectra interlace (closed-form oracles)") {
    const double r1 = 1.0 / std::sqrt(3.0);
    const double r2 = std::sqrt(7.0) / 4.0;
    const InterlaceVerdict v = check_interlacing({-r1, r1}, {-r2, 0.0, r2}, -1.0, 1.0);
    CHECK(v.holds);
}

TEST_CASE("constructed counterexample fails at the last pair") {
    const InterlaceVerdict v = check_interlacing({0.2, 0.4}, {0.1, 0.3, 0.35}, 0.0, 1.0);
    CHECK(!v.holds);
    REQUIRE(v.violation_index.has_value());
    CHECK(*v.violation_index == 4);  // comparison (inner_2, outer_3): 0.4 !< 0.35
    CHECK(v.min_gap == doctest::Approx(-0.05));
}

TEST_CASE("length mismatch rejected") {
    CHECK_THROWS_AS(check_interlacing({0.1, 0.2}, {0.05, 0.15}, 0.0, 1.0), ValidationError);
    CHECK_THROWS_AS(check_interlacing({0.2, 0.1}, {0.0, 0.15, 0.3}, 0.0, 1.0), ValidationError);
}

TEST_CASE("verdict JSON layout") {
    const InterlaceVerdict v = check_interlacing({0.0}, {-0.4, 0.4}, -1.0, 1.0);
    const std::string j = verdict_to_json(v);
    CHECK(j.find("\"holds\":true") != std::string::npos);
    CHECK(j.find("\"violation_index\":null") != std::string::npos);
    CHECK(j.find("\"lo_ok\":true") != std::string::npos);
    CHECK(j.find("\"hi_ok\":true") != std::string::npos);
}

TEST_CASE("distinctness across orders: symmetric k=1 vs k=2 gap equals sqrt7/4 - 1/sqrt3") {
    const LameProblem p(-1.0, 0.0, 1.0, 0.5, 0.5, 0.5);
    const double d = check_distinct_across_orders(p, 1);
    CHECK(d == doctest::Approx(std::sqrt(7.0) / 4.0 - 1.0 / std::sqrt(3.0)).epsilon(1e-9));
    CHECK(d > 0.0);
}

TEST_CASE("harness sanity: a spectrum has zero distance to itself") {
    const LameProblem p(-1.0, 0.0, 1.0, 0.5, 0.5, 0.5);
    SolveOptions opt;
    opt.with_eigenvectors = false;
    const auto z = van_vleck_zeros(p, 4, opt).zeros;
    double best = 1e300;
    for (double a : z) {
        for (double b : z) best = std::min(best, std::abs(a - b));
    }
    CHECK(best == 0.0);
}

TEST_CASE("theorem sweep holds for the symmetric problem to k_max = 10") {
    const LameProblem p(-1.0, 0.0, 1.0, 0.5, 0.5, 0.5);
    const auto verdicts = check_theorem_2_1(p, 10);
    CHECK(verdicts.size() == 9);
    for (const auto& v : verdicts) {
        CHECK(v.holds);
        CHECK(v.lower_bound_ok);
        CHECK(v.upper_bound_ok);
    }
}

TEST_CASE("theorem sweep holds for a strongly asymmetric problem") {
    const LameProblem p(0.0, 1.0, 100.0, 5.0, 0.01, 2.0);
    for (const auto& v : check_theorem_2_1(p, 10)) CHECK(v.holds);
}

TEST_CASE("k_max = 1 gives no consecutive pair") {
    const LameProblem p(-1.0, 0.0, 1.0, 0.5, 0.5, 0.5);
    CHECK(check_theorem_2_1(p, 1).empty());
}

TEST_CASE("role swap: a holding chain restricts to a holding sub-chain") {
    Rng rng(71);
    for (int t = 0; t < 10; ++t) {
        double a[3] = {rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4)};
        std::sort(a, a + 3);
        if (a[1] - a[0] < 0.1 || a[2] - a[1] < 0.1) continue;
        const LameProblem p(a[0], a[1], a[2], rng.log_uniform(0.1, 10),
                            rng.log_uniform(0.1, 10), rng.log_uniform(0.1, 10));
        SolveOptions opt;
        opt.with_eigenvectors = false;
        const int k = 2 + static_cast<int>(rng.uniform() * 8);
        const auto inner = van_vleck_zeros(p, k, opt).zeros;
        const auto outer = van_vleck_zeros(p, k + 1, opt).zeros;
        REQUIRE(check_interlacing(inner, outer, p.alpha1(), p.alpha3()).holds);
        // swap roles: drop outer's endpoints; inner becomes the outer chain
        std::vector<double> mid(outer.begin() + 1, outer.end() - 1);
        const auto v = check_interlacing(mid, inner, outer.front(), outer.back());
        CHECK(v.holds);
    }
}

TEST_CASE("random sweep: 20 problems, orders to 12") {
    Rng rng(72);
    for (int t = 0; t < 20; ++t) {
        double a[3] = {rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
        std::sort(a, a + 3);
        const double span = a[2] - a[0];
        if (span < 0.1 || a[1] - a[0] < 1e-2 * span || a[2] - a[1] < 1e-2 * span) continue;
        const LameProblem p(a[0], a[1], a[2], rng.log_uniform(1e-2, 1e2),
                            rng.log_uniform(1e-2, 1e2), rng.log_uniform(1e-2, 1e2));
        for (const auto& v : check_theorem_2_1(p, 12)) {
            CHECK(v.holds);
            CHECK(v.lower_bound_ok);
            CHECK(v.upper_bound_ok);
        }
    }
}

TEST_SUITE_END();
