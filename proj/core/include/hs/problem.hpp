#pragma once

#include <array>
#include <cstdint>

namespace hs {

// Three real singular points alpha1 < alpha2 < alpha3 with positive exponents
// rho1, rho2, rho3.  A(x) = prod (x - alpha_i), B(x) = sum_i 2 rho_i prod_{j!=i} (x - alpha_j),
// and the equation under study is A phi'' + B phi' = mu (x - nu) phi.
class LameProblem {
public:
    // Validates eagerly; throws ValidationError naming the offending field.
    // Near-coalescing points (gap below 1e-10 * span) are rejected: the affine
    // normalization becomes ill-conditioned there.
    LameProblem(double alpha1, double alpha2, double alpha3,
                double rho1, double rho2, double rho3);

    double alpha1() const { return alpha1_; }
    double alpha2() const { return alpha2_; }
    double alpha3() const { return alpha3_; }
    double rho1() const { return rho1_; }
    double rho2() const { return rho2_; }
    double rho3() const { return rho3_; }

    double rho_sum() const { return rho1_ + rho2_ + rho3_; }
    double span() const { return alpha3_ - alpha1_; }

private:
    double alpha1_, alpha2_, alpha3_;
    double rho1_, rho2_, rho3_;
};

// Image of a LameProblem under x -> (x - alpha2)/(alpha2 - alpha1): singular
// points become (-1, 0, alpha) with alpha = (alpha3 - alpha2)/(alpha2 - alpha1) > 0.
struct NormalizedProblem {
    double alpha;
    double rho1, rho2, rho3;
    double scale;  // alpha2 - alpha1
    double shift;  // alpha2

    double rho_sum() const { return rho1 + rho2 + rho3; }
    double span() const { return 1.0 + alpha; }  // alpha - (-1)
};

NormalizedProblem normalize(const LameProblem& problem);

// Back-transformation of a Van Vleck zero to original coordinates.
inline double denormalize_nu(double nu_normalized, double scale, double shift) {
    return nu_normalized * scale + shift;
}
inline double normalize_nu(double nu, double scale, double shift) {
    return (nu - shift) / scale;
}

// mu_j = j (j - 1 + 2 (rho1 + rho2 + rho3)); mu_0 = 0 and mu is strictly
// increasing in j for positive rho sums.
inline double mu(std::int64_t j, double rho_sum) {
    return static_cast<double>(j) * (static_cast<double>(j) - 1.0 + 2.0 * rho_sum);
}

// sigma(n, k) = (n + k - 2)! / ((n - 2)! k!) specialized to n = 3: exactly k + 1
// Van Vleck zeros of order k in the real three-point case.
inline std::int64_t heine_count(std::int64_t k) {
    return k + 1;
}

} // namespace hs
