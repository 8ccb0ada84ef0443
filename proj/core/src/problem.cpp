#include "hs/problem.hpp"
#include "hs/errors.hpp"

#include <cmath>
#include <sstream>

namespace hs {

namespace {

void require_finite(double v, const char* field) {
    if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "LameProblem: " << field << " must be finite, got " << v;
        throw ValidationError(os.str());
    }
}

} // namespace

LameProblem::LameProblem(double alpha1, double alpha2, double alpha3,
                         double rho1, double rho2, double rho3)
    : alpha1_(alpha1), alpha2_(alpha2), alpha3_(alpha3),
      rho1_(rho1), rho2_(rho2), rho3_(rho3) {
    require_finite(alpha1, "alpha1");
    require_finite(alpha2, "alpha2");
    require_finite(alpha3, "alpha3");
    require_finite(rho1, "rho1");
    require_finite(rho2, "rho2");
    require_finite(rho3, "rho3");
    if (!(alpha1 < alpha2)) {
        throw ValidationError("LameProblem: alpha2 must exceed alpha1 strictly");
    }
    if (!(alpha2 < alpha3)) {
        throw ValidationError("LameProblem: alpha3 must exceed alpha2 strictly");
    }
    if (!(rho1 > 0.0)) throw ValidationError("LameProblem: rho1 must be positive");
    if (!(rho2 > 0.0)) throw ValidationError("LameProblem: rho2 must be positive");
    if (!(rho3 > 0.0)) throw ValidationError("LameProblem: rho3 must be positive");

    const double span = alpha3 - alpha1;
    const double min_gap = 1e-10 * span;
    if (alpha2 - alpha1 < min_gap) {
        throw ValidationError("LameProblem: alpha2 - alpha1 below 1e-10 * span (near-coalescing)");
    }
    if (alpha3 - alpha2 < min_gap) {
        throw ValidationError("LameProblem: alpha3 - alpha2 below 1e-10 * span (near-coalescing)");
    }
}

NormalizedProblem normalize(const LameProblem& p) {
    NormalizedProblem n;
    n.scale = p.alpha2() - p.alpha1();
    n.shift = p.alpha2();
    n.alpha = (p.alpha3() - p.alpha2()) / n.scale;
    n.rho1 = p.rho1();
    n.rho2 = p.rho2();
    n.rho3 = p.rho3();
    return n;
}

} // namespace hs
