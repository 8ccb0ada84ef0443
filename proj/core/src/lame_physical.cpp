#include "hs/lame_physical.hpp"
#include "hs/errors.hpp"
#include "hs/numerics.hpp"

#include <cmath>
#include <sstream>

namespace hs {

namespace {

void check_modulus(double modulus) {
    if (!(modulus > 0.0 && modulus < 1.0)) {
        throw ValidationError("modulus must lie strictly in (0, 1)");
    }
}

double mu_gamma(const GammaClass& g, int m) {
    // m (m + |gamma| + 1/2), the mu value of the reduced problem
    return m * (m + g.weight() + 0.5);
}

} // namespace

std::vector<GammaClass> admissible_gammas(int n) {
    std::vector<GammaClass> out;
    for (int g1 = 0; g1 <= 1; ++g1) {
        for (int g2 = 0; g2 <= 1; ++g2) {
            for (int g3 = 0; g3 <= 1; ++g3) {
                GammaClass g{{g1, g2, g3}};
                if ((g.weight() - n) % 2 == 0) out.push_back(g);
            }
        }
    }
    return out;
}

LameProblem gamma_to_problem(const GammaClass& g, double modulus) {
    check_modulus(modulus);
    const double kinv2 = 1.0 / (modulus * modulus);
    return LameProblem(0.0, 1.0, kinv2,
                       (g.gamma[0] + 0.5) / 2.0,
                       (g.gamma[1] + 0.5) / 2.0,
                       (g.gamma[2] + 0.5) / 2.0);
}

double lambda_from_h(double h, const GammaClass& g, double modulus, int m) {
    check_modulus(modulus);
    if (m < 1) {
        throw ValidationError("lambda_from_h: m = 0 is the degenerate constant-eigenfunction case");
    }
    const double k2 = modulus * modulus;
    const double kinv2 = 1.0 / k2;
    const int g1 = g.gamma[0], g2 = g.gamma[1], g3 = g.gamma[2];
    return (kinv2 * h - (1.0 + k2) * g1 - g2 - k2 * g3 - 2.0 * k2 * g1 * g3 -
            2.0 * g1 * g2) / mu_gamma(g, m);
}

double h_from_lambda(double lambda, const GammaClass& g, double modulus, int m) {
    check_modulus(modulus);
    if (m < 1) {
        throw ValidationError("h_from_lambda: m = 0 is the degenerate constant-eigenfunction case");
    }
    const double k2 = modulus * modulus;
    const int g1 = g.gamma[0], g2 = g.gamma[1], g3 = g.gamma[2];
    return k2 * (lambda * mu_gamma(g, m) + (1.0 + k2) * g1 + g2 + k2 * g3 +
                 2.0 * k2 * g1 * g3 + 2.0 * g1 * g2);
}

double algebraic_rhs_constant(double lambda, const GammaClass& g, double modulus, int m) {
    check_modulus(modulus);
    const double kinv2 = 1.0 / (modulus * modulus);
    const int g1 = g.gamma[0], g2 = g.gamma[1], g3 = g.gamma[2];
    return 4.0 * mu_gamma(g, m) * lambda + kinv2 * (2.0 * g1 * g2 + g1 + g2) +
           (2.0 * g1 * g3 + g1 + g3);
}

std::vector<double> eigenvalues_lambda_class(int n, const GammaClass& g, double modulus) {
    if (!g.admissible_for(n)) {
        std::ostringstream os;
        os << "eigenvalues_lambda_class: gamma weight " << g.weight()
           << " has wrong parity for n = " << n;
        throw ValidationError(os.str());
    }
    const int m = g.poly_degree(n);
    if (m < 1) {
        throw ValidationError("eigenvalues_lambda_class: degenerate m = 0 class "
                              "(reported separately, not as a lambda list)");
    }
    const LameProblem p = gamma_to_problem(g, modulus);
    SolveOptions opt;
    opt.with_eigenvectors = false;
    return van_vleck_zeros(p, m, opt).zeros;
}

int class_cardinality(int n, const GammaClass& g) {
    if (!g.admissible_for(n)) return 0;
    return g.poly_degree(n) + 1;
}

InterlaceVerdict check_prop_4_1(int n, const GammaClass& g, double modulus) {
    const auto inner = eigenvalues_lambda_class(n, g, modulus);
    const auto outer = eigenvalues_lambda_class(n + 2, g, modulus);
    return check_interlacing(inner, outer, 0.0, 1.0 / (modulus * modulus));
}

double evaluate_eigenfunction_algebraic(const GammaClass& g, double modulus,
                                        const StieltjesPolynomial& s, double x) {
    check_modulus(modulus);
    const double kinv2 = 1.0 / (modulus * modulus);
    const double c[3] = {0.0, 1.0, kinv2};
    double pre = 1.0;
    for (int i = 0; i < 3; ++i) {
        if (g.gamma[i] == 0) continue;
        const double d = std::abs(x - c[i]);
        if (d == 0.0) {
            throw ValidationError("evaluate_eigenfunction_algebraic: x at a singular point "
                                  "with half-power prefactor");
        }
        pre *= std::sqrt(d);
    }
    double poly;
    if (s.has_coefficients()) {
        poly = horner_eval2(s.coefficients, x).value;
    } else {
        poly = 1.0;
        for (double r : s.roots) poly *= (x - r);
    }
    return pre * poly;
}

std::string lame_report_json(int n, double modulus) {
    std::ostringstream os;
    os << "{\"n\":" << n << ",\"modulus\":" << format17(modulus) << ",\"classes\":[";
    const auto gs = admissible_gammas(n);
    int total = 0;
    bool first = true;
    for (const auto& g : gs) {
        if (!first) os << ",";
        first = false;
        const int m = g.poly_degree(n);
        total += class_cardinality(n, g);
        os << "{\"gamma\":[" << g.gamma[0] << "," << g.gamma[1] << "," << g.gamma[2]
           << "],\"m\":" << m << ",\"lambdas\":[";
        if (m >= 1) {
            const auto lam = eigenvalues_lambda_class(n, g, modulus);
            for (std::size_t i = 0; i < lam.size(); ++i) {
                if (i) os << ",";
                os << format17(lam[i]);
            }
            os << "],\"h_values\":[";
            for (std::size_t i = 0; i < lam.size(); ++i) {
                if (i) os << ",";
                os << format17(h_from_lambda(lam[i], g, modulus, m));
            }
            os << "]";
        } else {
            os << "],\"h_values\":[],\"degenerate\":\"m = 0 class member, h not computed\"";
        }
        os << "}";
    }
    os << "],\"total_count\":" << total << ",\"prop41\":[";
    bool firstv = true;
    for (const auto& g : gs) {
        if (g.poly_degree(n) < 1) continue;
        if (!firstv) os << ",";
        firstv = false;
        os << verdict_to_json(check_prop_4_1(n, g, modulus));
    }
    os << "]}";
    return os.str();
}

} // namespace hs
