#include "hs/matrix.hpp"
#include "hs/errors.hpp"
#include "hs/numerics.hpp"
#include "hs/tridiag.hpp"

#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

namespace hs {

namespace {

TridiagonalSpectralMatrix build_from_bands(double alpha, double r1, double r2, double r3, int k) {
    TridiagonalSpectralMatrix m;
    m.k = k;
    m.order = k + 1;
    m.source = NormalizedProblem{alpha, r1, r2, r3, 1.0, 0.0};
    const double rs = r1 + r2 + r3;
    const double muk = mu(k, rs);
    const double g1 = -2.0 * (r2 + r3 - alpha * (r1 + r2));
    m.diag.resize(k + 1);
    m.sub.resize(k);
    m.super.resize(k);
    for (int j = 0; j <= k; ++j) {
        m.diag[j] = j * ((alpha - 1.0) * (j - 1.0) + g1) / muk;
    }
    for (int j = 1; j <= k; ++j) {
        m.sub[j - 1] = 1.0 - mu(j - 1, rs) / muk;
    }
    for (int j = 0; j < k; ++j) {
        m.super[j] = (j + 1.0) * alpha * (j + 2.0 * r2) / muk;
    }
    return m;
}

} // namespace

double TridiagonalSpectralMatrix::trace() const {
    KahanSum s;
    for (double d : diag) s.add(d);
    return s.value();
}

double TridiagonalSpectralMatrix::trace_of_square() const {
    KahanSum s;
    for (double d : diag) s.add(d * d);
    for (int j = 0; j < k; ++j) s.add(2.0 * sub[j] * super[j]);
    return s.value();
}

TridiagonalSpectralMatrix build_matrix(const NormalizedProblem& np, int k) {
    if (k < 1) throw ValidationError("build_matrix: k must be >= 1");
    TridiagonalSpectralMatrix m = build_from_bands(np.alpha, np.rho1, np.rho2, np.rho3, k);
    m.source = np;
    for (int j = 0; j < k; ++j) {
        if (!(m.sub[j] > 0.0) || !(m.super[j] > 0.0)) {
            std::ostringstream os;
            os << "build_matrix: non-positive off-diagonal at row " << (j + 1)
               << " (sub=" << m.sub[j] << ", super=" << m.super[j]
               << ") -- precondition violated upstream";
            throw ValidationError(os.str());
        }
    }
    return m;
}

TridiagonalSpectralMatrix build_matrix_at_alpha_zero(int k) {
    if (k < 1) throw ValidationError("build_matrix_at_alpha_zero: k must be >= 1");
    return build_from_bands(0.0, 0.5, 0.5, 0.5, k);
}

std::vector<double> SymmetrizedMatrix::similarity() const {
    std::vector<double> d(log_similarity.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::exp(log_similarity[i]);
    return d;
}

SymmetrizedMatrix symmetrize(const TridiagonalSpectralMatrix& m) {
    SymmetrizedMatrix s;
    s.order = m.order;
    s.diag = m.diag;
    s.offdiag.resize(m.k);
    s.log_similarity.assign(m.order, 0.0);
    for (int j = 0; j < m.k; ++j) {
        const double prod = m.sub[j] * m.super[j];
        if (!(prod > 0.0)) {
            std::ostringstream os;
            os << "symmetrize: sub*super <= 0 at offdiagonal " << j
               << " (" << prod << ") -- construction bug";
            throw SolverError(SolverError::Kind::Internal, os.str());
        }
        s.offdiag[j] = std::sqrt(prod);
        // d_{j+1} = d_j sqrt(sub_{j+1}/super_j), kept in log form.
        s.log_similarity[j + 1] =
            s.log_similarity[j] + 0.5 * (std::log(m.sub[j]) - std::log(m.super[j]));
    }
    return s;
}

Rational eigenvalue_slope_at_zero_rational(int k) {
    if (k < 1) throw ValidationError("eigenvalue_slope_at_zero: k must be >= 1");
    // At rho = 1/2: mu_k = k(k+2).  B(0) is lower bidiagonal with zero first
    // row, so w = e_0 and slope = A_{01} v_1 / v_0 with
    //   A_{01} = d(super[0])/dalpha = (0+1)(0+2 rho2)/mu_k = 1/mu_k,
    //   v_1/v_0 = -sub[0]/diag[1] = (1 - mu_0/mu_k) * mu_k / 2 = mu_k / 2.
    const std::int64_t muk = static_cast<std::int64_t>(k) * (k + 2);
    std::int64_t num = muk;          // A01 * v1/v0 = (1/muk)*(muk/2) -> muk/(2 muk)
    std::int64_t den = 2 * muk;
    const std::int64_t g = std::gcd(num, den);
    return Rational{num / g, den / g};
}

double eigenvalue_slope_at_zero(int k) {
    return eigenvalue_slope_at_zero_rational(k).value();
}

double largest_eigenvalue_at(double alpha_value, int k) {
    TridiagonalSpectralMatrix m = build_from_bands(alpha_value, 0.5, 0.5, 0.5, k);
    if (alpha_value == 0.0) {
        // bidiagonal: eigenvalues on the diagonal; the largest is 0 (j = 0).
        double best = m.diag[0];
        for (double d : m.diag) best = std::max(best, d);
        return best;
    }
    const SymmetrizedMatrix s = symmetrize(m);
    const auto ev = tridiag_eigenvalues_bisect(s.diag, s.offdiag, 1e-15 * (1.0 + alpha_value));
    return ev.back().value;
}

void write_matrix_csv(std::ostream& os, const TridiagonalSpectralMatrix& m) {
    os << "row,col,value\n";
    for (int j = 0; j <= m.k; ++j) {
        if (j >= 1) os << j << ',' << j - 1 << ',' << format17(m.sub[j - 1]) << '\n';
        os << j << ',' << j << ',' << format17(m.diag[j]) << '\n';
        if (j < m.k) os << j << ',' << j + 1 << ',' << format17(m.super[j]) << '\n';
    }
}

} // namespace hs
