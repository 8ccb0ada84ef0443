#include "hs/tridiag.hpp"
#include "hs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hs {

int sturm_count_below(const std::vector<double>& diag,
                      const std::vector<double>& offdiag, double x) {
    const int n = static_cast<int>(diag.size());
    int count = 0;
    double d = diag[0] - x;
    if (d < 0.0) ++count;
    for (int i = 1; i < n; ++i) {
        if (d == 0.0) d = std::numeric_limits<double>::min();
        d = diag[i] - x - offdiag[i - 1] * offdiag[i - 1] / d;
        if (d < 0.0) ++count;
    }
    return count;
}

std::vector<EigenvalueBracket> tridiag_eigenvalues_bisect(
    const std::vector<double>& diag, const std::vector<double>& offdiag,
    double abs_tol) {
    const int n = static_cast<int>(diag.size());
    double lo = diag[0], hi = diag[0];
    for (int i = 0; i < n; ++i) {
        const double r = (i > 0 ? std::abs(offdiag[i - 1]) : 0.0) +
                         (i < n - 1 ? std::abs(offdiag[i]) : 0.0);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
    const double pad = 1e-3 * (hi - lo) + 1e-300;
    lo -= pad;
    hi += pad;
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw SolverError(SolverError::Kind::NonConvergence,
                          "tridiag bisection: non-finite Gershgorin bounds");
    }

    std::vector<EigenvalueBracket> out(n);
    for (int idx = 0; idx < n; ++idx) {
        double a = lo, b = hi;
        while (b - a > abs_tol) {
            const double m = 0.5 * (a + b);
            if (m <= a || m >= b) break;  // hit double resolution
            if (sturm_count_below(diag, offdiag, m) <= idx) {
                a = m;
            } else {
                b = m;
            }
        }
        out[idx] = EigenvalueBracket{0.5 * (a + b), a, b};
    }
    for (int idx = 0; idx + 1 < n; ++idx) {
        if (!(out[idx].value <= out[idx + 1].value)) {
            throw SolverError(SolverError::Kind::NonConvergence,
                              "tridiag bisection: eigenvalue ordering lost");
        }
    }
    return out;
}

std::vector<double> tridiag_solve_shifted(const std::vector<double>& diag,
                                          const std::vector<double>& offdiag,
                                          double shift,
                                          const std::vector<double>& b) {
    const int n = static_cast<int>(diag.size());
    std::vector<double> l(n, 0.0), d(n), u1(n, 0.0), u2(n, 0.0), x(b);
    double scale = 0.0;
    for (int i = 0; i < n; ++i) {
        d[i] = diag[i] - shift;
        scale = std::max(scale, std::abs(d[i]));
    }
    for (int i = 0; i + 1 < n; ++i) {
        l[i] = offdiag[i];
        u1[i] = offdiag[i];
        scale = std::max(scale, std::abs(offdiag[i]));
    }
    // zero pivots are replaced by eps * scale (the jtinvit convention): large
    // but finite solution components, which is all inverse iteration needs
    const double tiny = std::max(scale, 1e-30) * 1e-16 * n;
    for (int i = 0; i + 1 < n; ++i) {
        if (std::abs(l[i]) > std::abs(d[i])) {
            std::swap(d[i], l[i]);
            std::swap(u1[i], d[i + 1]);
            if (i + 2 < n) std::swap(u2[i], u1[i + 1]);
            std::swap(x[i], x[i + 1]);
        }
        const double piv = (d[i] != 0.0) ? d[i] : tiny;
        const double m = l[i] / piv;
        d[i + 1] -= m * u1[i];
        if (i + 2 < n) u1[i + 1] -= m * u2[i];
        x[i + 1] -= m * x[i];
    }
    std::vector<double> y(n);
    for (int i = n - 1; i >= 0; --i) {
        double t = x[i];
        if (i + 1 < n) t -= u1[i] * y[i + 1];
        if (i + 2 < n) t -= u2[i] * y[i + 2];
        const double piv = (std::abs(d[i]) > tiny) ? d[i] : (d[i] < 0.0 ? -tiny : tiny);
        y[i] = t / piv;
    }
    return y;
}

std::vector<double> inverse_iteration(const std::vector<double>& diag,
                                      const std::vector<double>& offdiag,
                                      double shift) {
    const int n = static_cast<int>(diag.size());
    double tnorm = 0.0;
    for (int i = 0; i < n; ++i) {
        tnorm = std::max(tnorm, std::abs(diag[i]) + (i > 0 ? std::abs(offdiag[i - 1]) : 0.0) +
                                    (i + 1 < n ? std::abs(offdiag[i]) : 0.0));
    }
    auto normalize_max = [&](std::vector<double>& v) {
        double m = 0.0;
        for (double t : v) m = std::max(m, std::abs(t));
        if (!(m > 0.0) || !std::isfinite(m)) {
            throw SolverError(SolverError::Kind::NonConvergence,
                              "inverse iteration: vector collapsed");
        }
        for (double& t : v) t /= m;
    };
    auto eig_residual = [&](const std::vector<double>& v) {
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            double r = (diag[i] - shift) * v[i];
            if (i > 0) r += offdiag[i - 1] * v[i - 1];
            if (i + 1 < n) r += offdiag[i] * v[i + 1];
            worst = std::max(worst, std::abs(r));
        }
        return worst / std::max(tnorm, 1e-300);
    };

    // aperiodic start: a flat vector can be exactly orthogonal to the wanted
    // eigenvector (alternating modes), which stalls the first round
    constexpr double phi = 0.6180339887498949;
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) {
        const double f = (i + 1) * phi;
        v[i] = 0.5 + (f - std::floor(f));
    }
    for (int round = 0; round < 3; ++round) {
        v = tridiag_solve_shifted(diag, offdiag, shift, v);
        normalize_max(v);
        if (eig_residual(v) < 1e-13) break;  // further rounds only on failure
    }
    if (eig_residual(v) > 1e-10) {
        throw SolverError(SolverError::Kind::NonConvergence,
                          "inverse iteration: residual did not converge");
    }
    double norm = 0.0;
    for (double t : v) norm += t * t;
    norm = std::sqrt(norm);
    for (double& t : v) t /= norm;
    return v;
}

} // namespace hs
