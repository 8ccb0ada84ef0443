#include "hs/eigen.hpp"
#include "hs/errors.hpp"
#include "hs/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace hs {

namespace {

constexpr int kClassicCoefficientOrder = 20;  // inverse-iteration coefficients hold here

double sq(double x) { return x * x; }

// Dense symmetric positive definite solve (Cholesky), used by the
// electrostatic Newton step.  n stays modest (the Stieltjes degree).
bool cholesky_solve(std::vector<double>& a, int n, std::vector<double>& b) {
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = a[i * n + j];
            for (int p = 0; p < j; ++p) s -= a[i * n + p] * a[j * n + p];
            if (i == j) {
                if (!(s > 0.0)) return false;
                a[i * n + i] = std::sqrt(s);
            } else {
                a[i * n + j] = s / a[j * n + j];
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        double s = b[i];
        for (int p = 0; p < i; ++p) s -= a[i * n + p] * b[p];
        b[i] = s / a[i * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int p = i + 1; p < n; ++p) s -= a[p * n + i] * b[p];
        b[i] = s / a[i * n + i];
    }
    return true;
}

struct Frame {
    double a1, a2, a3;       // original singular points
    double r1, r2, r3;
};

double eval_A(const Frame& f, double x) {
    return (x - f.a1) * (x - f.a2) * (x - f.a3);
}
double eval_B(const Frame& f, double x) {
    return 2.0 * (f.r1 * (x - f.a2) * (x - f.a3) +
                  f.r2 * (x - f.a1) * (x - f.a3) +
                  f.r3 * (x - f.a1) * (x - f.a2));
}

} // namespace

std::vector<double> expand_monic_from_roots(const std::vector<double>& roots) {
    // ascending coefficients; one linear factor at a time in the given
    // (sorted) order, fused multiply for the update c[j-1] - r*c[j].
    std::vector<double> c{1.0};
    std::vector<double> next;
    for (double r : roots) {
        next.assign(c.size() + 1, 0.0);
        next[0] = -r * c[0];
        for (std::size_t j = 1; j < c.size(); ++j) {
            next[j] = std::fma(-r, c[j], c[j - 1]);
        }
        next[c.size()] = c.back();
        c.swap(next);
    }
    return c;
}

// Monic original-frame coefficients of S(x) = S_norm((x - shift)/scale),
// i.e. scale^k * S_norm composed with the affine map (Taylor shift).
std::vector<double> poly_from_normalized(const std::vector<double>& cn,
                                         double scale, double shift) {
    const int deg = static_cast<int>(cn.size()) - 1;
    std::vector<double> b(cn.size());
    double pw = 1.0;
    for (int j = deg; j >= 0; --j) {
        b[j] = cn[j] * pw;   // scale^(deg-j)
        pw *= scale;
    }
    for (int i = 0; i <= deg; ++i) {          // substitute x -> x - shift
        for (int j = deg - 1; j >= i; --j) {
            b[j] = std::fma(-shift, b[j + 1], b[j]);
        }
    }
    return b;
}

HornerEval horner_eval2(const std::vector<double>& coeffs, double x) {
    double s = 0.0, d1 = 0.0, d2 = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        d2 = d2 * x + 2.0 * d1;
        d1 = d1 * x + s;
        s = s * x + *it;
    }
    return HornerEval{s, d1, d2};
}

CharPolyValue char_poly_oracle(const TridiagonalSpectralMatrix& m, double nu) {
    // leading principal minors: P_0 = 1, P_1 = d_0 - nu,
    // P_{i+1} = (d_i - nu) P_i - sub_{i-1} super_{i-1} P_{i-1};
    // p_prev and p are kept at a shared power-of-two scale 2^e.
    double p_prev = 1.0, p = m.diag[0] - nu;
    long e = 0;
    double peak = std::max(std::abs(p_prev), std::abs(p));
    long peak_e = 0;
    auto heavier = [](double ma, long ea, double mb, long eb) {
        if (ma == 0.0) return false;
        if (mb == 0.0) return true;
        int xa, xb;
        std::frexp(ma, &xa);
        std::frexp(mb, &xb);
        return ea + xa > eb + xb;
    };
    for (int i = 1; i <= m.k; ++i) {
        const double next = (m.diag[i] - nu) * p - m.sub[i - 1] * m.super[i - 1] * p_prev;
        p_prev = p;
        p = next;
        const double amax = std::max(std::abs(p), std::abs(p_prev));
        if (amax > 1e150 || (amax > 0.0 && amax < 1e-150)) {
            int ex;
            std::frexp(amax, &ex);
            p = std::ldexp(p, -ex);
            p_prev = std::ldexp(p_prev, -ex);
            e += ex;
        }
        if (heavier(std::abs(p), e, peak, peak_e)) {
            peak = std::abs(p);
            peak_e = e;
        }
    }
    CharPolyValue out;
    out.mantissa = p;
    out.exp2 = e;
    out.peak_mantissa = peak;
    out.peak_exp2 = peak_e;
    return out;
}

double CharPolyValue::relative_to_peak() const {
    if (peak_mantissa == 0.0) return std::abs(mantissa);
    return std::abs(mantissa) / peak_mantissa *
           std::exp2(static_cast<double>(exp2 - peak_exp2));
}

bool char_poly_sign_change(const TridiagonalSpectralMatrix& m, double nu, double delta) {
    const int sl = char_poly_oracle(m, nu - delta).sign();
    const int sr = char_poly_oracle(m, nu + delta).sign();
    return sl != 0 && sr != 0 && sl != sr;
}

std::vector<double> stieltjes_roots_electrostatic(const NormalizedProblem& np,
                                                  int k, int eigenindex) {
    if (eigenindex < 0 || eigenindex > k) {
        throw ValidationError("stieltjes_roots_electrostatic: eigenindex out of range");
    }
    const int n = k;
    if (n == 0) return {};
    const double pts[3] = {-1.0, 0.0, np.alpha};
    const double rho[3] = {np.rho1, np.rho2, np.rho3};
    const int p_left = eigenindex;      // roots in (-1, 0)
    const int q_right = k - eigenindex; // roots in (0, alpha)

    std::vector<double> z(n), lob(n), hib(n);
    for (int i = 0; i < p_left; ++i) {
        const double t = std::cos((2.0 * i + 1.0) * std::numbers::pi / (2.0 * p_left));
        z[i] = -0.5 + 0.4995 * t;
        lob[i] = -1.0;
        hib[i] = 0.0;
    }
    for (int i = 0; i < q_right; ++i) {
        const double t = std::cos((2.0 * i + 1.0) * std::numbers::pi / (2.0 * q_right));
        z[p_left + i] = 0.5 * np.alpha + 0.4995 * np.alpha * t;
        lob[p_left + i] = 0.0;
        hib[p_left + i] = np.alpha;
    }
    std::sort(z.begin(), z.end());

    std::vector<double> g(n), step(n), jac;
    auto gradient = [&](const std::vector<double>& zz, std::vector<double>& out) {
        double norm = 0.0;
        for (int r = 0; r < n; ++r) {
            KahanSum s;
            for (int j = 0; j < n; ++j) {
                if (j != r) s.add(1.0 / (zz[r] - zz[j]));
            }
            for (int i = 0; i < 3; ++i) s.add(rho[i] / (zz[r] - pts[i]));
            out[r] = s.value();
            norm += out[r] * out[r];
        }
        return std::sqrt(norm);
    };

    double gnorm = gradient(z, g);
    const int max_iter = 400;
    for (int iter = 0; iter < max_iter; ++iter) {
        // -J is symmetric positive definite at interior configurations
        jac.assign(static_cast<std::size_t>(n) * n, 0.0);
        for (int r = 0; r < n; ++r) {
            double dsum = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == r) continue;
                const double w = 1.0 / sq(z[r] - z[j]);
                jac[static_cast<std::size_t>(r) * n + j] = -w;  // -J entries
                dsum += w;
            }
            for (int i = 0; i < 3; ++i) dsum += rho[i] / sq(z[r] - pts[i]);
            jac[static_cast<std::size_t>(r) * n + r] = dsum;
        }
        step = g;
        if (!cholesky_solve(jac, n, step)) {
            throw SolverError(SolverError::Kind::NonConvergence,
                              "electrostatic solve: Newton system not positive definite");
        }
        // step now solves (-J) step = g, i.e. z + step is the Newton update
        double lambda = 1.0;
        std::vector<double> zn(n), gn(n);
        bool moved = false;
        for (int back = 0; back < 70; ++back) {
            bool ok = true;
            for (int r = 0; r < n; ++r) {
                zn[r] = z[r] + lambda * step[r];
                if (!(zn[r] > lob[r] && zn[r] < hib[r])) { ok = false; break; }
                if (r > 0 && !(zn[r] > zn[r - 1])) { ok = false; break; }
            }
            if (ok) {
                const double gnn = gradient(zn, gn);
                if (gnn < gnorm || lambda < 1e-9) {
                    z.swap(zn);
                    g.swap(gn);
                    gnorm = gnn;
                    moved = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if (!moved) {
            throw SolverError(SolverError::Kind::NonConvergence,
                              "electrostatic solve: line search failed");
        }
        double stepmax = 0.0;
        for (int r = 0; r < n; ++r) stepmax = std::max(stepmax, std::abs(lambda * step[r]));
        if (stepmax < 1e-15 * std::max(1.0, np.alpha)) {
            return z;
        }
    }
    throw SolverError(SolverError::Kind::NonConvergence,
                      "electrostatic solve: no convergence within iteration budget");
}

double nu_from_roots(const NormalizedProblem& np, int k,
                     const std::vector<double>& roots) {
    // x^k coefficient identity in A S'' + B S' = mu_k (x - nu) S:
    //   mu_k nu = e1 (mu_{k-1} - mu_k) - (1-alpha) k (k-1) - 2 tau k
    const double rs = np.rho_sum();
    const double tau = np.rho2 + np.rho3 - np.alpha * (np.rho1 + np.rho2);
    const double muk = mu(k, rs);
    KahanSum e1;
    for (double r : roots) e1.add(r);
    return (e1.value() * (mu(k - 1, rs) - muk) -
            (1.0 - np.alpha) * k * (k - 1.0) - 2.0 * tau * k) / muk;
}

std::vector<double> stieltjes_from_inverse_iteration(
    const TridiagonalSpectralMatrix& m, const SymmetrizedMatrix& s, double nu_normalized) {
    std::vector<double> y = inverse_iteration(s.diag, s.offdiag, nu_normalized);
    const int n = m.order;
    // a_j = d_j y_j, then monic (divide by a_k); logs avoid intermediate range issues
    std::vector<double> log_mag(n);
    std::vector<int> sign(n);
    for (int j = 0; j < n; ++j) {
        sign[j] = (y[j] > 0.0) - (y[j] < 0.0);
        log_mag[j] = (y[j] == 0.0) ? -std::numeric_limits<double>::infinity()
                                   : s.log_similarity[j] + std::log(std::abs(y[j]));
    }
    if (sign[n - 1] == 0) {
        throw SolverError(SolverError::Kind::NonConvergence,
                          "inverse iteration: leading Stieltjes coefficient vanished");
    }
    std::vector<double> a(n);
    for (int j = 0; j < n; ++j) {
        a[j] = sign[j] * sign[n - 1] * std::exp(log_mag[j] - log_mag[n - 1]);
    }
    return a;
}

std::vector<double> roots_from_coefficients(const std::vector<double>& coeffs,
                                            double lo, double hi) {
    const int deg = static_cast<int>(coeffs.size()) - 1;
    std::vector<double> roots;
    if (deg < 1) return roots;
    const int scan = std::max(64, 48 * deg);
    double xp = lo;
    double fp = horner_eval2(coeffs, xp).value;
    for (int i = 1; i <= scan; ++i) {
        const double x = lo + (hi - lo) * i / scan;
        const double f = horner_eval2(coeffs, x).value;
        if (fp == 0.0) {
            roots.push_back(xp);
        } else if (f != 0.0 && ((fp < 0.0) != (f < 0.0))) {
            double a = xp, b = x, fa = fp;
            for (int it = 0; it < 90; ++it) {
                const double mid = 0.5 * (a + b);
                if (mid == a || mid == b) break;
                const double fm = horner_eval2(coeffs, mid).value;
                if (fm == 0.0) { a = b = mid; break; }
                if ((fa < 0.0) != (fm < 0.0)) {
                    b = mid;
                } else {
                    a = mid;
                    fa = fm;
                }
            }
            double r = 0.5 * (a + b);
            for (int it = 0; it < 4; ++it) {  // Newton polish
                const HornerEval h = horner_eval2(coeffs, r);
                if (h.d1 == 0.0) break;
                const double rn = r - h.value / h.d1;
                if (!(rn > lo && rn < hi)) break;
                r = rn;
            }
            roots.push_back(r);
        }
        xp = x;
        fp = f;
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

double ode_residual(const LameProblem& problem, const StieltjesPolynomial& s,
                    double nu, ResidualRoute route) {
    if (route == ResidualRoute::Auto) {
        route = s.roots.empty() ? ResidualRoute::Coefficients : ResidualRoute::Roots;
    }
    const Frame f{problem.alpha1(), problem.alpha2(), problem.alpha3(),
                  problem.rho1(), problem.rho2(), problem.rho3()};
    const int k = s.degree;
    if (k < 1) throw ValidationError("ode_residual: degree must be >= 1");
    const double muk = mu(k, problem.rho_sum());
    const std::vector<double> grid = chebyshev_grid(200, problem.alpha1(), problem.alpha3());

    if (route == ResidualRoute::Coefficients) {
        if (!s.has_coefficients()) {
            throw ValidationError("ode_residual: coefficient route requested but none stored");
        }
        if (std::abs(s.coefficients.back() - 1.0) > 1e-9) {
            throw ValidationError("ode_residual: polynomial must be monic");
        }
        double num = 0.0, den = 0.0;
        for (double x : grid) {
            const HornerEval h = horner_eval2(s.coefficients, x);
            const double tA = eval_A(f, x) * h.d2;
            const double tB = eval_B(f, x) * h.d1;
            const double tR = muk * (x - nu) * h.value;
            num = std::max(num, std::abs(tA + tB - tR));
            den = std::max(den, std::abs(tA) + std::abs(tB) + std::abs(tR));
        }
        return den > 0.0 ? num / den : num;
    }

    if (static_cast<int>(s.roots.size()) != k) {
        throw ValidationError("ode_residual: root count does not match degree");
    }
    // product form: S = prod (x - z_i); residual and its normalizer share the
    // factor |S|, carried as exp(log|S| - max log|S|) to stay in range.
    const double guard = 1e3 * std::numeric_limits<double>::epsilon() * problem.span();
    std::vector<double> logS(grid.size(), 0.0), t1(grid.size()), t2(grid.size());
    std::vector<bool> usable(grid.size(), true);
    double max_log = -std::numeric_limits<double>::infinity();
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        const double x = grid[gi];
        KahanSum ls, s1, s2;
        for (double z : s.roots) {
            const double d = x - z;
            if (std::abs(d) < guard) { usable[gi] = false; break; }
            ls.add(std::log(std::abs(d)));
            s1.add(1.0 / d);
            s2.add(1.0 / (d * d));
        }
        if (!usable[gi]) continue;
        logS[gi] = ls.value();
        t1[gi] = s1.value();
        t2[gi] = t1[gi] * t1[gi] - s2.value();
        max_log = std::max(max_log, logS[gi]);
    }
    double num = 0.0, den = 0.0;
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        if (!usable[gi]) continue;
        const double x = grid[gi];
        const double w = std::exp(logS[gi] - max_log);
        const double tA = eval_A(f, x) * t2[gi];
        const double tB = eval_B(f, x) * t1[gi];
        const double tR = muk * (x - nu);
        num = std::max(num, std::abs(tA + tB - tR) * w);
        den = std::max(den, (std::abs(tA) + std::abs(tB) + std::abs(tR)) * w);
    }
    return den > 0.0 ? num / den : num;
}

VanVleckSpectrum van_vleck_zeros(const LameProblem& problem, int k,
                                 const SolveOptions& options) {
    if (k < 1) throw ValidationError("van_vleck_zeros: k must be >= 1");
    const NormalizedProblem np = normalize(problem);
    const TridiagonalSpectralMatrix m = build_matrix(np, k);
    const SymmetrizedMatrix sym = symmetrize(m);

    const double span_norm = np.span();
    const double tol_norm = options.tol_factor * problem.span() / np.scale;
    auto brackets = tridiag_eigenvalues_bisect(sym.diag, sym.offdiag, tol_norm);
    if (static_cast<std::int64_t>(brackets.size()) != heine_count(k)) {
        throw SolverError(SolverError::Kind::NonConvergence,
                          "van_vleck_zeros: eigenvalue count mismatch");
    }
    const double degen = 1e-11 * span_norm;
    for (std::size_t i = 0; i + 1 < brackets.size(); ++i) {
        if (brackets[i + 1].value - brackets[i].value < degen) {
            std::ostringstream os;
            os << "van_vleck_zeros: eigenvalues " << i << " and " << i + 1
               << " closer than 1e-11 * span -- degenerate spectrum";
            throw SolverError(SolverError::Kind::DegenerateSpectrum, os.str());
        }
    }

    VanVleckSpectrum out;
    out.k = k;
    out.brackets = brackets;
    out.zeros_normalized.resize(brackets.size());
    out.zeros.resize(brackets.size());
    for (std::size_t i = 0; i < brackets.size(); ++i) {
        out.zeros_normalized[i] = brackets[i].value;
        out.zeros[i] = denormalize_nu(brackets[i].value, np.scale, np.shift);
    }

    if (!options.with_eigenvectors) return out;
    if (k > options.max_eigenvector_order) {
        throw ValidationError(
            "van_vleck_zeros: eigenvector path limited to k <= max_eigenvector_order; "
            "request zeros-only for larger orders");
    }

    out.stieltjes.resize(k + 1);
    out.residuals.assign(k + 1, 0.0);
    const double nu_check_tol = std::max(1e-10 * span_norm, 64.0 * tol_norm);
    parallel_for(k + 1, [&](std::int64_t i) {
        const double nu_n = brackets[i].value;
        std::vector<double> roots_n = stieltjes_roots_electrostatic(np, k, static_cast<int>(i));
        const double nu_electro = nu_from_roots(np, k, roots_n);
        if (std::abs(nu_electro - nu_n) > nu_check_tol) {
            std::ostringstream os;
            os << "van_vleck_zeros: electrostatic and bisection eigenvalues disagree at index "
               << i << " (" << nu_electro << " vs " << nu_n << ")";
            throw SolverError(SolverError::Kind::Internal, os.str());
        }

        StieltjesPolynomial sp;
        sp.degree = k;
        sp.associated_nu = out.zeros[i];
        sp.roots.resize(k);
        for (int j = 0; j < k; ++j) {
            sp.roots[j] = denormalize_nu(roots_n[j], np.scale, np.shift);
        }
        if (k <= kClassicCoefficientOrder) {
            // classic route: symmetrized eigenvector, unscaled by the
            // similarity, monic, mapped back to original coordinates
            const std::vector<double> cn = stieltjes_from_inverse_iteration(m, sym, nu_n);
            sp.coefficients = poly_from_normalized(cn, np.scale, np.shift);
        } else {
            std::vector<double> c = expand_monic_from_roots(sp.roots);
            bool finite = true;
            for (double v : c) {
                if (!std::isfinite(v)) { finite = false; break; }
            }
            if (finite) sp.coefficients = std::move(c);
        }
        out.residuals[i] = ode_residual(problem, sp, sp.associated_nu, ResidualRoute::Roots);
        out.stieltjes[i] = std::move(sp);
    });
    return out;
}

} // namespace hs
