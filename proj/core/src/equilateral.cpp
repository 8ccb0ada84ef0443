#include "hs/equilateral.hpp"
#include "hs/errors.hpp"
#include "hs/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace hs {

namespace {

constexpr double kCenterThreshold = 1e-10;   // modulus below which a zero is "the center"
constexpr double kRayTolerance = 1e-8;       // admissible argument deviation from a ray
constexpr double kClusterRadius = 1e-6;      // near-zero cluster grouping radius

Complex omega() { return std::polar(1.0, 2.0 * std::numbers::pi / 3.0); }

double mu_of(double rs, int j) { return j * (j - 1.0 + 2.0 * rs); }

EquilateralMatrix build(double r1, double r2, double r3, int k) {
    if (k < 1) throw ValidationError("build_equilateral_matrix: k must be >= 1");
    if (!(r1 > 0.0 && r2 > 0.0 && r3 > 0.0)) {
        throw ValidationError("build_equilateral_matrix: exponents must be positive");
    }
    EquilateralMatrix m;
    m.k = k;
    m.order = k + 1;
    m.rho1 = r1;
    m.rho2 = r2;
    m.rho3 = r3;
    const double rs = r1 + r2 + r3;
    m.mu_k = mu_of(rs, k);
    m.equal_rho = (r1 == r2 && r2 == r3);
    const Complex w = omega();
    const Complex c1 = r1 + w * r2 + w * w * r3;
    const Complex c0 = r1 + w * w * r2 + w * r3;
    m.sub.resize(k);
    m.diag.assign(k + 1, Complex{0.0, 0.0});
    m.sup1.assign(k, Complex{0.0, 0.0});
    if (k >= 2) m.sup2.resize(k - 1);
    for (int j = 1; j <= k; ++j) m.sub[j - 1] = 1.0 - mu_of(rs, j - 1) / m.mu_k;
    if (!m.equal_rho) {
        for (int j = 0; j <= k; ++j) m.diag[j] = -2.0 * c1 * static_cast<double>(j) / m.mu_k;
        for (int j = 0; j < k; ++j) m.sup1[j] = -2.0 * c0 * (j + 1.0) / m.mu_k;
    }
    for (int j = 0; j + 2 <= k; ++j) m.sup2[j] = (j + 2.0) * (j + 1.0) / m.mu_k;
    return m;
}

double cabs_max(const Complex& a, const Complex& b) {
    return std::max(std::abs(a), std::abs(b));
}

} // namespace

EquilateralMatrix build_equilateral_matrix(double rho, int k) {
    return build(rho, rho, rho, k);
}

EquilateralMatrix build_equilateral_matrix(double rho1, double rho2, double rho3, int k) {
    return build(rho1, rho2, rho3, k);
}

double EquilateralCharPoly::value_relative_to_peak() const {
    if (peak == 0.0) return std::abs(value);
    return std::abs(value) / peak * std::exp2(static_cast<double>(exp2 - peak_exp2));
}

EquilateralCharPoly equilateral_char_poly(const EquilateralMatrix& m, Complex nu) {
    // leading principal minors D_r of (M - nu I), expansion along the last
    // column of each r x r block:
    //   D_r = (diag_{r-1} - nu) D_{r-1}
    //         - sup1_{r-2} sub_{r-2} D_{r-2}
    //         + sup2_{r-3} sub_{r-2} sub_{r-3} D_{r-3}
    // plus the nu-derivative of the same recurrence, on a shared 2^e scale.
    const int n = m.order;
    Complex d3{0.0, 0.0}, d2{0.0, 0.0}, d1{1.0, 0.0};   // D_{r-3}, D_{r-2}, D_{r-1}
    Complex p3{0.0, 0.0}, p2{0.0, 0.0}, p1{0.0, 0.0};   // derivatives
    long e = 0;
    double peak = 1.0;
    long peak_e = 0;
    for (int r = 1; r <= n; ++r) {
        const Complex head = m.diag[r - 1] - nu;
        Complex next = head * d1;
        Complex nextp = head * p1 - d1;
        if (r >= 2) {
            const Complex c2 = m.sup1[r - 2] * m.sub[r - 2];
            next -= c2 * d2;
            nextp -= c2 * p2;
        }
        if (r >= 3) {
            const double c3 = m.sup2[r - 3] * m.sub[r - 2] * m.sub[r - 3];
            next += c3 * d3;
            nextp += c3 * p3;
        }
        d3 = d2; d2 = d1; d1 = next;
        p3 = p2; p2 = p1; p1 = nextp;
        const double amax = std::max({std::abs(d1), std::abs(d2), std::abs(d3),
                                      std::abs(p1), std::abs(p2), std::abs(p3)});
        if (amax > 1e140 || (amax > 0.0 && amax < 1e-140)) {
            int ex;
            std::frexp(amax, &ex);
            const double f = std::ldexp(1.0, -ex);
            d1 *= f; d2 *= f; d3 *= f;
            p1 *= f; p2 *= f; p3 *= f;
            e += ex;
        }
        const double ad = std::abs(d1);
        if (ad > 0.0) {
            int xa, xb;
            std::frexp(ad, &xa);
            std::frexp(peak, &xb);
            if (e + xa > peak_e + xb) {
                peak = ad;
                peak_e = e;
            }
        }
    }
    EquilateralCharPoly out;
    out.value = d1;
    out.deriv = p1;
    out.exp2 = e;
    out.peak = peak;
    out.peak_exp2 = peak_e;
    return out;
}

std::vector<Complex> equilateral_charpoly_coefficients(const EquilateralMatrix& m) {
    // the same minor recurrence with full polynomial coefficients in nu
    using Poly = std::vector<Complex>;
    auto shrink = [](Poly& p) {
        while (p.size() > 1 && std::abs(p.back()) == 0.0) p.pop_back();
    };
    Poly d3, d2, d1{Complex{1.0, 0.0}};
    for (int r = 1; r <= m.order; ++r) {
        Poly next(d1.size() + 1, Complex{0.0, 0.0});
        for (std::size_t j = 0; j < d1.size(); ++j) {
            next[j] += m.diag[r - 1] * d1[j];   // diag * D
            next[j + 1] -= d1[j];               // -nu * D
        }
        if (r >= 2) {
            const Complex c2 = m.sup1[r - 2] * m.sub[r - 2];
            for (std::size_t j = 0; j < d2.size(); ++j) next[j] -= c2 * d2[j];
        }
        if (r >= 3) {
            const double c3 = m.sup2[r - 3] * m.sub[r - 2] * m.sub[r - 3];
            for (std::size_t j = 0; j < d3.size(); ++j) next[j] += c3 * d3[j];
        }
        shrink(next);
        d3 = std::move(d2);
        d2 = std::move(d1);
        d1 = std::move(next);
    }
    return d1;
}

std::vector<Complex> durand_kerner(const std::vector<Complex>& coeffs) {
    const int n = static_cast<int>(coeffs.size()) - 1;
    if (n < 1) return {};
    const Complex lead = coeffs.back();
    std::vector<Complex> c(coeffs);
    for (auto& v : c) v /= lead;
    auto horner = [&](Complex z) {
        Complex s{0.0, 0.0};
        for (int j = n; j >= 0; --j) s = s * z + c[j];
        return s;
    };
    std::vector<Complex> z(n);
    const Complex seed{0.4, 0.9};
    Complex acc{1.0, 0.0};
    for (int i = 0; i < n; ++i) {
        acc *= seed;
        z[i] = acc;
    }
    for (int sweep = 0; sweep < 600; ++sweep) {
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            Complex den{1.0, 0.0};
            for (int j = 0; j < n; ++j) {
                if (j != i) den *= (z[i] - z[j]);
            }
            if (std::abs(den) == 0.0) {
                z[i] += Complex{1e-8, 2e-8};
                continue;
            }
            const Complex delta = horner(z[i]) / den;
            z[i] -= delta;
            worst = std::max(worst, std::abs(delta));
        }
        if (worst < 1e-14) break;
    }
    return z;
}

namespace {

// collapse clusters of roots whose pairwise distance is below radius; the
// centroid of a multiple-root cluster is accurate to roughly eps even though
// the members are only sqrt(eps) -- standard multiple-root treatment
void collapse_clusters(std::vector<Complex>& z, double radius) {
    const int n = static_cast<int>(z.size());
    std::vector<int> group(n, -1);
    int ng = 0;
    for (int i = 0; i < n; ++i) {
        if (group[i] >= 0) continue;
        group[i] = ng;
        for (int j = i + 1; j < n; ++j) {
            if (group[j] < 0 && std::abs(z[i] - z[j]) < radius) group[j] = ng;
        }
        ++ng;
    }
    for (int g = 0; g < ng; ++g) {
        Complex sum{0.0, 0.0};
        int count = 0;
        for (int i = 0; i < n; ++i) {
            if (group[i] == g) {
                sum += z[i];
                ++count;
            }
        }
        if (count >= 2) {
            const Complex centroid = sum / static_cast<double>(count);
            for (int i = 0; i < n; ++i) {
                if (group[i] == g) z[i] = centroid;
            }
        }
    }
}

} // namespace

std::vector<Complex> equilateral_eigenvalues(const EquilateralMatrix& m) {
    const int n = m.order;
    std::vector<Complex> z(n);
    // spiral start inside the triangle; deliberately breaks the 3-fold symmetry
    for (int i = 0; i < n; ++i) {
        const double r = 0.25 + 0.55 * (i + 1.0) / n;
        const double th = 2.0 * std::numbers::pi * i / n + 0.5;
        z[i] = std::polar(r, th);
    }
    const int max_sweeps = 400;
    bool converged = false;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        converged = true;
        for (int i = 0; i < n; ++i) {
            const EquilateralCharPoly cp = equilateral_char_poly(m, z[i]);
            if (std::abs(cp.deriv) == 0.0) {
                z[i] += Complex{3e-9, 7e-9};
                converged = false;
                continue;
            }
            const Complex w = cp.value / cp.deriv;
            Complex s{0.0, 0.0};
            for (int j = 0; j < n; ++j) {
                if (j != i) s += 1.0 / (z[i] - z[j]);
            }
            const Complex denom = 1.0 - w * s;
            const Complex delta = (std::abs(denom) == 0.0) ? w : w / denom;
            z[i] -= delta;
            if (std::abs(delta) > 1e-13 * std::max(1.0, std::abs(z[i]))) converged = false;
        }
    }
    if (!converged) {
        throw SolverError(SolverError::Kind::NonConvergence,
                          "equilateral eigenvalues: Aberth did not converge");
    }
    for (int i = 0; i < n; ++i) {  // Newton polish
        for (int it = 0; it < 3; ++it) {
            const EquilateralCharPoly cp = equilateral_char_poly(m, z[i]);
            if (std::abs(cp.deriv) == 0.0) break;
            z[i] -= cp.value / cp.deriv;
        }
    }
    collapse_clusters(z, kClusterRadius);
    std::sort(z.begin(), z.end(), [](const Complex& a, const Complex& b) {
        const double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) return ma < mb;
        return std::arg(a) < std::arg(b);
    });
    return z;
}

double equilateral_ode_residual(double rho1, double rho2, double rho3, int k,
                                Complex nu, const std::vector<Complex>& roots) {
    const double rs = rho1 + rho2 + rho3;
    const double muk = mu_of(rs, k);
    const Complex w = omega();
    const Complex a1{1.0, 0.0};
    const Complex a2 = w;
    const Complex a3 = w * w;
    auto evalB = [&](Complex x) {
        return 2.0 * (rho1 * (x - a2) * (x - a3) + rho2 * (x - a1) * (x - a3) +
                      rho3 * (x - a1) * (x - a2));
    };
    // grid on the incircle (radius 1/2 about the incenter 0)
    std::vector<Complex> grid;
    grid.push_back(Complex{0.07, 0.02});
    for (double r : {0.15, 0.30, 0.45}) {
        for (int t = 0; t < 24; ++t) {
            grid.push_back(std::polar(r, 2.0 * std::numbers::pi * (t + 0.35) / 24.0));
        }
    }
    double num = 0.0, den = 0.0;
    double max_log = -std::numeric_limits<double>::infinity();
    std::vector<double> logs(grid.size());
    std::vector<Complex> t1(grid.size()), t2(grid.size());
    std::vector<bool> usable(grid.size(), true);
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        const Complex x = grid[gi];
        double ls = 0.0;
        Complex s1{0.0, 0.0}, s2{0.0, 0.0};
        for (const Complex& root : roots) {
            const Complex dd = x - root;
            const double ad = std::abs(dd);
            if (ad < 1e-13) { usable[gi] = false; break; }
            ls += std::log(ad);
            const Complex inv = 1.0 / dd;
            s1 += inv;
            s2 += inv * inv;
        }
        if (!usable[gi]) continue;
        logs[gi] = ls;
        t1[gi] = s1;
        t2[gi] = s1 * s1 - s2;
        max_log = std::max(max_log, ls);
    }
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        if (!usable[gi]) continue;
        const Complex x = grid[gi];
        const double scale = std::exp(logs[gi] - max_log);
        const Complex A = x * x * x - 1.0;
        const Complex tA = A * t2[gi];
        const Complex tB = evalB(x) * t1[gi];
        const Complex tR = muk * (x - nu);
        num = std::max(num, std::abs(tA + tB - tR) * scale);
        den = std::max(den, (std::abs(tA) + std::abs(tB) + std::abs(tR)) * scale);
    }
    return den > 0.0 ? num / den : num;
}

namespace {

// dense complex inverse iteration for the Stieltjes coefficient vector
std::vector<Complex> equilateral_eigenvector(const EquilateralMatrix& m, Complex nu) {
    const int n = m.order;
    std::vector<Complex> a(static_cast<std::size_t>(n) * n, Complex{0.0, 0.0});
    for (int j = 0; j < n; ++j) {
        a[static_cast<std::size_t>(j) * n + j] = m.diag[j] - nu;
        if (j >= 1) a[static_cast<std::size_t>(j) * n + j - 1] = m.sub[j - 1];
        if (j + 1 < n) a[static_cast<std::size_t>(j) * n + j + 1] = m.sup1[j];
        if (j + 2 < n) a[static_cast<std::size_t>(j) * n + j + 2] = m.sup2[j];
    }
    // LU with partial pivoting; zero pivots replaced by eps * scale so the
    // solve stays finite on the (deliberately) near-singular shifted matrix
    std::vector<int> piv(n);
    double scale = 0.0;
    for (const Complex& v : a) scale = std::max(scale, std::abs(v));
    const double tiny = std::max(scale, 1e-30) * 1e-16 * n;
    for (int c = 0; c < n; ++c) {
        int best = c;
        for (int r = c + 1; r < n; ++r) {
            if (std::abs(a[static_cast<std::size_t>(r) * n + c]) >
                std::abs(a[static_cast<std::size_t>(best) * n + c])) best = r;
        }
        piv[c] = best;
        if (best != c) {
            for (int j = 0; j < n; ++j) {
                std::swap(a[static_cast<std::size_t>(c) * n + j],
                          a[static_cast<std::size_t>(best) * n + j]);
            }
        }
        Complex p = a[static_cast<std::size_t>(c) * n + c];
        if (std::abs(p) == 0.0) {
            p = Complex{tiny, 0.0};
            a[static_cast<std::size_t>(c) * n + c] = p;
        }
        for (int r = c + 1; r < n; ++r) {
            const Complex f = a[static_cast<std::size_t>(r) * n + c] / p;
            a[static_cast<std::size_t>(r) * n + c] = f;
            for (int j = c + 1; j < n; ++j) {
                a[static_cast<std::size_t>(r) * n + j] -= f * a[static_cast<std::size_t>(c) * n + j];
            }
        }
    }
    auto solve = [&](std::vector<Complex> b) {
        for (int c = 0; c < n; ++c) {
            if (piv[c] != c) std::swap(b[c], b[piv[c]]);
            for (int r = c + 1; r < n; ++r) b[r] -= a[static_cast<std::size_t>(r) * n + c] * b[c];
        }
        for (int r = n - 1; r >= 0; --r) {
            for (int j = r + 1; j < n; ++j) b[r] -= a[static_cast<std::size_t>(r) * n + j] * b[j];
            b[r] /= a[static_cast<std::size_t>(r) * n + r];
        }
        return b;
    };
    std::vector<Complex> v(n);
    for (int i = 0; i < n; ++i) {
        const double f = (i + 1) * 0.6180339887498949;
        v[i] = Complex{0.5 + (f - std::floor(f)), 0.25 + 0.5 * (f - std::floor(f))};
    }
    for (int round = 0; round < 2; ++round) {
        v = solve(std::move(v));
        double m = 0.0;
        for (const Complex& t : v) m = std::max(m, std::abs(t));
        if (!(m > 0.0) || !std::isfinite(m)) {
            throw SolverError(SolverError::Kind::NonConvergence,
                              "equilateral eigenvector: inverse iteration collapsed");
        }
        for (Complex& t : v) t /= m;
    }
    if (std::abs(v.back()) == 0.0) {
        throw SolverError(SolverError::Kind::NonConvergence,
                          "equilateral eigenvector: leading coefficient vanished");
    }
    const Complex lead = v.back();
    for (Complex& t : v) t /= lead;
    return v;
}

EquilateralSpectrum classify_and_certify(const EquilateralMatrix& m,
                                         std::vector<Complex> zeros) {
    EquilateralSpectrum spec;
    spec.k = m.k;
    spec.rho = m.rho1;
    spec.zeros = std::move(zeros);

    // ray classification
    std::vector<double> ray_mods[3];
    int center_count = 0;
    for (const Complex& z : spec.zeros) {
        const double mod = std::abs(z);
        if (mod < kCenterThreshold) {
            ++center_count;
            continue;
        }
        const double arg = std::arg(z);
        int best_ray = -1;
        double best_dev = std::numeric_limits<double>::infinity();
        for (int r = 0; r < 3; ++r) {
            const double target = 2.0 * std::numbers::pi * (r - 1) / 3.0;  // -2pi/3, 0, 2pi/3
            double dev = std::abs(arg - target);
            dev = std::min(dev, std::abs(dev - 2.0 * std::numbers::pi));
            if (dev < best_dev) {
                best_dev = dev;
                best_ray = r;
            }
        }
        if (best_dev > kRayTolerance) {
            std::ostringstream os;
            os << "equilateral classification: zero " << z.real() << (z.imag() < 0 ? "" : "+")
               << z.imag() << "i is " << best_dev
               << " rad off every incenter-vertex ray (tolerance " << kRayTolerance << ")";
            throw ClassificationFailure(os.str());
        }
        ray_mods[best_ray].push_back(mod);
    }
    for (auto& v : ray_mods) std::sort(v.begin(), v.end());
    if (ray_mods[0].size() != ray_mods[1].size() || ray_mods[1].size() != ray_mods[2].size()) {
        throw ClassificationFailure("equilateral classification: rays carry unequal zero counts");
    }
    for (std::size_t i = 0; i < ray_mods[0].size(); ++i) {
        const double spread = std::max({ray_mods[0][i], ray_mods[1][i], ray_mods[2][i]}) -
                              std::min({ray_mods[0][i], ray_mods[1][i], ray_mods[2][i]});
        if (spread > 1e-9) {
            throw ClassificationFailure("equilateral classification: ray moduli do not "
                                        "match across the three rays");
        }
        spec.ray_moduli.push_back((ray_mods[0][i] + ray_mods[1][i] + ray_mods[2][i]) / 3.0);
    }
    spec.center_zero_present = center_count > 0;
    spec.center_multiplicity = center_count;

    // residual certification per distinct eigenvalue; duplicates share the pair
    spec.residuals.assign(spec.zeros.size(), 0.0);
    for (std::size_t i = 0; i < spec.zeros.size(); ++i) {
        if (i > 0 && spec.zeros[i] == spec.zeros[i - 1]) {
            spec.residuals[i] = spec.residuals[i - 1];
            continue;
        }
        const std::vector<Complex> coeffs = equilateral_eigenvector(m, spec.zeros[i]);
        const std::vector<Complex> sroots = durand_kerner(coeffs);
        spec.residuals[i] = equilateral_ode_residual(m.rho1, m.rho2, m.rho3, m.k,
                                                     spec.zeros[i], sroots);
    }
    return spec;
}

} // namespace

EquilateralSpectrum equilateral_zeros(double rho, int k) {
    const EquilateralMatrix m = build_equilateral_matrix(rho, k);
    return classify_and_certify(m, equilateral_eigenvalues(m));
}

EquilateralSpectrum equilateral_zeros(double rho1, double rho2, double rho3, int k) {
    const EquilateralMatrix m = build_equilateral_matrix(rho1, rho2, rho3, k);
    return classify_and_certify(m, equilateral_eigenvalues(m));
}

InterlaceVerdict check_radial_conjecture(double rho, int k) {
    if (k < 1) throw ValidationError("check_radial_conjecture: k must be >= 1");
    const EquilateralSpectrum inner = equilateral_zeros(rho, 3 * k - 1);
    const EquilateralSpectrum outer = equilateral_zeros(rho, 3 * k + 2);
    return check_interlacing(inner.ray_moduli, outer.ray_moduli, 0.0, 1.0);
}

} // namespace hs
