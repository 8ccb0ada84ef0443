#include "hs/spectral.hpp"
#include "hs/eigen.hpp"
#include "hs/errors.hpp"
#include "hs/matrix.hpp"
#include "hs/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace hs {

std::vector<double> build_spectral_poly(const std::vector<double>& zeros) {
    for (std::size_t i = 0; i + 1 < zeros.size(); ++i) {
        if (!(zeros[i] < zeros[i + 1])) {
            throw ValidationError("build_spectral_poly: zeros must be strictly sorted");
        }
    }
    return expand_monic_from_roots(zeros);
}

std::pair<double, double> zero_power_sums(const LameProblem& problem, int k) {
    const NormalizedProblem np = normalize(problem);
    const TridiagonalSpectralMatrix m = build_matrix(np, k);
    const double t1 = m.trace();
    const double t2 = m.trace_of_square();
    const double count = k + 1.0;
    const double s1 = np.scale * t1 + np.shift * count;
    const double s2 = np.scale * np.scale * t2 + 2.0 * np.scale * np.shift * t1 +
                      np.shift * np.shift * count;
    return {s1, s2};
}

double recurrence_a(const LameProblem& problem, int n) {
    // order-0 zero sums are undefined (mu_0 = 0 collapses the order-0 Van
    // Vleck polynomial), so the trace formulas start at n = 3
    if (n < 3) throw ValidationError("recurrence_a: n must be >= 3");
    return zero_power_sums(problem, n - 1).first - zero_power_sums(problem, n - 2).first;
}

double recurrence_b(const LameProblem& problem, int n) {
    if (n < 3) throw ValidationError("recurrence_b: n must be >= 3");
    const auto hi = zero_power_sums(problem, n - 1);
    const auto lo = zero_power_sums(problem, n - 2);
    const double a_n = hi.first - lo.first;
    return -0.5 * a_n * a_n + 0.5 * (hi.second - lo.second);
}

double recurrence_a_limit(const LameProblem& p) {
    return (p.alpha1() + p.alpha2() + p.alpha3()) / 3.0;
}

double recurrence_b_limit(const LameProblem& p) {
    const double s2 = p.alpha1() * p.alpha1() + p.alpha2() * p.alpha2() + p.alpha3() * p.alpha3();
    const double cross = p.alpha1() * p.alpha2() + p.alpha2() * p.alpha3() + p.alpha1() * p.alpha3();
    return (2.0 / 45.0) * (s2 - cross);
}

double trace1_slope(const LameProblem& p) {
    return recurrence_a_limit(p);
}

double trace2_slope(const LameProblem& p) {
    const double s2 = p.alpha1() * p.alpha1() + p.alpha2() * p.alpha2() + p.alpha3() * p.alpha3();
    const double cross = p.alpha1() * p.alpha2() + p.alpha2() * p.alpha3() + p.alpha1() * p.alpha3();
    return s2 / 5.0 + (2.0 / 15.0) * cross;
}

namespace {

// small dense least squares via normal equations (columns few, well scaled)
std::vector<double> least_squares(const std::vector<std::vector<double>>& cols,
                                  const std::vector<double>& rhs) {
    const int m = static_cast<int>(cols.size());
    std::vector<double> ata(static_cast<std::size_t>(m) * m, 0.0), atb(m, 0.0);
    const std::size_t n = rhs.size();
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = 0.0;
            for (std::size_t r = 0; r < n; ++r) s += cols[i][r] * cols[j][r];
            ata[static_cast<std::size_t>(i) * m + j] = s;
            ata[static_cast<std::size_t>(j) * m + i] = s;
        }
        double s = 0.0;
        for (std::size_t r = 0; r < n; ++r) s += cols[i][r] * rhs[r];
        atb[i] = s;
    }
    // gaussian elimination with partial pivoting
    std::vector<double> x(atb);
    for (int c = 0; c < m; ++c) {
        int piv = c;
        for (int r = c + 1; r < m; ++r) {
            if (std::abs(ata[static_cast<std::size_t>(r) * m + c]) >
                std::abs(ata[static_cast<std::size_t>(piv) * m + c])) piv = r;
        }
        for (int j = 0; j < m; ++j) {
            std::swap(ata[static_cast<std::size_t>(c) * m + j],
                      ata[static_cast<std::size_t>(piv) * m + j]);
        }
        std::swap(x[c], x[piv]);
        for (int r = c + 1; r < m; ++r) {
            const double f = ata[static_cast<std::size_t>(r) * m + c] /
                             ata[static_cast<std::size_t>(c) * m + c];
            for (int j = c; j < m; ++j) {
                ata[static_cast<std::size_t>(r) * m + j] -=
                    f * ata[static_cast<std::size_t>(c) * m + j];
            }
            x[r] -= f * x[c];
        }
    }
    for (int r = m - 1; r >= 0; --r) {
        for (int j = r + 1; j < m; ++j) x[r] -= ata[static_cast<std::size_t>(r) * m + j] * x[j];
        x[r] /= ata[static_cast<std::size_t>(r) * m + r];
    }
    return x;
}

AsymptoticFit fit_moment(const std::vector<int>& ks, const std::vector<double>& t) {
    AsymptoticFit fit;
    const std::size_t n = ks.size();

    // slope: double Richardson over {K/8, K/4, K/2, K} when available
    auto index_of = [&](int k) -> int {
        for (std::size_t i = 0; i < n; ++i) {
            if (ks[i] == k) return static_cast<int>(i);
        }
        return -1;
    };
    bool have_quadruple = false;
    for (std::size_t i = n; i-- > 0 && !have_quadruple;) {
        const int K = ks[i];
        if (K % 8 != 0) continue;
        const int i4 = index_of(K / 2), i2 = index_of(K / 4), i1 = index_of(K / 8);
        if (i4 < 0 || i2 < 0 || i1 < 0) continue;
        const double k0 = K / 8.0;
        const double u1 = (t[i2] - t[i1]) / k0;
        const double u2 = (t[i4] - t[i2]) / (2.0 * k0);
        const double u3 = (t[i] - t[i4]) / (4.0 * k0);
        const double v1 = (4.0 * u2 - u1) / 3.0;
        const double v2 = (4.0 * u3 - u2) / 3.0;
        fit.slope = (8.0 * v2 - v1) / 7.0;
        have_quadruple = true;
    }
    if (!have_quadruple) {
        std::vector<std::vector<double>> cols(4, std::vector<double>(n));
        for (std::size_t i = 0; i < n; ++i) {
            cols[0][i] = ks[i];
            cols[1][i] = 1.0;
            cols[2][i] = 1.0 / ks[i];
            cols[3][i] = 1.0 / (static_cast<double>(ks[i]) * ks[i]);
        }
        fit.slope = least_squares(cols, t)[0];
    }

    // intercept: constant term of (t - slope k) fitted on {1, 1/k, 1/k^2}
    // over the larger-k half of the list
    const std::size_t half = n / 2;
    std::vector<std::vector<double>> cols(3);
    std::vector<double> rhs;
    for (std::size_t i = half; i < n; ++i) {
        cols[0].push_back(1.0);
        cols[1].push_back(1.0 / ks[i]);
        cols[2].push_back(1.0 / (static_cast<double>(ks[i]) * ks[i]));
        rhs.push_back(t[i] - fit.slope * ks[i]);
    }
    fit.intercept = least_squares(cols, rhs)[0];

    // remainder decay exponent, fitted on the larger orders: the small-k end
    // still carries higher-order curvature (d/k^2, ...) and would bias the
    // log-log slope away from the asymptotic rate
    double tmax = 0.0;
    for (double v : t) tmax = std::max(tmax, std::abs(v));
    const double floor = 1e-13 * tmax + 1e-300;
    std::vector<double> lx, ly;
    for (std::size_t i = half; i < n; ++i) {
        const double r = std::abs(t[i] - fit.slope * ks[i] - fit.intercept);
        if (r > floor) {
            lx.push_back(std::log(static_cast<double>(ks[i])));
            ly.push_back(std::log(r));
        }
    }
    if (lx.size() >= 3) {
        std::vector<std::vector<double>> lc(2);
        lc[0] = lx;
        lc[1].assign(lx.size(), 1.0);
        fit.residual_decay_exponent = least_squares(lc, ly)[0];
    }
    return fit;
}

} // namespace

std::pair<AsymptoticFit, AsymptoticFit> trace_asymptotics(const LameProblem& problem,
                                                          const std::vector<int>& k_list) {
    if (k_list.size() < 3) throw ValidationError("trace_asymptotics: need >= 3 orders");
    for (std::size_t i = 0; i + 1 < k_list.size(); ++i) {
        if (!(k_list[i] < k_list[i + 1])) {
            throw ValidationError("trace_asymptotics: k_list must be increasing");
        }
    }
    std::vector<double> t1(k_list.size()), t2(k_list.size());
    for (std::size_t i = 0; i < k_list.size(); ++i) {
        const auto s = zero_power_sums(problem, k_list[i]);
        t1[i] = s.first;
        t2[i] = s.second;
    }
    return {fit_moment(k_list, t1), fit_moment(k_list, t2)};
}

// ---------------- densities ----------------

RhoADensity::RhoADensity(const LameProblem& problem)
    : a1_(problem.alpha1()), a2_(problem.alpha2()), a3_(problem.alpha3()),
      span_(problem.alpha3() - problem.alpha1()) {}

double RhoADensity::density_branch(double x) const {
    // x < a2:  (1/pi) int_0^{pi/2} dtheta / sqrt((s-a1)(s-x)),  s = a2 + (a3-a2) sin^2
    // x > a2:  (1/pi) int_0^{pi/2} dtheta / sqrt((a3-s)(x-s)),  s = a1 + (a2-a1) sin^2
    const bool left = x < a2_;
    const double base = left ? a2_ : a1_;
    const double gap = left ? (a3_ - a2_) : (a2_ - a1_);
    auto f = [&](double th) {
        const double st = std::sin(th);
        const double s = base + gap * st * st;
        const double g = left ? (s - a1_) * (s - x) : (a3_ - s) * (x - s);
        return 1.0 / std::sqrt(g);
    };
    const double dist = std::abs(x - a2_);
    double integral;
    if (dist >= 0.04 * span_) {
        integral = integrate_gl(f, 0.0, std::numbers::pi / 2.0, 160);
    } else {
        // boundary layer of width sqrt(dist/gap) at theta = 0; the sinh map
        // theta = sqrt(dist/gap) sinh(u) resolves it, leaving an analytic
        // u-integrand that plain Gauss-Legendre handles at any dist > 0
        const double w = std::sqrt(dist / gap);
        const double u_max = std::asinh(std::numbers::pi / (2.0 * w));
        auto g = [&](double u) {
            const double th = std::min(w * std::sinh(u), std::numbers::pi / 2.0);
            return f(th) * w * std::cosh(u);
        };
        integral = integrate_gl(g, 0.0, u_max, 192);
    }
    return integral / std::numbers::pi;
}

double RhoADensity::operator()(double x) const {
    if (!(x > a1_ && x < a3_)) {
        std::ostringstream os;
        os << "rho_A: x = " << x << " outside the open support (" << a1_ << ", " << a3_ << ")";
        throw ValidationError(os.str());
    }
    if (std::abs(x - a2_) < 1e-8 * span_) {
        throw ValidationError("rho_A: x within 1e-8 * span of alpha2 (density diverges)");
    }
    return density_branch(x);
}

void RhoADensity::build_table() const {
    if (!nodes_.empty()) return;
    std::vector<double> nodes;
    const int n_side = 400;
    const double delta0 = 0.02 * span_;
    const double delta_min = 1e-11 * span_;
    // uniform away from alpha2, geometric into it from both sides
    for (int i = 0; i <= n_side; ++i) {
        nodes.push_back(a1_ + (a2_ - delta0 - a1_) * i / n_side);
    }
    for (double d = delta0; d > delta_min; d *= 0.5) nodes.push_back(a2_ - d);
    nodes.push_back(a2_ - delta_min);
    nodes.push_back(a2_ + delta_min);
    for (double d = delta_min; d < delta0; d *= 2.0) nodes.push_back(a2_ + d);
    for (int i = 0; i <= n_side; ++i) {
        nodes.push_back(a2_ + delta0 + (a3_ - a2_ - delta0) * i / n_side);
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    prefix_.assign(nodes.size(), 0.0);
    const double cell_tol = 1e-9 / static_cast<double>(nodes.size());
    KahanSum acc;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        double inc = 0.0;
        const double lo = nodes[i], hi = nodes[i + 1];
        if (!(hi <= a2_ - delta_min * 0.5) && !(lo >= a2_ + delta_min * 0.5)) {
            // the sliver straddling alpha2: integrable log mass, below 1e-10
            inc = 0.0;
        } else {
            inc = adaptive_simpson([&](double x) { return density_branch(x); },
                                   lo, hi, cell_tol, 30);
        }
        acc.add(inc);
        prefix_[i + 1] = acc.value();
    }
    nodes_ = std::move(nodes);
}

double RhoADensity::cdf(double t) const {
    if (t <= a1_) return 0.0;
    if (t >= a3_) return 1.0;
    build_table();
    const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
    const std::size_t j = static_cast<std::size_t>(it - nodes_.begin()) - 1;
    double tail = 0.0;
    if (t > nodes_[j] && std::abs(t - a2_) > 1e-10 * span_ &&
        std::abs(nodes_[j] - a2_) > 0.4e-11 * span_) {
        tail = adaptive_simpson([&](double x) { return density_branch(x); },
                                nodes_[j], t, 1e-11, 30);
    }
    return prefix_[j] + tail;
}

double RhoADensity::cdf_exchanged(double t) const {
    if (t <= a1_) return 0.0;
    if (t >= a3_) return 1.0;
    const double pi = std::numbers::pi;
    auto left_part = [&](double tt) {
        // integral over (a1, min(tt, a2)) with s = a2 + (a3-a2) sin^2
        auto f = [&](double th) {
            const double st = std::sin(th);
            const double s = a2_ + (a3_ - a2_) * st * st;
            return 1.0 - std::sqrt((s - tt) / (s - a1_));
        };
        return 2.0 / pi * integrate_gl(f, 0.0, pi / 2.0, 200);
    };
    if (t <= a2_) return left_part(t);
    auto f = [&](double th) {
        const double st = std::sin(th);
        const double s = a1_ + (a2_ - a1_) * st * st;
        return (std::sqrt(t - s) - std::sqrt(a2_ - s)) / std::sqrt(a3_ - s);
    };
    return left_part(a2_) + 2.0 / pi * integrate_gl(f, 0.0, pi / 2.0, 200);
}

double RhoADensity::mass() const {
    const double eps = 1e-11 * span_;
    auto f = [&](double x) { return density_branch(x); };
    double total = 0.0;
    total += adaptive_simpson(f, a1_ + eps, 0.5 * (a1_ + a2_), 2.5e-10, 55);
    total += adaptive_simpson(f, 0.5 * (a1_ + a2_), a2_ - eps, 2.5e-10, 55);
    total += adaptive_simpson(f, a2_ + eps, 0.5 * (a2_ + a3_), 2.5e-10, 55);
    total += adaptive_simpson(f, 0.5 * (a2_ + a3_), a3_ - eps, 2.5e-10, 55);
    return total;
}

double ArcsineDensity::operator()(double x) const {
    const double u = x - center;
    if (!(std::abs(u) < halfwidth)) {
        throw ValidationError("arcsine density: x outside the open support");
    }
    return 1.0 / (std::numbers::pi * std::sqrt((halfwidth - u) * (halfwidth + u)));
}

double ArcsineDensity::cdf(double x) const {
    const double u = x - center;
    if (u <= -halfwidth) return 0.0;
    if (u >= halfwidth) return 1.0;
    return 0.5 + std::asin(u / halfwidth) / std::numbers::pi;
}

ArcsineSupports arcsine_supports(double a_limit, double b_limit) {
    if (!(b_limit > 0.0)) throw ValidationError("arcsine_supports: b limit must be positive");
    ArcsineSupports s;
    s.printed = ArcsineDensity{a_limit, 2.0 / b_limit};
    s.standard = ArcsineDensity{a_limit, 2.0 * std::sqrt(b_limit)};
    return s;
}

double ks_distance(const std::function<double(double)>& F,
                   const std::function<double(double)>& G,
                   double lo, double hi, int n_grid) {
    double best = 0.0;
    for (int i = 0; i <= n_grid; ++i) {
        const double x = lo + (hi - lo) * (i + 0.5) / (n_grid + 1.0);
        best = std::max(best, std::abs(F(x) - G(x)));
    }
    return best;
}

double ks_empirical(const std::vector<double>& sorted_samples,
                    const std::function<double(double)>& F) {
    const std::size_t n = sorted_samples.size();
    if (n == 0) throw ValidationError("ks_empirical: empty sample");
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double c = F(sorted_samples[i]);
        best = std::max(best, std::abs(c - static_cast<double>(i + 1) / n));
        best = std::max(best, std::abs(c - static_cast<double>(i) / n));
    }
    return best;
}

double heun_residual(const LameProblem& problem, double x) {
    const double span = problem.span();
    const double margin = 0.05 * span;
    for (double a : {problem.alpha1(), problem.alpha2(), problem.alpha3()}) {
        if (std::abs(x - a) < margin) {
            throw ValidationError("heun_residual: x within 0.05 * span of a singular point");
        }
    }
    if (!(x > problem.alpha1() && x < problem.alpha3())) {
        throw ValidationError("heun_residual: x outside the support");
    }
    const RhoADensity rho(problem);
    const double h = 1e-4 * span;
    double f[5];
    for (int m = -2; m <= 2; ++m) f[m + 2] = rho(x + m * h);
    const double d1 = (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * h);
    const double d2 = (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * h * h);
    const double a1 = problem.alpha1(), a2 = problem.alpha2(), a3 = problem.alpha3();
    const double A = (x - a1) * (x - a2) * (x - a3);
    const double Ap = (x - a2) * (x - a3) + (x - a1) * (x - a3) + (x - a1) * (x - a2);
    const double App = 2.0 * (3.0 * x - a1 - a2 - a3);
    const double num = 8.0 * A * d2 + 8.0 * Ap * d1 + App * f[2];
    const double den = std::abs(8.0 * A * d2) + std::abs(8.0 * Ap * d1) + std::abs(App * f[2]);
    return std::abs(num) / den;
}

double recurrence_residual_ratio(const LameProblem& problem, int n) {
    if (n < 4) throw ValidationError("recurrence_residual_ratio: n must be >= 4");
    SolveOptions opt;
    opt.with_eigenvectors = false;
    const auto zn = van_vleck_zeros(problem, n - 1, opt).zeros;   // roots of p_n
    const auto zn1 = van_vleck_zeros(problem, n - 2, opt).zeros;  // roots of p_{n-1}
    const auto zn2 = van_vleck_zeros(problem, n - 3, opt).zeros;  // roots of p_{n-2}
    const double a_n = recurrence_a(problem, n);
    const double b_n = recurrence_b(problem, n);

    const std::vector<double> grid = chebyshev_grid(100, problem.alpha1(), problem.alpha3());
    // evaluate all three polynomials from roots, under a common exponential
    // scaling so the subtraction stays in range for any span
    auto logeval = [](const std::vector<double>& roots, double x, double& sign_out) {
        double ls = 0.0;
        double sg = 1.0;
        for (double r : roots) {
            const double d = x - r;
            if (d == 0.0) { sign_out = 0.0; return -std::numeric_limits<double>::infinity(); }
            ls += std::log(std::abs(d));
            if (d < 0.0) sg = -sg;
        }
        sign_out = sg;
        return ls;
    };
    std::vector<double> lp(grid.size()), sp(grid.size());
    double lmax = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        lp[i] = logeval(zn, grid[i], sp[i]);
        lmax = std::max(lmax, lp[i]);
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid[i];
        double s1, s2;
        const double l1 = logeval(zn1, x, s1);
        const double l2 = logeval(zn2, x, s2);
        const double pn = sp[i] * std::exp(lp[i] - lmax);
        const double pn1 = s1 * std::exp(l1 - lmax);
        const double pn2 = s2 * std::exp(l2 - lmax);
        const double r = pn - (x - a_n) * pn1 + b_n * pn2;
        num = std::max(num, std::abs(r));
        den = std::max(den, std::abs(pn));
    }
    return num / den;
}

} // namespace hs
