#include "hs/numerics.hpp"
#include "hs/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numbers>
#include <thread>

namespace hs {

namespace {
std::mutex g_rule_mutex;
std::map<int, GaussLegendreRule> g_rules;

GaussLegendreRule make_rule(int n) {
    GaussLegendreRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = t;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        r.nodes[i] = t;
        r.weights[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    return r;
}
} // namespace

const GaussLegendreRule& gauss_legendre(int n) {
    std::lock_guard<std::mutex> lock(g_rule_mutex);
    auto it = g_rules.find(n);
    if (it == g_rules.end()) {
        it = g_rules.emplace(n, make_rule(n)).first;
    }
    return it->second;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int n) {
    // std::map references are stable; the cache never erases.
    const GaussLegendreRule& rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    KahanSum s;
    for (int i = 0; i < n; ++i) {
        s.add(rule.weights[i] * f(mid + half * rule.nodes[i]));
    }
    return half * s.value();
}

namespace {
struct SimpsonCtx {
    const std::function<double(double)>& f;
    long budget;
};

double simpson_rec(SimpsonCtx& ctx, double a, double b,
                   double fa, double fm, double fb, double whole,
                   double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = ctx.f(lm);
    const double frm = ctx.f(rm);
    ctx.budget -= 2;
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double err = left + right - whole;
    // stop on tolerance, on the rounding floor of the panel sums, on depth,
    // or when the evaluation budget is gone (best-effort return)
    const double noise = 8e-16 * (std::abs(left) + std::abs(right));
    if (depth <= 0 || ctx.budget <= 0 || std::abs(err) < 15.0 * tol || std::abs(err) < noise) {
        return left + right + err / 15.0;
    }
    return simpson_rec(ctx, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(ctx, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
} // namespace

double adaptive_simpson(const std::function<double(double)>& f,
                        double a, double b, double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    SimpsonCtx ctx{f, 2'000'000};
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(ctx, a, b, fa, fm, fb, whole, abs_tol, max_depth);
}

std::vector<double> chebyshev_grid(int n, double a, double b) {
    std::vector<double> x(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        x[i] = mid + half * std::cos((2.0 * i + 1.0) * std::numbers::pi / (2.0 * n));
    }
    return x;
}

// splitmix64-seeded xoshiro256** -- deterministic across platforms.
Rng::Rng(std::uint64_t seed) {
    std::uint64_t z = seed;
    for (int i = 0; i < 4; ++i) {
        z += 0x9e3779b97f4a7c15ull;
        std::uint64_t x = z;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        state_[i] = x ^ (x >> 31);
    }
}

std::uint64_t Rng::next_u64() {
    auto rotl = [](std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double Rng::log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
}

int worker_count() {
    if (const char* env = std::getenv("HS_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<int>(std::min<long>(v, 256));
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& body) {
    const int workers = std::min<std::int64_t>(worker_count(), n);
    if (workers <= 1) {
        for (std::int64_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                const std::int64_t i = next.fetch_add(1);
                if (i >= n || failed.load(std::memory_order_relaxed)) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    failed.store(true, std::memory_order_relaxed);
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::string format17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace hs
