#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace hs {

// Gauss-Legendre nodes/weights on [-1, 1], cached per n.  Nodes by Newton on
// the Legendre recurrence (accurate to ~1 ulp).
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendreRule& gauss_legendre(int n);

double integrate_gl(const std::function<double(double)>& f, double a, double b, int n);

// Adaptive Simpson with absolute tolerance; depth-limited recursion.
double adaptive_simpson(const std::function<double(double)>& f,
                        double a, double b, double abs_tol, int max_depth = 60);

// n Chebyshev points of the first kind mapped to [a, b], descending-cos order.
std::vector<double> chebyshev_grid(int n, double a, double b);

// Compensated (Kahan) accumulator.
class KahanSum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }
private:
    double s_ = 0.0, c_ = 0.0;
};

// Deterministic 64-bit generator (xoshiro-free: std::mt19937_64 is fully
// specified by the standard) with a portable uniform mapping.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    double uniform();                       // [0, 1)
    double uniform(double lo, double hi);
    double log_uniform(double lo, double hi);
private:
    std::uint64_t state_[4];
    std::uint64_t next_u64();
};

// Deterministic parallel map over [0, n): results land in caller-owned slots,
// so output order never depends on thread count.  Thread count from HS_THREADS
// (default: hardware concurrency), always >= 1.
int worker_count();
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& body);

// 17-significant-digit decimal formatting: round-trips any double.
std::string format17(double v);

} // namespace hs
