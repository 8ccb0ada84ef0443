#include "hs/interlace.hpp"
#include "hs/errors.hpp"
#include "hs/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hs {

InterlaceVerdict check_interlacing(const std::vector<double>& inner,
                                   const std::vector<double>& outer,
                                   double lo, double hi) {
    const std::size_t m = inner.size();
    if (outer.size() != m + 1) {
        throw ValidationError("check_interlacing: outer must be exactly one longer than inner");
    }
    auto strictly_sorted = [](const std::vector<double>& v) {
        for (std::size_t i = 0; i + 1 < v.size(); ++i) {
            if (!(v[i] < v[i + 1])) return false;
        }
        return true;
    };
    if (!strictly_sorted(inner) || !strictly_sorted(outer)) {
        throw ValidationError("check_interlacing: inputs must be strictly sorted");
    }

    // chain: lo, outer[0], inner[0], outer[1], ..., inner[m-1], outer[m], hi
    std::vector<double> chain;
    chain.reserve(2 * m + 3);
    chain.push_back(lo);
    for (std::size_t i = 0; i < m; ++i) {
        chain.push_back(outer[i]);
        chain.push_back(inner[i]);
    }
    chain.push_back(outer[m]);
    chain.push_back(hi);

    InterlaceVerdict v;
    v.min_gap = std::numeric_limits<double>::infinity();
    v.holds = true;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        const double gap = chain[i + 1] - chain[i];
        v.min_gap = std::min(v.min_gap, gap);
        if (!(chain[i] < chain[i + 1]) && v.holds) {
            v.holds = false;
            v.violation_index = static_cast<int>(i);
        }
    }
    v.lower_bound_ok = lo < outer.front();
    v.upper_bound_ok = outer.back() < hi;
    return v;
}

std::string verdict_to_json(const InterlaceVerdict& v) {
    std::ostringstream os;
    os << "{\"holds\":" << (v.holds ? "true" : "false")
       << ",\"min_gap\":" << format17(v.min_gap)
       << ",\"violation_index\":";
    if (v.violation_index) {
        os << *v.violation_index;
    } else {
        os << "null";
    }
    os << ",\"lo_ok\":" << (v.lower_bound_ok ? "true" : "false")
       << ",\"hi_ok\":" << (v.upper_bound_ok ? "true" : "false") << "}";
    return os.str();
}

double check_distinct_across_orders(const LameProblem& problem, int k) {
    SolveOptions opt;
    opt.with_eigenvectors = false;
    const auto a = van_vleck_zeros(problem, k, opt);
    const auto b = van_vleck_zeros(problem, k + 1, opt);
    double best = std::numeric_limits<double>::infinity();
    for (double x : a.zeros) {
        for (double y : b.zeros) {
            best = std::min(best, std::abs(x - y));
        }
    }
    return best;
}

namespace {

// true when any adjacent pair of brackets from the two interleaved spectra
// overlaps -- i.e. a strict comparison would not be backed by the certificates
bool brackets_overlap(const VanVleckSpectrum& inner, const VanVleckSpectrum& outer) {
    // chain pairs: (outer[i], inner[i]) and (inner[i], outer[i+1]); the strict
    // comparison is certificate-backed only when the brackets are disjoint
    for (std::size_t i = 0; i < inner.brackets.size(); ++i) {
        if (!(outer.brackets[i].hi < inner.brackets[i].lo)) return true;
        if (!(inner.brackets[i].hi < outer.brackets[i + 1].lo)) return true;
    }
    return false;
}

} // namespace

std::vector<InterlaceVerdict> check_theorem_2_1(const LameProblem& problem, int k_max) {
    std::vector<InterlaceVerdict> out;
    if (k_max < 2) return out;

    SolveOptions opt;
    opt.with_eigenvectors = false;

    std::vector<VanVleckSpectrum> spectra(k_max + 1);
    for (int k = 1; k <= k_max; ++k) {
        spectra[k] = van_vleck_zeros(problem, k, opt);
    }
    out.reserve(k_max - 1);
    for (int k = 1; k < k_max; ++k) {
        const VanVleckSpectrum* inner = &spectra[k];
        const VanVleckSpectrum* outer = &spectra[k + 1];
        VanVleckSpectrum refined_i, refined_o;
        SolveOptions ropt = opt;
        int rounds = 0;
        while (brackets_overlap(*inner, *outer) && rounds < 3) {
            ropt.tol_factor *= 1e-2;
            refined_i = van_vleck_zeros(problem, k, ropt);
            refined_o = van_vleck_zeros(problem, k + 1, ropt);
            inner = &refined_i;
            outer = &refined_o;
            ++rounds;
        }
        if (brackets_overlap(*inner, *outer)) {
            std::ostringstream os;
            os << "check_theorem_2_1: comparison of orders " << k << " and " << k + 1
               << " inconclusive after bracket refinement";
            throw SolverError(SolverError::Kind::Inconclusive, os.str());
        }
        out.push_back(check_interlacing(inner->zeros, outer->zeros,
                                        problem.alpha1(), problem.alpha3()));
    }
    return out;
}

} // namespace hs
