#pragma once

#include "twolayer/errors.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

namespace twolayer::roots {

struct Bracket {
    double lo;
    double hi;
};

// Relative tolerance on the abscissa used by every bracketed solve in the library.
inline constexpr double kRelTol = 1e-13;

// Root of f on [lo, hi]; f(lo) and f(hi) must have opposite signs (or one vanishes).
// Bracketing keeps every iterate inside the interval, so monotone residuals
// such as the dispersion branch can never diverge.
template <class F>
double solve_bracketed(F&& f, double lo, double hi, double rel_tol = kRelTol) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (std::signbit(flo) == std::signbit(fhi)) {
        throw SolverError("root not bracketed on [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
    }
    auto tol = [rel_tol](double a, double b) {
        return std::abs(b - a) <= rel_tol * std::max(std::abs(a), std::abs(b));
    };
    std::uintmax_t max_iter = 400;
    auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, max_iter);
    if (max_iter >= 400) {
        throw SolverError("bracketed root solve did not converge");
    }
    // Pick the endpoint with the smaller residual; both are within rel_tol.
    return std::abs(f(a)) <= std::abs(f(b)) ? a : b;
}

// Expand hi geometrically from lo until f changes sign. f(lo) must be nonzero.
template <class F>
Bracket expand_upward(F&& f, double lo, double initial_hi, int max_doublings = 200) {
    const bool neg_at_lo = f(lo) < 0.0;
    double hi = initial_hi;
    for (int i = 0; i < max_doublings; ++i) {
        const double fh = f(hi);
        if ((fh < 0.0) != neg_at_lo || fh == 0.0) return {lo, hi};
        const double width = hi - lo;
        lo = hi;
        hi += 2.0 * width;
    }
    throw SolverError("bracket expansion failed");
}

}  // namespace twolayer::roots
