#pragma once

#include "twolayer/contour.hpp"
#include "twolayer/dispersion.hpp"
#include "twolayer/spectra.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace twolayer {

// Submergence at which the upper-side resonance turns into a trapped mode
// embedded in the continuous spectrum. Dimensionless quantities use k as the
// length scale: a0 = k a*, b0 = k b, tau0 = tau1 / k.
struct EmbeddedResult {
    bool exists = false;
    std::optional<double> a_star;
    std::optional<double> a_star_root;  // same point from the root of R(a)
    double w = 0.0;                     // a0 tau0
    double tau0 = 0.0;
    double a0 = 0.0;
    double b0 = 0.0;
    double delta = 0.0;                // S / (2 pi mu)
    std::optional<double> sigma;       // real sigma of the embedded mode
    std::string diagnostic;            // why no mode, when exists is false
    const char* order = kLeadingOrder;
};

// |nu| <= kSymmetryTol mu counts as symmetric about the vertical axis.
inline constexpr double kSymmetryTol = 1e-9;

// Root of alpha tau0 tanh(b0 tau0) / (1 + beta tanh(b0 tau0)) = 1, b0 = k b.
double tau0(const FluidConfig& cfg);

// w = atanh(tau0 (1 + delta) / (tau0^2 + delta)); 0 < delta < 1, tau0 > 1.
double solve_w(double delta, double tau0);

// Requires only cfg, dipoles and epsilon (for sigma); the submergence is the output.
EmbeddedResult a_star(const FluidConfig& cfg, const DipoleStrengths& dip,
                      const SpectralContext& ctx, double epsilon);

// Upper side only; setup.a is ignored.
EmbeddedResult a_star(const ProblemSetup& setup, const SpectralContext& ctx);

// R(a) / cosh(a tau1) for the upper side; strictly decreasing in a.
double rcal_reduced(double a, const FluidConfig& cfg, const DipoleStrengths& dip,
                    const SpectralContext& ctx);

// Unit circle at k = b = 1: f(a) = 3 tau - (1 + 2 tau^2) tanh(a tau), a >= 0.
double f_circle(double a, double tau);

// Leading behaviour a* ~ alpha^2 (1 + delta) / (4 k) as alpha -> 0.
double small_alpha_asymptote(double alpha, double delta, double k);

struct SweepRow {
    double alpha;
    double tau0;
    double a;
    double f;
    bool has_root;
    std::optional<double> a_star;
};

// Table of f(a) for the unit circle at k = b = 1, one block per alpha.
std::vector<SweepRow> sweep_f(std::span<const double> alphas, std::span<const double> a_grid);

// Largest alpha in [lo, hi] for which an embedded mode exists, by bisection
// on the predicate a*(alpha) < b. The predicate must hold at lo and fail at hi.
double critical_alpha(const DipoleStrengths& dip, double b, double k, double lo, double hi,
                      double tol = 1e-4);

}  // namespace twolayer
