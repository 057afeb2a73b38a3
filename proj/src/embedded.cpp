#include "twolayer/embedded.hpp"

#include "twolayer/errors.hpp"
#include "twolayer/roots.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace twolayer {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

FluidConfig scaled_config(const FluidConfig& cfg) {
    return FluidConfig(cfg.beta(), cfg.k() * cfg.b(), 1.0);
}

bool embedded_exists(double alpha, const DipoleStrengths& dip, double b, double k) {
    const FluidConfig cfg(1.0 - alpha, b, k);
    const double t0 = tau0(cfg);
    return solve_w(dip.delta(), t0) / (k * t0) < b;
}

}  // namespace

double tau0(const FluidConfig& cfg) {
    return spectral_context(scaled_config(cfg)).tau1;
}

double solve_w(double delta, double tau0) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw DomainError("delta must lie in (0, 1), got " + std::to_string(delta));
    }
    if (!(tau0 > 1.0)) {
        throw DomainError("tau0 must exceed 1, got " + std::to_string(tau0));
    }
    const double rhs = tau0 * (1.0 + delta) / (tau0 * tau0 + delta);
    // 1 - rhs = (tau0 - 1)(tau0 - delta) / (tau0^2 + delta) > 0
    if (!(rhs < 1.0)) {
        throw DomainError("tanh w = " + std::to_string(rhs) + " has no solution");
    }
    return std::atanh(rhs);
}

double rcal_reduced(double a, const FluidConfig& cfg, const DipoleStrengths& dip,
                    const SpectralContext& ctx) {
    const double k = cfg.k();
    const double t1 = ctx.tau1;
    const double th = std::tanh(a * t1);
    return k * dip.S * (t1 - k * th) + kTwoPi * dip.mu * (k * t1 - t1 * t1 * th);
}

EmbeddedResult a_star(const FluidConfig& cfg, const DipoleStrengths& dip,
                      const SpectralContext& ctx, double epsilon) {
    EmbeddedResult r;
    const double k = cfg.k();
    const double b = cfg.b();
    r.b0 = k * b;
    r.delta = dip.delta();
    r.tau0 = tau0(cfg);
    if (!(std::abs(r.tau0 - ctx.tau1 / k) <= 1e-12 * r.tau0)) {
        throw ConsistencyError("tau0 = " + std::to_string(r.tau0) + " disagrees with tau1 / k = " +
                               std::to_string(ctx.tau1 / k));
    }

    if (!(std::abs(dip.nu) <= kSymmetryTol * dip.mu)) {
        r.diagnostic = "asymmetric contour (J != 0)";
        return r;
    }

    r.w = solve_w(r.delta, r.tau0);
    r.a0 = r.w / r.tau0;
    const double candidate = r.a0 / k;

    std::optional<double> root;
    auto reduced = [&](double a) { return rcal_reduced(a, cfg, dip, ctx); };
    if (reduced(b) < 0.0) {
        root = roots::solve_bracketed(reduced, 0.0, b);
    }

    const double tol = 1e-9 * b;
    const bool closed_form_inside = candidate < b;
    if (closed_form_inside != root.has_value() && std::abs(candidate - b) > tol) {
        throw ConsistencyError("embedded-mode routes disagree on existence: a* = " +
                               std::to_string(candidate) + ", b = " + std::to_string(b));
    }
    if (root && std::abs(*root - candidate) > tol) {
        throw ConsistencyError("embedded-mode routes disagree: " + std::to_string(candidate) +
                               " vs " + std::to_string(*root));
    }

    if (!closed_form_inside) {
        r.diagnostic = "a* = " + std::to_string(candidate) + " is not below b = " +
                       std::to_string(b);
        return r;
    }
    r.exists = true;
    r.a_star = candidate;
    r.a_star_root = root;
    const ProblemSetup at_root{cfg, Side::upper, candidate, epsilon, dip};
    r.sigma = resonance_upper(at_root, ctx).re_sigma;
    return r;
}

EmbeddedResult a_star(const ProblemSetup& setup, const SpectralContext& ctx) {
    if (setup.side != Side::upper) {
        throw ValidationError("embedded modes are defined for side U only");
    }
    return a_star(setup.cfg, setup.dip, ctx, setup.epsilon);
}

double f_circle(double a, double tau) {
    if (!(a >= 0.0)) throw DomainError("a must be non-negative");
    return 3.0 * tau - (1.0 + 2.0 * tau * tau) * std::tanh(a * tau);
}

double small_alpha_asymptote(double alpha, double delta, double k) {
    if (!(k > 0.0)) throw DomainError("k must be positive");
    return alpha * alpha * (1.0 + delta) / (4.0 * k);
}

std::vector<SweepRow> sweep_f(std::span<const double> alphas, std::span<const double> a_grid) {
    const auto circle = analytic_dipoles_circle(1.0);
    std::vector<SweepRow> rows;
    rows.reserve(alphas.size() * a_grid.size());
    for (double alpha : alphas) {
        const FluidConfig cfg(1.0 - alpha, 1.0, 1.0);
        const double t0 = tau0(cfg);
        const double a_root = solve_w(circle.delta(), t0) / t0;
        const bool has_root = a_root < 1.0;
        for (double a : a_grid) {
            rows.push_back({alpha, t0, a, f_circle(a, t0), has_root,
                            has_root ? std::optional<double>(a_root) : std::nullopt});
        }
    }
    return rows;
}

double critical_alpha(const DipoleStrengths& dip, double b, double k, double lo, double hi,
                      double tol) {
    if (!(lo > 0.0 && lo < hi && hi < 1.0)) {
        throw DomainError("alpha bracket must satisfy 0 < lo < hi < 1");
    }
    if (!embedded_exists(lo, dip, b, k) || embedded_exists(hi, dip, b, k)) {
        throw DomainError("embedded-mode existence does not change across [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (embedded_exists(mid, dip, b, k) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace twolayer
