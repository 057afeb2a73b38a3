#include "twolayer/dispersion.hpp"

#include "twolayer/errors.hpp"
#include "twolayer/roots.hpp"

#include <cmath>
#include <string>

namespace twolayer {

namespace {

void require_positive_tau(double tau) {
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw DomainError("wavenumber tau must be positive and finite, got " + std::to_string(tau));
    }
}

// sech^2(x) for x >= 0 via exp(-2x); stays accurate where 1 - tanh^2 cancels.
double sech2(double x) {
    const double e = std::exp(-2.0 * x);
    const double d = 1.0 + e;
    return 4.0 * e / (d * d);
}

// lambda_1 extended by continuity to tau = 0.
double lambda1_nonneg(double tau, const FluidConfig& cfg) {
    const double t = std::tanh(cfg.b() * tau);
    return cfg.alpha() * tau * t / (1.0 + cfg.beta() * t);
}

}  // namespace

FluidConfig::FluidConfig(double beta, double b, double k)
    : beta_(beta), alpha_(1.0 - beta), b_(b), k_(k) {
    if (!(beta > 0.0 && beta < 1.0)) {
        throw DomainError("beta must satisfy 0 < beta < 1, got " + std::to_string(beta));
    }
    if (!(b > 0.0) || !std::isfinite(b)) {
        throw DomainError("b must be positive, got " + std::to_string(b));
    }
    if (!(k > 0.0) || !std::isfinite(k)) {
        throw DomainError("k must be positive, got " + std::to_string(k));
    }
}

double lambda1(double tau, const FluidConfig& cfg) {
    require_positive_tau(tau);
    return lambda1_nonneg(tau, cfg);
}

double lambda1_prime(double tau, const FluidConfig& cfg) {
    require_positive_tau(tau);
    const double x = cfg.b() * tau;
    const double t = std::tanh(x);
    const double denom = 1.0 + cfg.beta() * t;
    // d/dtau [tau T / (1 + beta T)] with T' = b sech^2(b tau).
    return cfg.alpha() * (t * denom + x * sech2(x)) / (denom * denom);
}

SpectralContext spectral_context(const FluidConfig& cfg) {
    const double k = cfg.k();
    SpectralContext ctx{};
    ctx.Lambda1 = lambda1(k, cfg);
    ctx.Lambda2 = k;

    // lambda_1 is increasing and unbounded, and lambda_1(k) < k, so the root
    // lies to the right of k.
    auto residual = [&cfg, k](double tau) { return lambda1_nonneg(tau, cfg) - k; };
    const auto bracket = roots::expand_upward(residual, k, 2.0 * k);
    ctx.tau1 = roots::solve_bracketed(residual, bracket.lo, bracket.hi);
    if (!(std::abs(residual(ctx.tau1)) <= 1e-12 * k)) {
        throw ConsistencyError("tau1 residual exceeds 1e-12 k");
    }

    ctx.dlambda1_at_k = lambda1_prime(k, cfg);
    ctx.dlambda1_at_tau1 = lambda1_prime(ctx.tau1, cfg);
    ctx.p1_zero = std::sqrt((ctx.tau1 - k) * (ctx.tau1 + k));
    ctx.q1 = std::sqrt(2.0 * k * ctx.Lambda1 / ctx.dlambda1_at_k);
    ctx.q2 = k * std::sqrt(2.0);
    return ctx;
}

Profile g_profile(double y, double tau, double lam) {
    const double c = std::cosh(tau * y);
    const double s = std::sinh(tau * y);
    return {tau * c + lam * s, tau * tau * s + lam * tau * c};
}

Profile g_profile_scaled(double y, double tau, double lam, double log_scale) {
    // g = ((tau + lam) e^{tau y} + (tau - lam) e^{-tau y}) / 2
    const double up = std::exp(tau * y - log_scale);
    const double down = std::exp(-tau * y - log_scale);
    const double plus = (tau + lam) * up;
    const double minus = (tau - lam) * down;
    return {0.5 * (plus + minus), 0.5 * tau * (plus - minus)};
}

std::vector<ProfileSample> mode_profiles(double p, Branch branch, const FluidConfig& cfg,
                                         double lam, std::span<const double> y_samples) {
    const double tau = std::sqrt(cfg.k() * cfg.k() + p * p);
    const double expected = branch == Branch::interfacial ? lambda1(tau, cfg) : lambda2(tau);
    if (!(std::abs(lam - expected) <= 1e-10 * std::abs(expected))) {
        throw ValidationError("lambda " + std::to_string(lam) +
                              " does not satisfy the " +
                              (branch == Branch::interfacial ? "interfacial" : "surface") +
                              " dispersion relation at p = " + std::to_string(p));
    }

    std::vector<ProfileSample> out;
    out.reserve(y_samples.size());
    const double b = cfg.b();
    for (double y : y_samples) {
        if (branch == Branch::surface) {
            const double e = std::exp(tau * y);
            out.push_back({y, e, tau * e});
        } else if (y >= -b) {
            const auto gp = g_profile(y, tau, lam);
            out.push_back({y, gp.g, gp.g_prime});
        } else {
            // phi_2 = g'(-b) e^{tau (b + y)} / tau, matching phi_1y at the interface.
            const double interface_slope = g_profile(-b, tau, lam).g_prime;
            const double e = std::exp(tau * (b + y));
            out.push_back({y, interface_slope * e / tau, interface_slope * e});
        }
    }
    return out;
}

double near_threshold_wavenumber(double sigma, ThresholdRoot which, const FluidConfig& cfg) {
    if (!(sigma >= 0.0 && sigma < 1.0)) {
        throw DomainError("sigma must lie in [0, 1), got " + std::to_string(sigma) +
                          "; no root p in (0, k)");
    }
    const double k = cfg.k();
    if (sigma == 0.0) return 0.0;
    if (which == ThresholdRoot::second) {
        return k * sigma * std::sqrt(2.0 - sigma * sigma);
    }

    const double target = lambda1(k, cfg) * (1.0 - sigma * sigma);
    auto residual = [&cfg, k, target](double p) {
        const double tau = std::sqrt((k - p) * (k + p));
        return lambda1_nonneg(tau, cfg) - target;
    };
    // residual(0) = Lambda1 sigma^2 > 0 and residual(k) = -target < 0.
    return roots::solve_bracketed(residual, 0.0, k);
}

}  // namespace twolayer
