#include "twolayer/spectra.hpp"

#include "twolayer/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace twolayer {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_side(const ProblemSetup& setup, Side side, const char* what) {
    if (setup.side != side) {
        throw ValidationError(std::string(what) + " requires side " +
                              (side == Side::upper ? "U" : "L"));
    }
}

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ConsistencyError(std::string(name) + " = " + std::to_string(value) +
                               " is not a positive constant");
    }
}

// R and J multiplied by e^{-a tau1}, their natural size; the raw values
// overflow once a tau1 is in the hundreds.
struct ScaledRJ {
    double R;
    double J;
    double g;
    double log_scale;
};

ScaledRJ scaled_rcal_jcal(const ProblemSetup& setup, const SpectralContext& ctx) {
    const double k = setup.cfg.k();
    const double s = setup.a * ctx.tau1;
    const auto g = g_profile_scaled(-setup.a, ctx.tau1, ctx.Lambda2, s);
    const auto& dip = setup.dip;
    return {k * dip.S * g.g + kTwoPi * dip.mu * g.g_prime,
            kTwoPi * dip.nu * ctx.p1_zero * g.g, g.g, s};
}

// Real part of sigma near Lambda2 on the upper side; also the embedded-mode sigma.
double re_sigma_upper(const ProblemSetup& setup, const SpectralContext& ctx, Coefficients& c) {
    const double k = setup.cfg.k();
    const double eps = setup.epsilon;
    c.Q_at_k = q_factor(k, setup.cfg);
    c.D = 4.0 * std::exp(-setup.a * k) / (c.Q_at_k * (ctx.Lambda2 - ctx.Lambda1) * ctx.q2);
    require_positive(c.D, "D");
    return 0.5 * eps * eps * c.D * k * k * std::exp(-setup.a * k) *
           (setup.dip.S + kTwoPi * setup.dip.mu);
}

void attach_decay(ResonanceResult& r, double k, std::optional<double> g_grav) {
    if (g_grav && r.im_sigma) {
        r.decay_rate = std::sqrt(k * *g_grav) * r.re_sigma * *r.im_sigma;
    }
}

void finish_width(ResonanceResult& r) {
    if (std::isnan(*r.im_sigma) || *r.im_sigma < 0.0 || !std::isfinite(*r.log_im_sigma)) {
        throw ConsistencyError("resonance width is not positive");
    }
    if (*r.im_sigma == 0.0) {
        r.warnings.push_back("Im sigma underflows double precision; see log_im_sigma");
    }
}

void require_g(std::optional<double> g_grav) {
    if (g_grav && !(*g_grav > 0.0)) {
        throw DomainError("gravitational acceleration must be positive");
    }
}

}  // namespace

std::vector<std::string> validate_setup(const ProblemSetup& setup) {
    std::vector<std::string> warnings;
    if (!(setup.a > 0.0) || !std::isfinite(setup.a)) {
        throw DomainError("submergence a must be positive, got " + std::to_string(setup.a));
    }
    if (setup.side == Side::upper && !(setup.a < setup.cfg.b())) {
        throw DomainError("side U requires a < b, got a = " + std::to_string(setup.a) +
                          ", b = " + std::to_string(setup.cfg.b()));
    }
    if (!(setup.epsilon > 0.0) || !std::isfinite(setup.epsilon)) {
        throw DomainError("epsilon must be positive, got " + std::to_string(setup.epsilon));
    }
    if (!(setup.dip.mu > 0.0) || !(setup.dip.S > 0.0)) {
        throw DomainError("dipole strength mu and area S must be positive");
    }
    if (setup.epsilon > 0.1) {
        warnings.push_back("epsilon = " + std::to_string(setup.epsilon) +
                           " > 0.1; leading-order formulas may be inaccurate");
    }
    return warnings;
}

double q_factor(double tau, const FluidConfig& cfg) {
    if (!(tau > 0.0)) throw DomainError("tau must be positive");
    const double beta = cfg.beta();
    // e^{-x}(cosh x + beta sinh x) = ((1 + beta) + (1 - beta) e^{-2x}) / 2
    const double e = std::exp(-2.0 * cfg.b() * tau);
    return ((1.0 + beta) + (1.0 - beta) * e) / (beta * tau * tau);
}

double p0_factor(double tau, double lam, const FluidConfig& cfg) {
    const double x = cfg.b() * tau;
    const double e = std::exp(-2.0 * x);
    const double t = (1.0 - e) / (1.0 + e);
    const double one_minus_t = 2.0 * e / (1.0 + e);
    const double beta = cfg.beta();
    // lam (1 - beta T) - alpha tau T rewritten so that lam = tau does not cancel
    const double second = (lam - tau) * (1.0 - beta * t) + tau * one_minus_t;
    return (lam + tau) * second / (1.0 + beta * t);
}

RcalJcal rcal_jcal(const ProblemSetup& setup, const SpectralContext& ctx) {
    require_side(setup, Side::upper, "R/J");
    validate_setup(setup);
    const auto g = g_profile(-setup.a, ctx.tau1, ctx.Lambda2);
    const double k = setup.cfg.k();
    const auto& dip = setup.dip;
    return {k * dip.S * g.g + kTwoPi * dip.mu * g.g_prime, kTwoPi * dip.nu * ctx.p1_zero * g.g};
}

ModeResult trapped_upper(const ProblemSetup& setup, const SpectralContext& ctx,
                         std::optional<double> g_grav) {
    require_side(setup, Side::upper, "trapped_upper");
    require_g(g_grav);
    ModeResult r;
    r.warnings = validate_setup(setup);

    const auto& cfg = setup.cfg;
    const double k = cfg.k();
    const double bk = cfg.b() * k;
    auto& c = r.coeff;
    c.Q_at_k = q_factor(k, cfg);
    // D = D_hat e^{-bk}; the other e^{-bk} is absorbed into the scaled g^2.
    const double d_hat = (cfg.alpha() / cfg.beta()) /
                         (c.Q_at_k * ctx.dlambda1_at_k * (ctx.Lambda2 - ctx.Lambda1) * ctx.q1);
    c.D = d_hat * std::exp(-bk);
    require_positive(d_hat, "D");

    const auto g = g_profile_scaled(-setup.a, k, ctx.Lambda1, bk);
    const double eps = setup.epsilon;
    r.sigma = 2.0 * eps * eps * d_hat *
              (setup.dip.S * g.g * g.g + kTwoPi * setup.dip.mu * g.g_prime * g.g_prime / (k * k));
    r.threshold = ctx.Lambda1;
    const auto lo = lambda_omega(r.sigma, r.threshold, g_grav);
    r.lambda = lo.lambda;
    r.omega = lo.omega;
    return r;
}

ResonanceResult resonance_upper(const ProblemSetup& setup, const SpectralContext& ctx,
                                std::optional<double> g_grav) {
    require_side(setup, Side::upper, "resonance_upper");
    require_g(g_grav);
    ResonanceResult r;
    r.warnings = validate_setup(setup);

    const auto& cfg = setup.cfg;
    const double k = cfg.k();
    auto& c = r.coeff;
    r.re_sigma = re_sigma_upper(setup, ctx, c);

    c.Q_at_tau1 = q_factor(ctx.tau1, cfg);
    c.D1 = k * ctx.tau1 /
           (*c.Q_at_tau1 * ctx.dlambda1_at_tau1 * ctx.p1_zero * (ctx.tau1 - k));
    require_positive(*c.D1, "D1");

    const auto rj = scaled_rcal_jcal(setup, ctx);
    r.Rcal = rj.R * std::exp(rj.log_scale);
    r.Jcal = rj.J * std::exp(rj.log_scale);

    const double sum_sq = rj.R * rj.R + rj.J * rj.J;
    const double ref = k * setup.dip.S * rj.g;
    if (sum_sq <= 1e-14 * ref * ref) {
        r.near_embedded = true;
        r.warnings.push_back("R and J vanish: near-embedded configuration, see embedded a*");
        return r;
    }

    const double eps2 = setup.epsilon * setup.epsilon;
    const double tau1 = ctx.tau1;
    const double pref = eps2 * eps2 * (cfg.alpha() * k / (cfg.beta() * tau1 * tau1 * tau1)) *
                        c.D * *c.D1 * std::exp(-setup.a * k);
    // the raw R^2 e^{-2 b tau1} equals the scaled R^2 e^{-2 (b - a) tau1}
    const double decay = -2.0 * (cfg.b() - setup.a) * tau1;
    r.im_sigma = pref * sum_sq * std::exp(decay);
    r.log_im_sigma = std::log(pref) + std::log(sum_sq) + decay;
    if (!std::isfinite(*r.Rcal) || !std::isfinite(*r.Jcal)) {
        r.warnings.push_back("raw R and J overflow double precision");
    }
    finish_width(r);
    attach_decay(r, k, g_grav);
    return r;
}

ModeResult trapped_lower(const ProblemSetup& setup, const SpectralContext& ctx,
                         std::optional<double> g_grav) {
    require_side(setup, Side::lower, "trapped_lower");
    require_g(g_grav);
    ModeResult r;
    r.warnings = validate_setup(setup);

    const auto& cfg = setup.cfg;
    const double k = cfg.k();
    auto& c = r.coeff;
    c.Q_at_k = q_factor(k, cfg);
    c.P0_at_k = p0_factor(k, ctx.Lambda1, cfg);
    c.D = -std::exp(-k * setup.a) * *c.P0_at_k / (ctx.Lambda2 - ctx.Lambda1) *
          (k / (ctx.q1 * ctx.dlambda1_at_k));
    require_positive(c.D, "D");

    const double eps = setup.epsilon;
    r.sigma = 0.5 * eps * eps * c.D * std::exp(-setup.a * k) * k *
              (setup.dip.S + kTwoPi * setup.dip.mu);
    r.threshold = ctx.Lambda1;
    const auto lo = lambda_omega(r.sigma, r.threshold, g_grav);
    r.lambda = lo.lambda;
    r.omega = lo.omega;
    return r;
}

ResonanceResult resonance_lower(const ProblemSetup& setup, const SpectralContext& ctx,
                                std::optional<double> g_grav) {
    require_side(setup, Side::lower, "resonance_lower");
    require_g(g_grav);
    ResonanceResult r;
    r.warnings = validate_setup(setup);

    const auto& cfg = setup.cfg;
    const double k = cfg.k();
    const double tau1 = ctx.tau1;
    const double a = setup.a;
    const auto& dip = setup.dip;
    auto& c = r.coeff;
    c.Q_at_k = q_factor(k, cfg);
    c.P0_at_k = p0_factor(k, ctx.Lambda2, cfg);
    c.D = std::exp(-a * k) * *c.P0_at_k * k / ((ctx.Lambda2 - ctx.Lambda1) * ctx.q2);
    require_positive(c.D, "D");

    c.P0_at_tau1 = p0_factor(tau1, ctx.Lambda2, cfg);
    c.D1 = -*c.P0_at_tau1 * tau1 / ((tau1 - k) * ctx.dlambda1_at_tau1 * ctx.p1_zero);
    require_positive(*c.D1, "D1");

    const double eps2 = setup.epsilon * setup.epsilon;
    r.re_sigma = 0.5 * eps2 * c.D * std::exp(-a * k) * k * (dip.S + kTwoPi * dip.mu);

    const double flux = k * dip.S + kTwoPi * tau1 * dip.mu;
    const double cross = kTwoPi * dip.nu;
    const double bracket = flux * flux + cross * cross * (tau1 - k) * (tau1 + k);
    if (!(bracket > 0.0)) {
        throw ConsistencyError("lower-layer resonance width is not positive");
    }
    const double pref = 0.25 * eps2 * eps2 * (k / tau1) * c.D * *c.D1;
    const double decay = -2.0 * a * tau1 - a * k;
    r.im_sigma = pref * std::exp(decay) * bracket;
    r.log_im_sigma = std::log(pref) + decay + std::log(bracket);
    finish_width(r);
    attach_decay(r, k, g_grav);
    return r;
}

LambdaOmega lambda_omega(double sigma, double threshold, std::optional<double> g_grav) {
    if (!(std::abs(sigma) < 1.0)) {
        throw DomainError("|sigma| must be below 1, got " + std::to_string(sigma));
    }
    LambdaOmega out{threshold * (1.0 - sigma * sigma), std::nullopt};
    if (g_grav) {
        require_g(g_grav);
        out.omega = std::sqrt(*g_grav * out.lambda);
    }
    return out;
}

}  // namespace twolayer
