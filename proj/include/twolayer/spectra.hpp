#pragma once

#include "twolayer/contour.hpp"
#include "twolayer/dispersion.hpp"

#include <optional>
#include <string>
#include <vector>

namespace twolayer {

// upper: cylinder in the upper layer, a measured from the free surface (a < b).
// lower: cylinder in the lower layer, a measured from the interface.
enum class Side { upper, lower };

struct ProblemSetup {
    FluidConfig cfg;
    Side side;
    double a;        // submergence of the cylinder centre
    double epsilon;  // thinness parameter
    DipoleStrengths dip;
};

// Throws DomainError for a <= 0, a >= b on the upper side, epsilon <= 0, or
// non-positive mu / S. Returns warnings (epsilon > 0.1).
std::vector<std::string> validate_setup(const ProblemSetup& setup);

// Result-specific constants, recorded alongside each result.
struct Coefficients {
    double D = 0.0;
    std::optional<double> D1;
    double Q_at_k = 0.0;
    std::optional<double> Q_at_tau1;
    std::optional<double> P0_at_k;     // P0(k, Lambda1) or P0(k, Lambda2)
    std::optional<double> P0_at_tau1;  // P0(tau1, Lambda2)
};

// Every result is the leading term of an asymptotic series in epsilon.
inline constexpr const char* kLeadingOrder = "leading";

struct ModeResult {
    double sigma = 0.0;
    double lambda = 0.0;     // threshold (1 - sigma^2)
    double threshold = 0.0;  // Lambda1
    std::optional<double> omega;
    Coefficients coeff;
    std::vector<std::string> warnings;
    const char* order = kLeadingOrder;
};

struct ResonanceResult {
    double re_sigma = 0.0;
    // Empty when the upper-side resonance is near-embedded: R and J both
    // vanish to working precision and the resonance formula does not apply.
    std::optional<double> im_sigma;
    // ln Im sigma; stays finite when the width itself underflows to 0.
    std::optional<double> log_im_sigma;
    bool near_embedded = false;
    std::optional<double> Rcal;  // upper side only
    std::optional<double> Jcal;
    std::optional<double> decay_rate;  // sqrt(k g) Re sigma Im sigma
    Coefficients coeff;
    std::vector<std::string> warnings;
    const char* order = kLeadingOrder;
};

// Q(tau) = 2 e^{-b tau} (cosh b tau + beta sinh b tau) / (beta tau^2)
double q_factor(double tau, const FluidConfig& cfg);

// P0(tau, lam) = (1 - beta T)/(1 + beta T) (lam + tau)(lam - alpha tau T/(1 - beta T)),
// T = tanh(b tau).
double p0_factor(double tau, double lam, const FluidConfig& cfg);

struct RcalJcal {
    double Rcal;
    double Jcal;
};

// R = k S g + 2 pi mu g',  J = 2 pi nu p1 g, with g at (-a; tau1, Lambda2).
// Upper side only. May overflow to inf for very large b tau1; the resonance
// formulas use an exponent-scaled form instead.
RcalJcal rcal_jcal(const ProblemSetup& setup, const SpectralContext& ctx);

// Real eigenvalue below Lambda1, cylinder in the upper layer.
ModeResult trapped_upper(const ProblemSetup& setup, const SpectralContext& ctx,
                         std::optional<double> g_grav = std::nullopt);

// Resonance near Lambda2, cylinder in the upper layer.
ResonanceResult resonance_upper(const ProblemSetup& setup, const SpectralContext& ctx,
                                std::optional<double> g_grav = std::nullopt);

// Real eigenvalue below Lambda1, cylinder in the lower layer.
ModeResult trapped_lower(const ProblemSetup& setup, const SpectralContext& ctx,
                         std::optional<double> g_grav = std::nullopt);

// Resonance near Lambda2, cylinder in the lower layer. Im sigma is
// strictly positive.
ResonanceResult resonance_lower(const ProblemSetup& setup, const SpectralContext& ctx,
                                std::optional<double> g_grav = std::nullopt);

struct LambdaOmega {
    double lambda;
    std::optional<double> omega;
};

// lambda = threshold (1 - sigma^2), omega = sqrt(g lambda). |sigma| < 1.
LambdaOmega lambda_omega(double sigma, double threshold, std::optional<double> g_grav);

}  // namespace twolayer
