#pragma once

#include <span>
#include <vector>

namespace twolayer {

// Physical parameters of the unperturbed two-layer fluid: upper layer of depth b
// and density rho1 over an infinitely deep layer of density rho2 > rho1, with
// along-cylinder wavenumber k.
class FluidConfig {
public:
    // Throws DomainError unless 0 < beta < 1, b > 0, k > 0 (all finite).
    FluidConfig(double beta, double b, double k);

    double beta() const { return beta_; }
    double alpha() const { return alpha_; }
    double b() const { return b_; }
    double k() const { return k_; }

    friend bool operator==(const FluidConfig&, const FluidConfig&) = default;

private:
    double beta_;
    double alpha_;
    double b_;
    double k_;
};

// Interfacial branch lambda_1(tau) = alpha tau tanh(b tau) / (1 + beta tanh(b tau)).
double lambda1(double tau, const FluidConfig& cfg);

// Closed-form d lambda_1 / d tau.
double lambda1_prime(double tau, const FluidConfig& cfg);

// Surface branch lambda_2(tau) = tau.
inline double lambda2(double tau) { return tau; }

// Quantities of the unperturbed spectrum that every leading-order formula needs.
struct SpectralContext {
    double Lambda1;           // cut-off of the continuous spectrum, lambda_1(k)
    double Lambda2;           // embedded cut-off, equal to k
    double tau1;              // root of lambda_1(tau) = Lambda2, tau1 > k
    double p1_zero;           // sqrt(tau1^2 - k^2)
    double q1;                // sqrt(2 k Lambda1 / lambda_1'(k))
    double q2;                // k sqrt(2)
    double dlambda1_at_k;     // lambda_1'(k)
    double dlambda1_at_tau1;  // lambda_1'(tau1)
};

SpectralContext spectral_context(const FluidConfig& cfg);

// Vertical profile g(y; tau, lam) = tau cosh(tau y) + lam sinh(tau y) and its
// y-derivative.
struct Profile {
    double g;
    double g_prime;
};

Profile g_profile(double y, double tau, double lam);

// g and g' multiplied by exp(-log_scale), evaluated without forming cosh/sinh
// so that large tau |y| does not overflow.
Profile g_profile_scaled(double y, double tau, double lam, double log_scale);

enum class Branch { interfacial, surface };

// One sample of a plane-wave vertical profile. Points with y >= -b lie in the
// upper layer (phi_1), points below the interface in the lower layer (phi_2).
struct ProfileSample {
    double y;
    double value;
    double slope;
};

// Vertical profiles of the plane wave exp(i p x) on the requested branch.
// Throws ValidationError if lam does not satisfy that branch's dispersion
// relation at tau = sqrt(k^2 + p^2) to 1e-10 relative.
std::vector<ProfileSample> mode_profiles(double p, Branch branch, const FluidConfig& cfg,
                                         double lam, std::span<const double> y_samples);

enum class ThresholdRoot { first, second };

// Magnitude of the imaginary wavenumber p = i p0(sigma) at which the dispersion
// relation is met for lambda = Lambda (1 - sigma^2) close to a cut-off.
//  first:  exact root of lambda_1(sqrt(k^2 - p^2)) = Lambda1 (1 - sigma^2), p in (0, k)
//  second: k sigma sqrt(2 - sigma^2)
// sigma must lie in [0, 1).
double near_threshold_wavenumber(double sigma, ThresholdRoot which, const FluidConfig& cfg);

}  // namespace twolayer
