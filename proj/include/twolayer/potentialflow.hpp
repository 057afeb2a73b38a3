#pragma once

#include "twolayer/contour.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace twolayer {

// Values of a function on C at the nodes of a NystromSystem.
using BoundaryField = Eigen::VectorXd;

// Kernel of the double-layer operator M_1^(0) in parameter form,
//   -(1/pi) (r(s) - r(t)) . m(s) / |r(s) - r(t)|^2,   m = (-Y', X'),
// with the smooth curvature limit (X'Y'' - Y'X'') / (2 pi |r'|^2) on s = t.
// On the unit circle it is the constant 1/(2 pi).
double kernel_m10(double t, double s, const Contour& c);

// Dense Nystrom discretization of (1 + M_1^(0)) on N uniform nodes with the
// trapezoidal rule. Immutable once assembled; share read-only.
class NystromSystem {
public:
    // N must be a power of two, at least 32. Throws ConsistencyError if the
    // discrete operator violates M 1 = 1 by more than 1e-8.
    static NystromSystem assemble(const Contour& c, std::size_t n);

    std::size_t size() const { return nodes_.size(); }
    const std::vector<ContourPoint>& nodes() const { return nodes_; }
    const Eigen::MatrixXd& matrix() const { return matrix_; }

    // max |(M 1)_i - 1| measured at assembly.
    double gauss_residual() const { return gauss_residual_; }
    // 1 / rcond of the LU factorization (1-norm estimate).
    double condition_estimate() const { return condition_; }

    // (1 + M)^{-1} f
    BoundaryField apply_n0(const BoundaryField& f) const;
    // M f
    BoundaryField apply_m10(const BoundaryField& f) const;

    // Samples of X or Y at the nodes.
    BoundaryField trace_x() const;
    BoundaryField trace_y() const;

private:
    NystromSystem() = default;

    std::vector<ContourPoint> nodes_;
    Eigen::MatrixXd matrix_;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
    double gauss_residual_ = 0.0;
    double condition_ = 0.0;
};

struct BemDiagnostics {
    std::size_t n = 0;
    double gauss_residual = 0.0;
    double condition_estimate = 0.0;
    double nu_route_gap = 0.0;  // |nu via X' N0 X  -  nu via Y' N0 Y|
};

struct BemDipoles {
    DipoleStrengths dipoles;
    BemDiagnostics diagnostics;
};

// mu, nu, kappa from the N0 traces of X and Y; S from the contour itself.
// The two nu integrals must agree within 1e-8 max(mu, kappa), otherwise
// ConsistencyError.
BemDipoles dipoles_bem(const Contour& c, std::size_t n);

// Trace of the exterior Neumann solution Psi (uniform vertical flow) on C,
// Psi = Y - 2 N0 Y, shifted to zero arclength mean.
BoundaryField boundary_potential(const NystromSystem& sys);
BoundaryField boundary_potential(const Contour& c, std::size_t n);

// mu = (S + \oint n_2 Psi dl) / (2 pi); independent of the additive constant in Psi.
double mu_flux_form(const Contour& c, std::size_t n);

}  // namespace twolayer
