#include "twolayer/potentialflow.hpp"

#include "twolayer/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

namespace twolayer {

namespace {

constexpr double kPi = std::numbers::pi;

double kernel_at(const ContourPoint& pt, const ContourPoint& ps, bool diagonal) {
    if (diagonal) {
        const double speed2 = pt.dx * pt.dx + pt.dy * pt.dy;
        return (pt.dx * pt.ddy - pt.dy * pt.ddx) / (2.0 * kPi * speed2);
    }
    const double rx = ps.x - pt.x;
    const double ry = ps.y - pt.y;
    const double dot = rx * (-ps.dy) + ry * ps.dx;
    return -dot / (kPi * (rx * rx + ry * ry));
}

double weight(std::size_t n) {
    return 2.0 * kPi / static_cast<double>(n);
}

}  // namespace

double kernel_m10(double t, double s, const Contour& c) {
    const auto pt = c.at(t);
    const auto ps = c.at(s);
    // Closer than this the difference quotient loses all its digits.
    const bool diagonal = std::abs(std::remainder(t - s, 2.0 * kPi)) < 1e-7;
    return kernel_at(pt, diagonal ? pt : ps, diagonal);
}

NystromSystem NystromSystem::assemble(const Contour& c, std::size_t n) {
    if (n < 32 || !std::has_single_bit(n)) {
        throw DomainError("node count N must be a power of two >= 32, got " + std::to_string(n));
    }
    NystromSystem sys;
    sys.nodes_ = c.sample(n);

    const double w = weight(n);
    const auto ni = static_cast<Eigen::Index>(n);
    sys.matrix_.resize(ni, ni);
    for (Eigen::Index i = 0; i < ni; ++i) {
        const auto& pt = sys.nodes_[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < ni; ++j) {
            sys.matrix_(i, j) = w * kernel_at(pt, sys.nodes_[static_cast<std::size_t>(j)], i == j);
        }
    }

    const Eigen::VectorXd row_sums = sys.matrix_.rowwise().sum();
    sys.gauss_residual_ = (row_sums.array() - 1.0).abs().maxCoeff();
    if (!(sys.gauss_residual_ <= 1e-8)) {
        throw ConsistencyError("Gauss law violated: max |M 1 - 1| = " +
                               std::to_string(sys.gauss_residual_));
    }

    sys.matrix_.diagonal().array() += 1.0;
    sys.lu_.compute(sys.matrix_);
    const double rcond = sys.lu_.rcond();
    if (!(rcond > 0.0)) {
        throw SolverError("Nystrom matrix is singular");
    }
    sys.condition_ = 1.0 / rcond;
    return sys;
}

BoundaryField NystromSystem::apply_n0(const BoundaryField& f) const {
    if (static_cast<std::size_t>(f.size()) != size()) {
        throw ValidationError("boundary field has " + std::to_string(f.size()) +
                              " values, system has " + std::to_string(size()) + " nodes");
    }
    return lu_.solve(f);
}

BoundaryField NystromSystem::apply_m10(const BoundaryField& f) const {
    if (static_cast<std::size_t>(f.size()) != size()) {
        throw ValidationError("boundary field has " + std::to_string(f.size()) +
                              " values, system has " + std::to_string(size()) + " nodes");
    }
    return matrix_ * f - f;
}

BoundaryField NystromSystem::trace_x() const {
    BoundaryField v(static_cast<Eigen::Index>(size()));
    for (std::size_t i = 0; i < size(); ++i) v(static_cast<Eigen::Index>(i)) = nodes_[i].x;
    return v;
}

BoundaryField NystromSystem::trace_y() const {
    BoundaryField v(static_cast<Eigen::Index>(size()));
    for (std::size_t i = 0; i < size(); ++i) v(static_cast<Eigen::Index>(i)) = nodes_[i].y;
    return v;
}

BemDipoles dipoles_bem(const Contour& c, std::size_t n) {
    const auto sys = NystromSystem::assemble(c, n);
    const BoundaryField n0x = sys.apply_n0(sys.trace_x());
    const BoundaryField n0y = sys.apply_n0(sys.trace_y());

    double int_dx_n0y = 0.0, int_dy_n0x = 0.0, int_dx_n0x = 0.0, int_dy_n0y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = sys.nodes()[i];
        const auto ii = static_cast<Eigen::Index>(i);
        int_dx_n0y += p.dx * n0y(ii);
        int_dy_n0x += p.dy * n0x(ii);
        int_dx_n0x += p.dx * n0x(ii);
        int_dy_n0y += p.dy * n0y(ii);
    }
    const double scale = weight(n) / kPi;

    BemDipoles out;
    auto& d = out.dipoles;
    d.mu = -scale * int_dx_n0y;
    d.kappa = scale * int_dy_n0x;
    d.nu = -scale * int_dx_n0x;
    const double nu_alt = scale * int_dy_n0y;
    d.S = area(c);

    out.diagnostics.n = n;
    out.diagnostics.gauss_residual = sys.gauss_residual();
    out.diagnostics.condition_estimate = sys.condition_estimate();
    out.diagnostics.nu_route_gap = std::abs(d.nu - nu_alt);

    const double tol = 1e-8 * std::max(d.mu, d.kappa);
    if (!(out.diagnostics.nu_route_gap <= tol)) {
        throw ConsistencyError("nu routes disagree: " + std::to_string(d.nu) + " vs " +
                               std::to_string(nu_alt) + " (N = " + std::to_string(n) + ")");
    }
    if (!(d.mu > 0.0)) {
        throw ConsistencyError("BEM vertical dipole strength is not positive");
    }
    return out;
}

BoundaryField boundary_potential(const NystromSystem& sys) {
    const BoundaryField y = sys.trace_y();
    BoundaryField psi = y - 2.0 * sys.apply_n0(y);
    double length = 0.0, moment = 0.0;
    for (std::size_t i = 0; i < sys.size(); ++i) {
        const auto& p = sys.nodes()[i];
        const double dl = std::hypot(p.dx, p.dy);
        length += dl;
        moment += dl * psi(static_cast<Eigen::Index>(i));
    }
    psi.array() -= moment / length;
    return psi;
}

BoundaryField boundary_potential(const Contour& c, std::size_t n) {
    return boundary_potential(NystromSystem::assemble(c, n));
}

double mu_flux_form(const Contour& c, std::size_t n) {
    const auto sys = NystromSystem::assemble(c, n);
    const BoundaryField psi = boundary_potential(sys);
    double flux = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        // n_2 dl = X' dt
        flux += sys.nodes()[i].dx * psi(static_cast<Eigen::Index>(i));
    }
    flux *= weight(n);
    return (area(c) + flux) / (2.0 * kPi);
}

}  // namespace twolayer
