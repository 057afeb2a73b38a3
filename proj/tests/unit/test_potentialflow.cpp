#include "twolayer/errors.hpp"
#include "twolayer/potentialflow.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace twolayer;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;

Contour blob() {
    return make_fourier({{1.0, 0.0, 0.0, 0.8}, {0.15, 0.05, 0.1, 0.0}, {0.0, 0.04, -0.05, 0.02}});
}

// Mirror-symmetric about the y-axis: X(-t) = -X(t), Y(-t) = Y(t).
Contour symmetric_blob() {
    return make_fourier({{0.0, -1.0, 0.8, 0.0}, {0.0, 0.12, 0.1, 0.0}, {0.0, -0.04, 0.05, 0.0}});
}

}  // namespace

TEST_CASE("kernel on the unit circle is constant", "[potentialflow]") {
    const auto c = make_circle(1.0);
    for (double t : {-2.0, 0.1, 1.3}) {
        for (double s : {-1.0, 0.7, 2.9}) {
            CHECK_THAT(kernel_m10(t, s, c), WithinRel(1.0 / (2 * kPi), 1e-12));
        }
        CHECK_THAT(kernel_m10(t, t, c), WithinRel(1.0 / (2 * kPi), 1e-14));
    }
}

TEST_CASE("kernel is smooth across the diagonal", "[potentialflow]") {
    const auto c = make_ellipse(2.0, 1.0, 0.4);
    for (double t : {0.0, 0.9, 2.2}) {
        const double diag = kernel_m10(t, t, c);
        for (double h : {1e-2, 1e-3, 1e-4}) {
            CHECK(std::abs(kernel_m10(t, t + h, c) - diag) < 2.0 * h);
            CHECK(std::abs(kernel_m10(t, t - h, c) - diag) < 2.0 * h);
        }
    }
}

TEST_CASE("assembly enforces N and the Gauss law", "[potentialflow]") {
    CHECK_THROWS_AS(NystromSystem::assemble(make_circle(1), 16), DomainError);
    CHECK_THROWS_AS(NystromSystem::assemble(make_circle(1), 48), DomainError);

    const auto sys = NystromSystem::assemble(make_circle(1), 64);
    CHECK(sys.gauss_residual() <= 1e-12);

    for (const auto& c : {make_ellipse(2, 1, 0.3), blob()}) {
        const auto s = NystromSystem::assemble(c, 128);
        CHECK(s.gauss_residual() <= 1e-10);
        const BoundaryField m1 = s.apply_m10(BoundaryField::Ones(128));
        CHECK((m1.array() - 1.0).abs().maxCoeff() <= 1e-10);
    }

    const auto e = NystromSystem::assemble(make_ellipse(2, 1, 0), 128);
    CHECK(std::isfinite(e.condition_estimate()));
    CHECK(e.condition_estimate() < 100.0);
}

TEST_CASE("N0 applied to known fields", "[potentialflow]") {
    const auto sys = NystromSystem::assemble(blob(), 128);
    const BoundaryField half = sys.apply_n0(BoundaryField::Ones(128));
    CHECK((half.array() - 0.5).abs().maxCoeff() <= 1e-10);

    const BoundaryField f = sys.trace_x();
    const BoundaryField g = sys.trace_y();
    const BoundaryField lhs = sys.apply_n0(2.5 * f - 0.75 * g);
    const BoundaryField rhs = 2.5 * sys.apply_n0(f) - 0.75 * sys.apply_n0(g);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12);

    const auto circ = NystromSystem::assemble(make_circle(1), 64);
    const BoundaryField y = circ.trace_y();
    CHECK((circ.apply_n0(y) - y).cwiseAbs().maxCoeff() <= 1e-12);

    CHECK_THROWS_AS(sys.apply_n0(BoundaryField::Ones(64)), ValidationError);
}

TEST_CASE("dipoles of the circle and ellipse", "[potentialflow]") {
    const auto c = dipoles_bem(make_circle(1.0), 256).dipoles;
    CHECK_THAT(c.mu, WithinAbs(1.0, 1e-12));
    CHECK_THAT(c.nu, WithinAbs(0.0, 1e-12));
    CHECK_THAT(c.kappa, WithinAbs(1.0, 1e-12));
    CHECK_THAT(c.S, WithinRel(kPi, 1e-12));

    for (double th : {0.0, kPi / 6, kPi / 4, 1.1, 2.5}) {
        const auto bem = dipoles_bem(make_ellipse(2, 1, th), 256);
        const auto exact = analytic_dipoles_ellipse(2, 1, th);
        CHECK_THAT(bem.dipoles.mu, WithinAbs(exact.mu, 1e-7));
        CHECK_THAT(bem.dipoles.nu, WithinAbs(exact.nu, 1e-7));
        CHECK_THAT(bem.dipoles.kappa, WithinAbs(exact.kappa, 1e-7));
        CHECK(bem.diagnostics.nu_route_gap <= 1e-8);
    }
}

TEST_CASE("spectral convergence on a generic contour", "[potentialflow]") {
    const auto shape = make_fourier({{1.0, 0.0, 0.0, 0.5}, {0.2, 0.0, 0.0, 0.1},
                                     {0.0, 0.06, 0.05, 0.0}, {0.03, 0.0, 0.0, 0.02}});
    const double ref = dipoles_bem(shape, 1024).dipoles.mu;
    // N = 32 under-resolves this shape and the Gauss-law guard rejects it
    CHECK_THROWS_AS(dipoles_bem(shape, 32), ConsistencyError);
    const double e64 = std::abs(dipoles_bem(shape, 64).dipoles.mu - ref);
    const double e128 = std::abs(dipoles_bem(shape, 128).dipoles.mu - ref);
    INFO("e64 = " << e64 << ", e128 = " << e128);
    CHECK(e64 > 1e-13);
    CHECK(e128 / e64 < 1e-2);
}

TEST_CASE("symmetry, reflection and scaling of dipoles", "[potentialflow]") {
    const auto sym = dipoles_bem(symmetric_blob(), 256).dipoles;
    CHECK(std::abs(sym.nu) <= 1e-9 * sym.mu);

    const auto c = blob();
    const auto d = dipoles_bem(c, 256).dipoles;
    const auto r = dipoles_bem(c.reflected_about_y_axis(), 256).dipoles;
    CHECK(std::abs(d.nu) > 1e-3);
    CHECK_THAT(r.nu, WithinRel(-d.nu, 1e-9));
    CHECK_THAT(r.mu, WithinRel(d.mu, 1e-10));
    CHECK_THAT(r.kappa, WithinRel(d.kappa, 1e-10));
    CHECK_THAT(r.S, WithinRel(d.S, 1e-12));

    const auto s = dipoles_bem(c.scaled(1.7), 256).dipoles;
    CHECK_THAT(s.mu, WithinRel(1.7 * 1.7 * d.mu, 1e-10));
    CHECK_THAT(s.nu, WithinRel(1.7 * 1.7 * d.nu, 1e-10));
    CHECK_THAT(s.kappa, WithinRel(1.7 * 1.7 * d.kappa, 1e-10));

    CHECK(d.mu > 0.0);
    CHECK((d.delta() > 0.0 && d.delta() < 1.0));
}

TEST_CASE("boundary potential and the flux form of mu", "[potentialflow]") {
    const auto psi = boundary_potential(make_circle(1.0), 64);
    for (int i = 0; i < 64; ++i) {
        CHECK_THAT(psi(i), WithinAbs(-std::sin(2 * kPi * i / 64), 1e-8));
    }

    for (const auto& c : {make_ellipse(2, 1, 0.5), blob(), symmetric_blob()}) {
        CHECK_THAT(mu_flux_form(c, 256), WithinAbs(dipoles_bem(c, 256).dipoles.mu, 1e-8));
    }

    // zero arclength mean; a constant shift leaves the flux unchanged
    const auto sys = NystromSystem::assemble(blob(), 256);
    const BoundaryField p = boundary_potential(sys);
    double mean = 0.0, len = 0.0, flux0 = 0.0, flux1 = 0.0;
    for (std::size_t i = 0; i < 256; ++i) {
        const auto& n = sys.nodes()[i];
        const double dl = std::hypot(n.dx, n.dy);
        mean += dl * p(static_cast<Eigen::Index>(i));
        len += dl;
        flux0 += n.dx * p(static_cast<Eigen::Index>(i));
        flux1 += n.dx * (p(static_cast<Eigen::Index>(i)) + 3.0);
    }
    CHECK(std::abs(mean / len) < 1e-13);
    CHECK_THAT(flux1, WithinAbs(flux0, 1e-12));
}
