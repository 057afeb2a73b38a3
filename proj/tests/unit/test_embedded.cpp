#include "twolayer/embedded.hpp"
#include "twolayer/errors.hpp"
#include "twolayer/potentialflow.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

using namespace twolayer;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const DipoleStrengths kCircle = analytic_dipoles_circle(1.0);

EmbeddedResult circle_at(double alpha, double b = 1.0, double k = 1.0) {
    const FluidConfig c(1.0 - alpha, b, k);
    return a_star(c, kCircle, spectral_context(c), 0.01);
}

}  // namespace

TEST_CASE("tau0", "[embedded]") {
    CHECK_THAT(tau0(FluidConfig(0.5, 1, 1)), WithinRel(3.009747286364956, 1e-12));
    CHECK_THAT(tau0(FluidConfig(0.03, 1, 1)), WithinRel(1.2473187191805775, 1e-12));
    CHECK_THAT(tau0(FluidConfig(0.95, 1, 1)) * 0.05 / 2, WithinAbs(1.0, 0.1));

    // dimensionless: depends on b and k only through kb
    const FluidConfig c(0.4, 0.8, 2.5);
    CHECK_THAT(tau0(c), WithinRel(spectral_context(c).tau1 / 2.5, 1e-12));
    CHECK_THAT(tau0(c), WithinRel(tau0(FluidConfig(0.4, 2.0, 1.0)), 1e-13));
}

TEST_CASE("solve_w", "[embedded]") {
    CHECK_THAT(std::tanh(solve_w(0.5, 3.01)), WithinRel(3.01 * 1.5 / (9.0601 + 0.5), 1e-14));
    CHECK_THAT(solve_w(0.5, 3.01), WithinAbs(0.512995, 1e-5));
    CHECK_THAT(solve_w(0.5, 1.2), WithinAbs(1.642, 1e-3));
    CHECK_THAT(solve_w(1e-12, 2.0), WithinRel(std::atanh(0.5), 1e-10));
    CHECK_THROWS_AS(solve_w(0.0, 2.0), DomainError);
    CHECK_THROWS_AS(solve_w(1.0, 2.0), DomainError);
    CHECK_THROWS_AS(solve_w(0.5, 1.0), DomainError);
}

TEST_CASE("a* for alpha = 0.5, 0.91, 0.92, 0.97", "[embedded]") {
    const auto r5 = circle_at(0.5);
    REQUIRE(r5.exists);
    CHECK_THAT(*r5.a_star, WithinRel(0.17045969415471394, 1e-11));
    CHECK_THAT(*r5.a_star_root, WithinAbs(*r5.a_star, 1e-9));
    CHECK_THAT(std::tanh(r5.w), WithinRel(r5.tau0 * (1 + r5.delta) / (r5.tau0 * r5.tau0 + r5.delta),
                                          1e-12));
    CHECK(r5.sigma.has_value());
    CHECK(*r5.sigma > 0.0);

    const auto r91 = circle_at(0.91);
    REQUIRE(r91.exists);
    CHECK_THAT(*r91.a_star, WithinRel(0.98477262088701583, 1e-10));

    for (double alpha : {0.92, 0.97}) {
        const auto r = circle_at(alpha);
        CHECK_FALSE(r.exists);
        CHECK_FALSE(r.a_star);
        CHECK_FALSE(r.diagnostic.empty());
    }
}

TEST_CASE("R vanishes at a* and is decreasing", "[embedded]") {
    const FluidConfig c(0.5, 1, 1);
    const auto ctx = spectral_context(c);
    const auto r = a_star(c, kCircle, ctx, 0.01);
    const double scale = kCircle.S * g_profile(-*r.a_star, ctx.tau1, 1.0).g;
    const auto rj = rcal_jcal({c, Side::upper, *r.a_star, 0.01, kCircle}, ctx);
    CHECK(std::abs(rj.Rcal) <= 1e-10 * std::abs(scale));

    double prev = rcal_reduced(0.0, c, kCircle, ctx);
    CHECK(prev > 0.0);
    for (int i = 1; i <= 100; ++i) {
        const double cur = rcal_reduced(i / 100.0, c, kCircle, ctx);
        CHECK(cur < prev);
        prev = cur;
    }
    // simple root
    const double h = 1e-6;
    const double slope = (rcal_reduced(*r.a_star + h, c, kCircle, ctx) -
                          rcal_reduced(*r.a_star - h, c, kCircle, ctx)) / (2 * h);
    CHECK(std::abs(slope) > 1.0);
}

TEST_CASE("routes agree for other shapes and scales", "[embedded]") {
    for (double b : {0.5, 1.0, 2.0}) {
        for (double k : {0.5, 1.0, 3.0}) {
            for (double alpha : {0.2, 0.5, 0.8}) {
                const FluidConfig c(1.0 - alpha, b, k);
                const auto dip = analytic_dipoles_ellipse(1.0, 0.6, 0.0);
                const auto r = a_star(c, dip, spectral_context(c), 0.01);
                CHECK(r.exists == r.a_star_root.has_value());
                if (r.exists) CHECK(std::abs(*r.a_star - *r.a_star_root) <= 1e-9 * b);
                CHECK(r.tau0 > 1.0);
            }
        }
    }
}

TEST_CASE("asymmetric contours have no embedded mode", "[embedded]") {
    const FluidConfig c(0.5, 1, 1);
    const auto r = a_star(c, analytic_dipoles_ellipse(2, 1, 0.3), spectral_context(c), 0.01);
    CHECK_FALSE(r.exists);
    CHECK(r.diagnostic.find("asymmetric") != std::string::npos);

    // BEM noise on a symmetric shape stays under the tolerance
    const auto bem = dipoles_bem(make_ellipse(2, 1, 0), 128).dipoles;
    CHECK(a_star(c, bem, spectral_context(c), 0.01).exists);

    CHECK_THROWS_AS(a_star({c, Side::lower, 0.5, 0.01, kCircle}, spectral_context(c)),
                    ValidationError);
}

TEST_CASE("f for the unit circle", "[embedded]") {
    CHECK_THAT(f_circle(0.1704, 3.01), WithinAbs(0.0, 1e-2));
    CHECK(f_circle(0.0, 2.0) == 6.0);
    CHECK_THAT(f_circle(1.0, 1.2), WithinAbs(3.6 - 3.88 * std::tanh(1.2), 1e-14));
    CHECK(f_circle(1.0, 1.2) > 0.0);
    CHECK_THROWS_AS(f_circle(-0.1, 2.0), DomainError);
}

TEST_CASE("small-alpha asymptote", "[embedded]") {
    CHECK_THAT(small_alpha_asymptote(0.05, 0.5, 1.0), WithinRel(9.375e-4, 1e-14));
    CHECK(small_alpha_asymptote(0.0, 0.5, 1.0) == 0.0);
    const auto r = circle_at(0.05);
    REQUIRE(r.exists);
    const double ratio = *r.a_star / small_alpha_asymptote(0.05, 0.5, 1.0);
    CHECK_THAT(ratio, WithinRel(1.0521, 1e-3));
    // closer to 1 as alpha shrinks
    const double ratio2 = *circle_at(0.02).a_star / small_alpha_asymptote(0.02, 0.5, 1.0);
    CHECK(std::abs(ratio2 - 1) < std::abs(ratio - 1));
}

TEST_CASE("f(a) sweep table", "[embedded]") {
    std::vector<double> grid;
    for (int i = 0; i <= 100; ++i) grid.push_back(i / 100.0);
    const std::vector<double> alphas{0.5, 0.91, 0.97};
    const auto rows = sweep_f(alphas, grid);
    REQUIRE(rows.size() == 303);

    auto sign_change = [&rows](std::size_t block) {
        int changes = 0;
        double at = -1;
        for (std::size_t i = block * 101 + 1; i < (block + 1) * 101; ++i) {
            if ((rows[i - 1].f > 0) != (rows[i].f > 0)) {
                ++changes;
                at = rows[i].a;
            }
        }
        return std::pair{changes, at};
    };
    const auto [c5, a5] = sign_change(0);
    CHECK(c5 == 1);
    CHECK_THAT(a5, WithinAbs(0.17, 0.01));
    CHECK(rows[0].has_root);
    const auto [c91, a91] = sign_change(1);
    CHECK(c91 == 1);
    CHECK(a91 > 0.95);
    const auto [c97, a97] = sign_change(2);
    CHECK(c97 == 0);
    CHECK_FALSE(rows[250].has_root);
    CHECK_FALSE(rows[250].a_star);
}

TEST_CASE("existence threshold in alpha", "[embedded]") {
    const double ac = critical_alpha(kCircle, 1.0, 1.0, 0.5, 0.97);
    CHECK_THAT(ac, WithinAbs(0.91423163434240565, 1e-4));
    CHECK(circle_at(ac - 2e-4).exists);
    CHECK_FALSE(circle_at(ac + 2e-4).exists);
    CHECK_THROWS_AS(critical_alpha(kCircle, 1.0, 1.0, 0.92, 0.97), DomainError);
}
