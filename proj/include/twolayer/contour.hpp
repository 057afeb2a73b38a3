#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace twolayer {

struct Vec2 {
    double x;
    double y;
};

// Harmonic j of a truncated Fourier contour:
//   X(t) += cos_x cos(j t) + sin_x sin(j t),  Y(t) += cos_y cos(j t) + sin_y sin(j t).
// There is no j = 0 term, so both coordinates have zero mean by construction.
struct FourierMode {
    double cos_x = 0.0;
    double sin_x = 0.0;
    double cos_y = 0.0;
    double sin_y = 0.0;
};

enum class ShapeKind { circle, ellipse, fourier };

// Position and first two parameter derivatives at one value of t.
struct ContourPoint {
    double t;
    double x, y;
    double dx, dy;
    double ddx, ddy;
};

struct ValidationReport {
    bool orientation_reversed = false;  // input was clockwise and has been flipped
    double min_speed = 0.0;             // min of sqrt(X'^2 + Y'^2) over the check grid
    std::size_t check_samples = 0;
};

// Smooth closed cross-section C = {X(t), Y(t)}, t in [-pi, pi), stored as
// exact trigonometric coefficients. Canonical shapes are degree-one
// trigonometric polynomials so they are represented without truncation.
// Immutable; every constructed instance is simple, counterclockwise and
// non-degenerate.
class Contour {
public:
    ShapeKind kind() const { return kind_; }
    std::span<const FourierMode> modes() const { return modes_; }
    const ValidationReport& report() const { return report_; }

    ContourPoint at(double t) const;

    // n uniform nodes t_j = 2 pi j / n.
    std::vector<ContourPoint> sample(std::size_t n) const;

    // Largest harmonic index, used to choose quadrature sizes.
    std::size_t degree() const { return modes_.size(); }

    // Bounding-box diagonal; the length scale for geometric tolerances.
    double diameter() const;

    // (X, Y) -> (-X(-t), Y(-t)); keeps counterclockwise orientation.
    Contour reflected_about_y_axis() const;

    Contour scaled(double factor) const;

    friend Contour make_circle(double r);
    friend Contour make_ellipse(double a0, double b0, double theta0);
    friend Contour make_fourier(std::vector<FourierMode> modes);

private:
    Contour(ShapeKind kind, std::vector<FourierMode> modes);

    ShapeKind kind_;
    std::vector<FourierMode> modes_;
    ValidationReport report_;
};

// X = r cos t, Y = r sin t.
Contour make_circle(double r);

// Ellipse with semi-axes a0 (along x before rotation) and b0, rotated clockwise
// by theta0. With this orientation the vertical dipole strength is
// (a0^2 cos^2 theta0 + b0^2 sin^2 theta0 + a0 b0) / 2.
Contour make_ellipse(double a0, double b0, double theta0);

// Throws ValidationError naming the offending sample pair if the curve
// self-intersects, or the offending sample if the speed vanishes.
Contour make_fourier(std::vector<FourierMode> modes);

// Plain-text coefficient list: one line per harmonic j = 1..J with
// `cos_x sin_x cos_y sin_y`. Blank lines and `#` comments are skipped.
std::vector<FourierMode> parse_fourier_coefficients(std::istream& in);
std::vector<FourierMode> read_fourier_file(const std::filesystem::path& path);

// Enclosed area, 1/2 \oint (X Y' - Y X') dt, trapezoidal rule.
double area(const Contour& c);

struct NormalTangent {
    Vec2 m;       // (-Y', X'), not normalized
    Vec2 normal;  // m / |m|, points into the interior
};

NormalTangent normal_and_tangent(const Contour& c, double t);

// Far-field coefficients of the exterior Neumann problem for the contour.
struct DipoleStrengths {
    double mu = 0.0;     // vertical dipole
    double nu = 0.0;     // cross term
    double kappa = 0.0;  // horizontal dipole
    double S = 0.0;      // enclosed area

    double delta() const;  // S / (2 pi mu)
};

DipoleStrengths analytic_dipoles_circle(double r);

// kappa here is the x-direction companion of the printed mu formula; it is
// checked against the boundary-element solver in the test suite.
DipoleStrengths analytic_dipoles_ellipse(double a0, double b0, double theta0);

}  // namespace twolayer
