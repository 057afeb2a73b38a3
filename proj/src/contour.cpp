#include "twolayer/contour.hpp"

#include "twolayer/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

namespace twolayer {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t check_grid_size(std::size_t degree) {
    return std::max<std::size_t>(256, 16 * degree);
}

double signed_area(const std::vector<ContourPoint>& pts) {
    double acc = 0.0;
    for (const auto& p : pts) acc += p.x * p.dy - p.y * p.dx;
    return 0.5 * acc * kTwoPi / static_cast<double>(pts.size());
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const double vx = b.x - a.x, vy = b.y - a.y;
    const double wx = p.x - a.x, wy = p.y - a.y;
    const double len2 = vx * vx + vy * vy;
    double s = len2 > 0.0 ? (wx * vx + wy * vy) / len2 : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    return std::hypot(wx - s * vx, wy - s * vy);
}

double cross(Vec2 o, Vec2 a, Vec2 b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double segment_distance(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    const double d1 = cross(a, b, c), d2 = cross(a, b, d);
    const double d3 = cross(c, d, a), d4 = cross(c, d, b);
    if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 &&
        d4 != 0) {
        return 0.0;
    }
    return std::min({point_segment_distance(a, c, d), point_segment_distance(b, c, d),
                     point_segment_distance(c, a, b), point_segment_distance(d, a, b)});
}

// Pairwise test of non-adjacent polyline segments; throws on the first pair
// closer than tol.
void check_simple(const std::vector<ContourPoint>& pts, double tol) {
    const std::size_t n = pts.size();
    auto vertex = [&pts, n](std::size_t i) { return Vec2{pts[i % n].x, pts[i % n].y}; };
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = vertex(i), b = vertex(i + 1);
        const double ax0 = std::min(a.x, b.x) - tol, ax1 = std::max(a.x, b.x) + tol;
        const double ay0 = std::min(a.y, b.y) - tol, ay1 = std::max(a.y, b.y) + tol;
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;
            const Vec2 c = vertex(j), d = vertex(j + 1);
            if (std::max(c.x, d.x) < ax0 || std::min(c.x, d.x) > ax1 ||
                std::max(c.y, d.y) < ay0 || std::min(c.y, d.y) > ay1) {
                continue;
            }
            if (segment_distance(a, b, c, d) <= tol) {
                throw ValidationError("contour is not simple: segment at sample " +
                                      std::to_string(i) + " meets segment at sample " +
                                      std::to_string(j) + " of " + std::to_string(n));
            }
        }
    }
}

}  // namespace

Contour::Contour(ShapeKind kind, std::vector<FourierMode> modes)
    : kind_(kind), modes_(std::move(modes)) {
    for (const auto& m : modes_) {
        if (!std::isfinite(m.cos_x) || !std::isfinite(m.sin_x) || !std::isfinite(m.cos_y) ||
            !std::isfinite(m.sin_y)) {
            throw ValidationError("contour coefficients must be finite");
        }
    }
    if (modes_.empty()) {
        throw ValidationError("contour has no harmonics (degenerate point)");
    }

    const std::size_t n = check_grid_size(degree());
    report_.check_samples = n;
    auto pts = sample(n);

    if (signed_area(pts) < 0.0) {
        for (auto& m : modes_) {
            m.sin_x = -m.sin_x;
            m.sin_y = -m.sin_y;
        }
        report_.orientation_reversed = true;
        pts = sample(n);
    }

    const double diam = diameter();
    if (!(diam > 0.0)) {
        throw ValidationError("contour has zero extent");
    }

    double min_speed = std::numeric_limits<double>::infinity();
    std::size_t min_at = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double speed = std::hypot(pts[i].dx, pts[i].dy);
        if (speed < min_speed) {
            min_speed = speed;
            min_at = i;
        }
    }
    report_.min_speed = min_speed;
    if (!(min_speed > 1e-10 * diam)) {
        throw ValidationError("contour speed vanishes at sample " + std::to_string(min_at) +
                              " of " + std::to_string(n));
    }

    check_simple(pts, 1e-9 * diam);

    if (!(signed_area(pts) > 0.0)) {
        throw ValidationError("contour encloses no area");
    }
}

ContourPoint Contour::at(double t) const {
    ContourPoint p{t, 0, 0, 0, 0, 0, 0};
    for (std::size_t idx = 0; idx < modes_.size(); ++idx) {
        const double j = static_cast<double>(idx + 1);
        const double c = std::cos(j * t);
        const double s = std::sin(j * t);
        const auto& m = modes_[idx];
        p.x += m.cos_x * c + m.sin_x * s;
        p.y += m.cos_y * c + m.sin_y * s;
        p.dx += j * (-m.cos_x * s + m.sin_x * c);
        p.dy += j * (-m.cos_y * s + m.sin_y * c);
        p.ddx -= j * j * (m.cos_x * c + m.sin_x * s);
        p.ddy -= j * j * (m.cos_y * c + m.sin_y * s);
    }
    return p;
}

std::vector<ContourPoint> Contour::sample(std::size_t n) const {
    std::vector<ContourPoint> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        pts.push_back(at(kTwoPi * static_cast<double>(i) / static_cast<double>(n)));
    }
    return pts;
}

double Contour::diameter() const {
    const auto pts = sample(check_grid_size(degree()));
    double x0 = pts[0].x, x1 = pts[0].x, y0 = pts[0].y, y1 = pts[0].y;
    for (const auto& p : pts) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    return std::hypot(x1 - x0, y1 - y0);
}

Contour Contour::reflected_about_y_axis() const {
    // X'(t) = -X(-t), Y'(t) = Y(-t)
    auto modes = modes_;
    for (auto& m : modes) {
        m.cos_x = -m.cos_x;
        m.sin_y = -m.sin_y;
    }
    return Contour(kind_, std::move(modes));
}

Contour Contour::scaled(double factor) const {
    if (!(factor > 0.0) || !std::isfinite(factor)) {
        throw DomainError("scale factor must be positive");
    }
    auto modes = modes_;
    for (auto& m : modes) {
        m.cos_x *= factor;
        m.sin_x *= factor;
        m.cos_y *= factor;
        m.sin_y *= factor;
    }
    return Contour(kind_, std::move(modes));
}

Contour make_circle(double r) {
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw DomainError("circle radius must be positive, got " + std::to_string(r));
    }
    return Contour(ShapeKind::circle, {FourierMode{r, 0.0, 0.0, r}});
}

Contour make_ellipse(double a0, double b0, double theta0) {
    if (!(a0 > 0.0) || !(b0 > 0.0) || !std::isfinite(a0) || !std::isfinite(b0)) {
        throw DomainError("ellipse semi-axes must be positive");
    }
    if (!std::isfinite(theta0)) {
        throw DomainError("ellipse angle must be finite");
    }
    const double c = std::cos(theta0), s = std::sin(theta0);
    // (a0 cos t, b0 sin t) rotated by -theta0.
    return Contour(ShapeKind::ellipse, {FourierMode{a0 * c, b0 * s, -a0 * s, b0 * c}});
}

Contour make_fourier(std::vector<FourierMode> modes) {
    return Contour(ShapeKind::fourier, std::move(modes));
}

std::vector<FourierMode> parse_fourier_coefficients(std::istream& in) {
    std::vector<FourierMode> modes;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream row(line);
        row.imbue(std::locale::classic());
        FourierMode m;
        if (!(row >> m.cos_x >> m.sin_x >> m.cos_y >> m.sin_y)) {
            throw ValidationError("fourier coefficients line " + std::to_string(line_no) +
                                  ": expected four numbers");
        }
        std::string extra;
        if (row >> extra) {
            throw ValidationError("fourier coefficients line " + std::to_string(line_no) +
                                  ": unexpected trailing token '" + extra + "'");
        }
        modes.push_back(m);
    }
    if (modes.empty()) {
        throw ValidationError("fourier coefficients: no harmonics found");
    }
    return modes;
}

std::vector<FourierMode> read_fourier_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot read fourier file '" + path.string() + "'");
    }
    return parse_fourier_coefficients(in);
}

double area(const Contour& c) {
    return signed_area(c.sample(check_grid_size(c.degree())));
}

NormalTangent normal_and_tangent(const Contour& c, double t) {
    const auto p = c.at(t);
    const Vec2 m{-p.dy, p.dx};
    const double len = std::hypot(m.x, m.y);
    return {m, {m.x / len, m.y / len}};
}

double DipoleStrengths::delta() const {
    return S / (2.0 * std::numbers::pi * mu);
}

DipoleStrengths analytic_dipoles_circle(double r) {
    if (!(r > 0.0)) throw DomainError("circle radius must be positive");
    return {r * r, 0.0, r * r, std::numbers::pi * r * r};
}

DipoleStrengths analytic_dipoles_ellipse(double a0, double b0, double theta0) {
    if (!(a0 > 0.0) || !(b0 > 0.0)) throw DomainError("ellipse semi-axes must be positive");
    const double c = std::cos(theta0), s = std::sin(theta0);
    DipoleStrengths d;
    d.mu = 0.5 * (a0 * a0 * c * c + b0 * b0 * s * s + a0 * b0);
    d.nu = 0.5 * (a0 * a0 - b0 * b0) * s * c;
    d.kappa = 0.5 * (a0 * a0 * s * s + b0 * b0 * c * c + a0 * b0);
    d.S = std::numbers::pi * a0 * b0;
    return d;
}

}  // namespace twolayer
