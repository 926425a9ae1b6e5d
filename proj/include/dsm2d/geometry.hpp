#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace dsm2d {

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double two_pi = 2.0 * pi;

/// Plain 2D vector, double precision.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(Vec2 r) const { return {x + r.x, y + r.y}; }
    constexpr Vec2 operator-(Vec2 r) const { return {x - r.x, y - r.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    friend constexpr Vec2 operator*(double s, Vec2 v) { return {v.x * s, v.y * s}; }

    constexpr double dot(Vec2 r) const { return x * r.x + y * r.y; }
    double norm() const { return std::hypot(x, y); }

    Vec2 rotated(double angle) const {
        const double c = std::cos(angle), s = std::sin(angle);
        return {c * x - s * y, s * x + c * y};
    }

    constexpr bool operator==(const Vec2&) const = default;
};

inline Vec2 unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }

namespace detail {

// 20-point Gauss-Legendre nodes/weights on [-1,1]; used for the smooth
// pieces of the disk/rectangle overlap integral and the MoM cell quadrature.
inline constexpr std::array<double, 10> gauss20_x = {
    0.0765265211334973, 0.2277858511416451, 0.3737060887154196, 0.5108670019508271,
    0.6360536807265150, 0.7463319064601508, 0.8391169718222188, 0.9122344282513259,
    0.9639719272779138, 0.9931285991850949};
inline constexpr std::array<double, 10> gauss20_w = {
    0.1527533871307258, 0.1491729864726037, 0.1420961093183820, 0.1316886384491766,
    0.1181945319615184, 0.1019301198172404, 0.0832767415767048, 0.0626720483341091,
    0.0406014298003869, 0.0176140071391521};

template <class F>
double gauss20(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < gauss20_x.size(); ++i)
        acc += gauss20_w[i] * (f(mid + half * gauss20_x[i]) + f(mid - half * gauss20_x[i]));
    return acc * half;
}

}  // namespace detail

// Area of the intersection of a disk with an axis-aligned rectangle.
// The vertical extent of the disk slab at abscissa x is clamped to the
// rectangle; the clamped integrand is piecewise smooth with kinks where the
// circle crosses y = ylo or y = yhi, so the x-range is split at those
// crossings and each smooth piece is integrated with Gauss-Legendre.
// Accurate to ~1e-6 relative (limited by the sqrt behaviour at the lateral
// extremes of the disk), which is far below the MoM discretization error.
inline double disk_rect_overlap_area(Vec2 center, double radius, Vec2 rect_lo, Vec2 rect_hi) {
    if (radius <= 0.0) return 0.0;
    const double lo = std::max(rect_lo.x, center.x - radius);
    const double hi = std::min(rect_hi.x, center.x + radius);
    if (lo >= hi) return 0.0;

    std::vector<double> cuts = {lo, hi};
    for (double yline : {rect_lo.y, rect_hi.y}) {
        const double c = std::abs(yline - center.y);
        if (c < radius) {
            const double dx = std::sqrt(radius * radius - c * c);
            for (double xc : {center.x - dx, center.x + dx})
                if (xc > lo && xc < hi) cuts.push_back(xc);
        }
    }
    std::sort(cuts.begin(), cuts.end());

    auto strip_height = [&](double x) {
        const double dx = x - center.x;
        const double s = std::sqrt(std::max(0.0, radius * radius - dx * dx));
        const double top = std::min(rect_hi.y, center.y + s);
        const double bot = std::max(rect_lo.y, center.y - s);
        return std::max(0.0, top - bot);
    };

    double area = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        area += detail::gauss20(strip_height, cuts[i], cuts[i + 1]);
    return area;
}

}  // namespace dsm2d
