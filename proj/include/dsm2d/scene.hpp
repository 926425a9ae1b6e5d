#pragma once

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "dsm2d/errors.hpp"
#include "dsm2d/geometry.hpp"

namespace dsm2d {

/// Homogeneous background medium. All derived quantities are stored so that
/// downstream code never re-derives them inconsistently.
struct Medium {
    double mu0 = 0.0;                ///< permeability [H/m]
    double eps0 = 0.0;               ///< permittivity [F/m]
    double frequency = 0.0;          ///< [Hz]
    double wavelength = 0.0;         ///< [m]
    double wavenumber = 0.0;         ///< k0 [rad/m]
    double angular_frequency = 0.0;  ///< omega [rad/s]
};

/// Builds a Medium from (wavelength, mu0, eps0). The wave speed is
/// 1/sqrt(eps0*mu0); k0 = omega*sqrt(eps0*mu0) = 2*pi/wavelength by
/// construction, and the consistency of the two expressions is checked
/// to 1e-12 relative.
inline Medium make_medium(double wavelength, double mu0, double eps0) {
    if (!(wavelength > 0.0) || !(mu0 > 0.0) || !(eps0 > 0.0))
        throw DomainError("make_medium: wavelength, mu0 and eps0 must be positive");

    Medium m;
    m.mu0 = mu0;
    m.eps0 = eps0;
    m.wavelength = wavelength;
    const double c0 = 1.0 / std::sqrt(eps0 * mu0);
    m.frequency = c0 / wavelength;
    m.angular_frequency = two_pi * m.frequency;
    m.wavenumber = two_pi / wavelength;

    const double k_check = m.angular_frequency * std::sqrt(eps0 * mu0);
    if (std::abs(k_check - m.wavenumber) > 1e-12 * m.wavenumber)
        throw NumericalError("make_medium: inconsistent wavenumber derivation");
    return m;
}

/// A small circular dielectric inhomogeneity. The reference domain is the
/// unit disk, so reference_area is always pi; only the product
/// radius^2 * reference_area enters the forward model.
struct Inhomogeneity {
    Vec2 location;             ///< r_m [m]
    double radius = 0.0;       ///< alpha_m [m]
    double permittivity = 0.0; ///< eps_m [F/m]
    double reference_area = pi;

    Inhomogeneity() = default;
    Inhomogeneity(Vec2 loc, double alpha, double eps)
        : location(loc), radius(alpha), permittivity(eps) {
        if (!(radius > 0.0)) throw DomainError("Inhomogeneity: radius must be positive");
        if (!(permittivity > 0.0)) throw DomainError("Inhomogeneity: permittivity must be positive");
    }

    /// eps_m/eps0 - 1 (dimensionless contrast used by the volume solver).
    double contrast(const Medium& medium) const { return permittivity / medium.eps0 - 1.0; }

    // Small-obstacle admissibility: alpha*sqrt(eps_m/eps0) must be well
    // below lambda/2. Callers report ratios >= 1 as a warning, not an error.
    double small_obstacle_ratio(const Medium& medium) const {
        return radius * std::sqrt(permittivity / medium.eps0) / (0.5 * medium.wavelength);
    }
    bool is_small_obstacle(const Medium& medium) const { return small_obstacle_ratio(medium) < 1.0; }
};

/// Axis-aligned square region of interest.
struct Roi {
    Vec2 center;
    double side = 0.0;

    bool contains(Vec2 p) const {
        return std::abs(p.x - center.x) <= 0.5 * side && std::abs(p.y - center.y) <= 0.5 * side;
    }
};

/// Immutable collection of inhomogeneities inside a region of interest.
/// Construction verifies that all locations lie in the ROI and that no two
/// scatterers coincide; the minimum pairwise separation is kept for reports.
class Scene {
public:
    Scene(Medium medium, std::vector<Inhomogeneity> inhomogeneities, Roi roi)
        : medium_(medium), inhomogeneities_(std::move(inhomogeneities)), roi_(roi) {
        if (!(roi_.side > 0.0)) throw DomainError("Scene: ROI side must be positive");
        min_separation_ = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < inhomogeneities_.size(); ++i) {
            if (!roi_.contains(inhomogeneities_[i].location))
                throw DomainError("Scene: inhomogeneity location outside the region of interest");
            for (std::size_t j = i + 1; j < inhomogeneities_.size(); ++j) {
                const double d =
                    (inhomogeneities_[i].location - inhomogeneities_[j].location).norm();
                min_separation_ = std::min(min_separation_, d);
            }
        }
        if (inhomogeneities_.size() >= 2 && !(min_separation_ > 0.0))
            throw DomainError("Scene: coincident inhomogeneities (zero separation)");
    }

    const Medium& medium() const { return medium_; }
    const std::vector<Inhomogeneity>& inhomogeneities() const { return inhomogeneities_; }
    const Roi& roi() const { return roi_; }
    std::size_t size() const { return inhomogeneities_.size(); }

    /// Minimum pairwise distance between scatterer centers (+inf for M < 2).
    double min_separation() const { return min_separation_; }

private:
    Medium medium_;
    std::vector<Inhomogeneity> inhomogeneities_;
    Roi roi_;
    double min_separation_;
};

/// A set of N unit observation directions on an arc of the unit circle.
/// When monostatic_pairing is set, the transmit direction paired with
/// x_n is d_n = -x_n.
struct DirectionSet {
    std::vector<Vec2> directions;
    double arc_start = 0.0;
    double arc_end = 0.0;
    bool monostatic_pairing = false;

    std::size_t size() const { return directions.size(); }
    Vec2 receive(std::size_t n) const { return directions[n]; }
    Vec2 transmit(std::size_t n) const {
        return monostatic_pairing ? -directions[n] : directions[n];
    }
};

/// Uniformly spaced directions on [arc_start, arc_end]. A full circle
/// (arc length 2*pi) uses angles arc_start + 2*pi*(n-1)/N, omitting the
/// duplicate endpoint; shorter arcs include both endpoints.
inline DirectionSet make_direction_set(std::size_t n, double arc_start, double arc_end,
                                       bool monostatic) {
    if (n == 0) throw DomainError("make_direction_set: need at least one direction");
    if (!(arc_end > arc_start)) throw DomainError("make_direction_set: arc_end must exceed arc_start");

    DirectionSet set;
    set.arc_start = arc_start;
    set.arc_end = arc_end;
    set.monostatic_pairing = monostatic;
    set.directions.reserve(n);

    const double arc = arc_end - arc_start;
    const bool full_circle = std::abs(arc - two_pi) <= 1e-12;
    for (std::size_t k = 0; k < n; ++k) {
        double angle;
        if (full_circle)
            angle = arc_start + two_pi * static_cast<double>(k) / static_cast<double>(n);
        else if (n == 1)
            angle = arc_start;
        else
            angle = arc_start + arc * static_cast<double>(k) / static_cast<double>(n - 1);
        set.directions.push_back(unit_vector(angle));
    }
    return set;
}

/// Uniform pixel grid; the sampling point of pixel (ix, iy) is its center.
/// Linearized row-major: index = iy*nx + ix.
struct SamplingGrid {
    Vec2 origin;        ///< lower-left corner of the covered square
    double pixel = 0.0; ///< pixel side length
    std::size_t nx = 0;
    std::size_t ny = 0;

    std::size_t size() const { return nx * ny; }
    std::size_t index(std::size_t ix, std::size_t iy) const { return iy * nx + ix; }
    std::pair<std::size_t, std::size_t> unravel(std::size_t i) const { return {i % nx, i / nx}; }

    Vec2 center(std::size_t ix, std::size_t iy) const {
        return {origin.x + (static_cast<double>(ix) + 0.5) * pixel,
                origin.y + (static_cast<double>(iy) + 0.5) * pixel};
    }
    Vec2 center_of(std::size_t i) const {
        auto [ix, iy] = unravel(i);
        return center(ix, iy);
    }

    bool operator==(const SamplingGrid&) const = default;
};

inline SamplingGrid make_grid(Vec2 center, double side, std::size_t n_per_side) {
    if (!(side > 0.0)) throw DomainError("make_grid: side must be positive");
    if (n_per_side == 0) throw DomainError("make_grid: need at least one pixel per side");

    SamplingGrid g;
    g.pixel = side / static_cast<double>(n_per_side);
    g.origin = {center.x - 0.5 * side, center.y - 0.5 * side};
    g.nx = g.ny = n_per_side;
    return g;
}

}  // namespace dsm2d
