#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "dsm2d/bessel.hpp"
#include "dsm2d/errors.hpp"
#include "dsm2d/farfield.hpp"
#include "dsm2d/geometry.hpp"
#include "dsm2d/linalg.hpp"
#include "dsm2d/scene.hpp"

// Method-of-moments solver for the 2D Lippmann-Schwinger equation
//   u(x) = e^{i k0 d.x} + k0^2 int chi(y) G(x,y) u(y) dy,
//   G(x,y) = (i/4) H0^(1)(k0 |x-y|),
// discretized by square-pixel collocation over the scatterer support.
// Boundary pixels carry an area-weighted contrast so the integrated
// polarizability of a disk is mesh-independent. The self term integrates G
// over the disk of equal area (Richmond's rule), off-diagonal entries use
// midpoint sampling. Scatterers are assumed well separated: cells belonging
// to different disks must not interpenetrate.

namespace dsm2d {

/// Interior solution of the volume integral equation: pixel centers covering
/// the scatterers, the contrast at each pixel and the total field there.
struct TotalFieldSolution {
    std::vector<Vec2> centers;
    std::vector<double> contrast;     ///< eps(y)/eps0 - 1, area-weighted on boundary pixels
    std::vector<Complex> field;       ///< total field u at the pixel centers
    double pixel_area = 0.0;
    double pixel_size = 0.0;
};

namespace detail {

inline Complex green2d(double k0, double r) { return Complex(0.0, 0.25) * hankel0_outgoing(k0 * r); }

// int_{|y| < a} (i/4) H0^(1)(k0 |y|) dy  with  a = sqrt(cell_area / pi):
// using d/dx [x H1(x)] = x H0(x) and x H1^(1)(x) -> 2i/pi as x -> 0,
//   int = (i pi a / (2 k0)) H1^(1)(k0 a) - 1/k0^2.
inline Complex green2d_self_integral(double k0, double cell_area) {
    const double a = std::sqrt(cell_area / pi);
    return Complex(0.0, 0.5 * pi * a / k0) * hankel1_outgoing(k0 * a) - 1.0 / (k0 * k0);
}

struct MomMesh {
    std::vector<Vec2> centers;
    std::vector<double> contrast;
    double h = 0.0;
};

inline MomMesh build_mom_mesh(const Scene& scene, std::size_t pixels_per_wavelength) {
    const Medium& med = scene.medium();
    double max_eps_rel = 1.0;
    for (const Inhomogeneity& t : scene.inhomogeneities())
        max_eps_rel = std::max(max_eps_rel, t.permittivity / med.eps0);
    // resolution is counted against the wavelength inside the densest target
    const double lambda_interior = med.wavelength / std::sqrt(max_eps_rel);
    const double h = lambda_interior / static_cast<double>(pixels_per_wavelength);

    MomMesh mesh;
    mesh.h = h;
    for (const Inhomogeneity& t : scene.inhomogeneities()) {
        const double chi = t.contrast(med);
        if (chi == 0.0) continue;
        // lattice anchored on the disk center: the staircase is 4-fold
        // symmetric, which cancels the first-moment discretization error
        const long span = static_cast<long>(std::ceil(t.radius / h)) + 1;
        for (long j = -span; j <= span; ++j) {
            for (long i = -span; i <= span; ++i) {
                const Vec2 lo{t.location.x + (static_cast<double>(i) - 0.5) * h,
                              t.location.y + (static_cast<double>(j) - 0.5) * h};
                const Vec2 hi{lo.x + h, lo.y + h};
                const double overlap = disk_rect_overlap_area(t.location, t.radius, lo, hi);
                if (overlap <= 0.0) continue;
                mesh.centers.push_back({lo.x + 0.5 * h, lo.y + 0.5 * h});
                mesh.contrast.push_back(chi * overlap / (h * h));
            }
        }
    }
    return mesh;
}

inline LuFactorization factor_mom_system(const MomMesh& mesh, double k0) {
    const std::size_t n = mesh.centers.size();
    const double cell_area = mesh.h * mesh.h;
    const Complex self = green2d_self_integral(k0, cell_area);

    std::vector<Complex> a(n * n);
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            const Complex kernel =
                (p == q) ? self
                         : green2d(k0, (mesh.centers[p] - mesh.centers[q]).norm()) * cell_area;
            a[p * n + q] = ((p == q) ? 1.0 : 0.0) - k0 * k0 * mesh.contrast[q] * kernel;
        }
    }
    return LuFactorization(std::move(a), n);
}

inline std::vector<Complex> incident_field(const MomMesh& mesh, double k0, Vec2 d) {
    std::vector<Complex> u;
    u.reserve(mesh.centers.size());
    for (const Vec2& y : mesh.centers) u.push_back(std::polar(1.0, k0 * d.dot(y)));
    return u;
}

inline Complex extract_farfield(const MomMesh& mesh, const std::vector<Complex>& u, double k0,
                                Vec2 receive) {
    // u_inf(x) = e^{i pi/4} / sqrt(8 pi k0) * k0^2 * sum chi u e^{-i k0 x.y} dA
    const Complex front = std::polar(1.0, 0.25 * pi) / std::sqrt(8.0 * pi * k0) * (k0 * k0);
    Complex acc = 0.0;
    for (std::size_t q = 0; q < mesh.centers.size(); ++q)
        acc += mesh.contrast[q] * u[q] * std::polar(1.0, -k0 * receive.dot(mesh.centers[q]));
    return front * acc * (mesh.h * mesh.h);
}

}  // namespace detail

/// Solves the volume integral equation for one plane-wave transmit.
inline TotalFieldSolution mom_solve(const Scene& scene, std::size_t pixels_per_wavelength,
                                    Vec2 transmit) {
    detail::require_unit(transmit, "mom_solve(transmit)");
    if (pixels_per_wavelength < 10)
        throw UsageError("mom_solve: need at least 10 pixels per interior wavelength");

    const double k0 = scene.medium().wavenumber;
    detail::MomMesh mesh = detail::build_mom_mesh(scene, pixels_per_wavelength);

    TotalFieldSolution sol;
    sol.pixel_size = mesh.h;
    sol.pixel_area = mesh.h * mesh.h;
    sol.centers = mesh.centers;
    sol.contrast = mesh.contrast;
    if (mesh.centers.empty()) return sol;  // zero contrast: u == incident everywhere

    const LuFactorization lu = detail::factor_mom_system(mesh, k0);
    sol.field = lu.solve(detail::incident_field(mesh, k0, transmit));
    return sol;
}

/// Far-field samples of the MoM solution at the given receivers for a single
/// transmit. The dense system is factored once per call.
inline std::vector<Complex> mom_farfield(const Scene& scene, std::size_t pixels_per_wavelength,
                                         Vec2 transmit, const DirectionSet& rx) {
    const double k0 = scene.medium().wavenumber;
    const TotalFieldSolution sol = mom_solve(scene, pixels_per_wavelength, transmit);

    std::vector<Complex> out(rx.size(), Complex(0.0, 0.0));
    if (sol.centers.empty()) return out;

    detail::MomMesh mesh{sol.centers, sol.contrast, sol.pixel_size};
    for (std::size_t n = 0; n < rx.size(); ++n)
        out[n] = detail::extract_farfield(mesh, sol.field, k0, rx.directions[n]);
    return out;
}

/// Mono-static MoM sweep (one solve per transmit; the factorization is
/// shared across all transmits).
inline FarFieldData mom_monostatic_sweep(const Scene& scene, std::size_t pixels_per_wavelength,
                                         const DirectionSet& dirs) {
    if (!dirs.monostatic_pairing)
        throw UsageError("mom_monostatic_sweep: direction set lacks mono-static pairing");
    if (pixels_per_wavelength < 10)
        throw UsageError("mom_monostatic_sweep: need at least 10 pixels per interior wavelength");

    const double k0 = scene.medium().wavenumber;
    FarFieldData data;
    data.mode = DataMode::monostatic;
    data.n_tx = data.n_rx = dirs.size();
    data.k0 = k0;
    data.values.assign(dirs.size(), Complex(0.0, 0.0));

    detail::MomMesh mesh = detail::build_mom_mesh(scene, pixels_per_wavelength);
    if (mesh.centers.empty()) return data;

    const LuFactorization lu = detail::factor_mom_system(mesh, k0);
    for (std::size_t n = 0; n < dirs.size(); ++n) {
        const auto u = lu.solve(detail::incident_field(mesh, k0, dirs.transmit(n)));
        data.values[n] = detail::extract_farfield(mesh, u, k0, dirs.receive(n));
    }
    return data;
}

/// Multi-static MoM matrix over (tx, rx); one factorization, L solves.
inline FarFieldData mom_multistatic_matrix(const Scene& scene, std::size_t pixels_per_wavelength,
                                           const DirectionSet& tx, const DirectionSet& rx) {
    if (pixels_per_wavelength < 10)
        throw UsageError("mom_multistatic_matrix: need at least 10 pixels per interior wavelength");

    const double k0 = scene.medium().wavenumber;
    FarFieldData data;
    data.mode = DataMode::multistatic;
    data.n_tx = tx.size();
    data.n_rx = rx.size();
    data.k0 = k0;
    data.values.assign(tx.size() * rx.size(), Complex(0.0, 0.0));

    detail::MomMesh mesh = detail::build_mom_mesh(scene, pixels_per_wavelength);
    if (mesh.centers.empty()) return data;

    const LuFactorization lu = detail::factor_mom_system(mesh, k0);
    for (std::size_t l = 0; l < tx.size(); ++l) {
        const auto u = lu.solve(detail::incident_field(mesh, k0, tx.directions[l]));
        for (std::size_t n = 0; n < rx.size(); ++n)
            data.at(l, n) = detail::extract_farfield(mesh, u, k0, rx.directions[n]);
    }
    return data;
}

}  // namespace dsm2d
