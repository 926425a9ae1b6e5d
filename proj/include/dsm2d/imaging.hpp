#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dsm2d/bessel.hpp"
#include "dsm2d/errors.hpp"
#include "dsm2d/farfield.hpp"
#include "dsm2d/geometry.hpp"
#include "dsm2d/scene.hpp"

// Indicator maps of the direct sampling method. All maps are normalized by
// their grid maximum, so every map has values in [0,1] with maximum 1 and is
// invariant under a complex rescaling of the data.

namespace dsm2d {

enum class IndicatorKind { dsm_single, dsm_multi, dsm_mono, mdsm_mono, psi1, psi2 };

inline std::string indicator_name(IndicatorKind kind) {
    switch (kind) {
        case IndicatorKind::dsm_single: return "dsm-single";
        case IndicatorKind::dsm_multi: return "dsm-multi";
        case IndicatorKind::dsm_mono: return "dsm-mono";
        case IndicatorKind::mdsm_mono: return "mdsm-mono";
        case IndicatorKind::psi1: return "psi1";
        case IndicatorKind::psi2: return "psi2";
    }
    throw DomainError("indicator_name: unknown kind");
}

inline IndicatorKind indicator_from_name(const std::string& name) {
    for (IndicatorKind k : {IndicatorKind::dsm_single, IndicatorKind::dsm_multi,
                            IndicatorKind::dsm_mono, IndicatorKind::mdsm_mono,
                            IndicatorKind::psi1, IndicatorKind::psi2})
        if (indicator_name(k) == name) return k;
    throw DomainError("unknown indicator name: " + name);
}

/// Real-valued map over a sampling grid, normalized to [0,1] with max 1.
struct IndicatorMap {
    SamplingGrid grid;
    std::vector<double> values;  ///< row-major, values.size() == grid.size()
    IndicatorKind kind = IndicatorKind::dsm_single;

    /// Linear index of the maximum; ties resolved to the lowest index.
    std::size_t argmax_index() const {
        std::size_t best = 0;
        for (std::size_t i = 1; i < values.size(); ++i)
            if (values[i] > values[best]) best = i;
        return best;
    }
    Vec2 argmax_position() const { return grid.center_of(argmax_index()); }
};

namespace detail {

inline void normalize_by_max(std::vector<double>& values, const char* what) {
    double mx = 0.0;
    for (double v : values) mx = std::max(mx, v);
    if (!(mx > 0.0))
        throw DegenerateDataError(std::string(what) + ": indicator map is identically zero");
    for (double& v : values) v /= mx;
}

// |sum_n u_n e^{+i phase_scale k0 x_n . z}| / ||u|| on every pixel; the inner
// product conjugates the test function e^{-i phase_scale k0 x_n . z}.
inline std::vector<double> backpropagation_raw(std::span<const Complex> data,
                                               const DirectionSet& dirs,
                                               const SamplingGrid& grid, const Medium& medium,
                                               double phase_scale, const char* what) {
    if (data.size() != dirs.size())
        throw UsageError(std::string(what) + ": data length does not match direction count");

    double norm2 = 0.0;
    for (const Complex& v : data) norm2 += std::norm(v);
    if (!(norm2 > 0.0)) throw DegenerateDataError(std::string(what) + ": zero data vector");
    const double inv_norm = 1.0 / std::sqrt(norm2);

    const double k = phase_scale * medium.wavenumber;
    std::vector<double> raw(grid.size());
    for (std::size_t iy = 0; iy < grid.ny; ++iy) {
        for (std::size_t ix = 0; ix < grid.nx; ++ix) {
            const Vec2 z = grid.center(ix, iy);
            Complex acc = 0.0;
            for (std::size_t n = 0; n < dirs.size(); ++n)
                acc += data[n] * std::polar(1.0, k * dirs.directions[n].dot(z));
            raw[grid.index(ix, iy)] = std::abs(acc) * inv_norm;
        }
    }
    return raw;
}

}  // namespace detail

/// Classical single-transmit DSM indicator over one row of far-field data.
inline IndicatorMap dsm_single(std::span<const Complex> data, const DirectionSet& dirs,
                               const SamplingGrid& grid, const Medium& medium,
                               IndicatorKind kind = IndicatorKind::dsm_single) {
    IndicatorMap map{grid, detail::backpropagation_raw(data, dirs, grid, medium, 1.0, "dsm_single"),
                     kind};
    detail::normalize_by_max(map.values, "dsm_single");
    return map;
}

/// Multi-transmit DSM: pixelwise maximum of the per-transmit indicators.
inline IndicatorMap dsm_multi(const FarFieldData& data, const DirectionSet& tx,
                              const DirectionSet& rx, const SamplingGrid& grid,
                              const Medium& medium) {
    if (data.mode != DataMode::multistatic)
        throw UsageError("dsm_multi: multi-static data required");
    if (data.n_tx != tx.size() || data.n_rx != rx.size())
        throw UsageError("dsm_multi: data shape does not match direction sets");

    IndicatorMap map{grid, std::vector<double>(grid.size(), 0.0), IndicatorKind::dsm_multi};
    for (std::size_t l = 0; l < tx.size(); ++l) {
        const IndicatorMap single = dsm_single(data.row(l), rx, grid, medium);
        for (std::size_t i = 0; i < map.values.size(); ++i)
            map.values[i] = std::max(map.values[i], single.values[i]);
    }
    return map;
}

/// Mono-static DSM (test function e^{-i k0 x.z}); for a single scatterer at
/// r its maximum sits at the shifted location 2r.
inline IndicatorMap dsm_mono(const FarFieldData& data, const DirectionSet& dirs,
                             const SamplingGrid& grid, const Medium& medium) {
    if (data.mode != DataMode::monostatic)
        throw UsageError("dsm_mono: mono-static data required");
    IndicatorMap map{grid, detail::backpropagation_raw(data.values, dirs, grid, medium, 1.0,
                                                       "dsm_mono"),
                     IndicatorKind::dsm_mono};
    detail::normalize_by_max(map.values, "dsm_mono");
    return map;
}

/// Modified mono-static DSM (doubled-phase test function e^{-2i k0 x.z});
/// relocates the indicator peaks from 2r back to r.
inline IndicatorMap mdsm_mono(const FarFieldData& data, const DirectionSet& dirs,
                              const SamplingGrid& grid, const Medium& medium) {
    if (data.mode != DataMode::monostatic)
        throw UsageError("mdsm_mono: mono-static data required");
    IndicatorMap map{grid, detail::backpropagation_raw(data.values, dirs, grid, medium, 2.0,
                                                       "mdsm_mono"),
                     IndicatorKind::mdsm_mono};
    detail::normalize_by_max(map.values, "mdsm_mono");
    return map;
}

namespace detail {

template <class ArgFn>
IndicatorMap structure_map(const Scene& scene, const SamplingGrid& grid, const Medium& medium,
                           IndicatorKind kind, ArgFn&& bessel_argument, const char* what) {
    std::vector<double> raw(grid.size());
    for (std::size_t iy = 0; iy < grid.ny; ++iy) {
        for (std::size_t ix = 0; ix < grid.nx; ++ix) {
            const Vec2 z = grid.center(ix, iy);
            double acc = 0.0;
            for (const Inhomogeneity& t : scene.inhomogeneities()) {
                const double weight = t.radius * t.radius *
                                      (t.permittivity - medium.eps0) * t.reference_area;
                acc += weight * bessel_j0(bessel_argument(t.location, z));
            }
            raw[grid.index(ix, iy)] = std::abs(acc);
        }
    }
    normalize_by_max(raw, what);
    return {grid, std::move(raw), kind};
}

}  // namespace detail

/// |Psi_1| structure map: sum_m alpha_m^2 (eps_m - eps0) |D_m| J0(k0 |2 r_m - z|),
/// normalized by its grid maximum. Predicts the mono-static DSM map.
inline IndicatorMap psi1_map(const Scene& scene, const SamplingGrid& grid, const Medium& medium) {
    const double k0 = medium.wavenumber;
    return detail::structure_map(
        scene, grid, medium, IndicatorKind::psi1,
        [k0](Vec2 r, Vec2 z) { return k0 * (2.0 * r - z).norm(); }, "psi1_map");
}

/// |Psi_2| structure map: sum_m alpha_m^2 (eps_m - eps0) |D_m| J0(2 k0 |r_m - z|),
/// normalized by its grid maximum. Predicts the modified mono-static DSM map.
inline IndicatorMap psi2_map(const Scene& scene, const SamplingGrid& grid, const Medium& medium) {
    const double k0 = medium.wavenumber;
    return detail::structure_map(
        scene, grid, medium, IndicatorKind::psi2,
        [k0](Vec2 r, Vec2 z) { return 2.0 * k0 * (r - z).norm(); }, "psi2_map");
}

}  // namespace dsm2d
