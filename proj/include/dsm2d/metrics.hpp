#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "dsm2d/errors.hpp"
#include "dsm2d/geometry.hpp"
#include "dsm2d/imaging.hpp"
#include "dsm2d/scene.hpp"

namespace dsm2d {

/// Boolean pixel membership map over a sampling grid.
struct SupportMap {
    SamplingGrid grid;
    std::vector<std::uint8_t> member;  ///< row-major, 0/1

    std::size_t count() const {
        std::size_t c = 0;
        for (auto m : member) c += m != 0;
        return c;
    }
};

/// Jaccard scores (percent) over an ascending threshold list.
struct JaccardCurve {
    std::vector<double> thresholds;
    std::vector<double> scores;
};

/// A connected superlevel component reported by its strongest pixel.
struct Peak {
    std::size_t ix = 0;
    std::size_t iy = 0;
    Vec2 position;
    double value = 0.0;
};

/// Ground-truth support: pixel is a member iff its center lies within
/// distance alpha_m of some scatterer center.
inline SupportMap exact_support(const Scene& scene, const SamplingGrid& grid) {
    SupportMap s{grid, std::vector<std::uint8_t>(grid.size(), 0)};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Vec2 z = grid.center_of(i);
        for (const Inhomogeneity& t : scene.inhomogeneities()) {
            if ((z - t.location).norm() <= t.radius) {
                s.member[i] = 1;
                break;
            }
        }
    }
    return s;
}

/// Binarization of the thresholded indicator: member iff value >= kappa.
inline SupportMap threshold_map(const IndicatorMap& map, double kappa) {
    if (!(kappa >= 0.0 && kappa <= 1.0))
        throw DomainError("threshold_map: kappa must lie in [0,1]");
    SupportMap s{map.grid, std::vector<std::uint8_t>(map.values.size(), 0)};
    for (std::size_t i = 0; i < map.values.size(); ++i)
        s.member[i] = map.values[i] >= kappa ? 1 : 0;
    return s;
}

/// Jaccard index in percent: 100 |A and B| / |A or B|. Two empty sets count
/// as identical (100) to avoid the 0/0 case.
inline double jaccard(const SupportMap& a, const SupportMap& b) {
    if (!(a.grid == b.grid)) throw UsageError("jaccard: support maps on different grids");
    std::size_t inter = 0, uni = 0;
    for (std::size_t i = 0; i < a.member.size(); ++i) {
        const bool in_a = a.member[i] != 0, in_b = b.member[i] != 0;
        inter += in_a && in_b;
        uni += in_a || in_b;
    }
    if (uni == 0) return 100.0;
    return 100.0 * static_cast<double>(inter) / static_cast<double>(uni);
}

inline JaccardCurve jaccard_curve(const IndicatorMap& indicator, const SupportMap& exact,
                                  const std::vector<double>& thresholds) {
    JaccardCurve curve;
    double prev = -1.0;
    for (double kappa : thresholds) {
        if (!(kappa >= 0.0 && kappa <= 1.0))
            throw DomainError("jaccard_curve: thresholds must lie in [0,1]");
        if (!(kappa > prev)) throw DomainError("jaccard_curve: thresholds must be ascending");
        prev = kappa;
        curve.thresholds.push_back(kappa);
        curve.scores.push_back(jaccard(threshold_map(indicator, kappa), exact));
    }
    return curve;
}

/// Connected components (4-neighborhood) of the kappa-superlevel set, each
/// reported by its maximum pixel. Ordered by descending peak value, ties by
/// linear index; an empty superlevel set yields an empty list.
inline std::vector<Peak> peak_locations(const IndicatorMap& map, double kappa) {
    const SupportMap super = threshold_map(map, kappa);
    const SamplingGrid& g = map.grid;

    std::vector<std::uint8_t> visited(g.size(), 0);
    std::vector<Peak> peaks;
    std::vector<std::size_t> queue;

    for (std::size_t start = 0; start < g.size(); ++start) {
        if (!super.member[start] || visited[start]) continue;
        std::size_t best = start;
        queue.assign(1, start);
        visited[start] = 1;
        while (!queue.empty()) {
            const std::size_t i = queue.back();
            queue.pop_back();
            if (map.values[i] > map.values[best] ||
                (map.values[i] == map.values[best] && i < best))
                best = i;
            const auto [ix, iy] = g.unravel(i);
            const std::size_t neighbors[4] = {
                ix > 0 ? i - 1 : i, ix + 1 < g.nx ? i + 1 : i,
                iy > 0 ? i - g.nx : i, iy + 1 < g.ny ? i + g.nx : i};
            for (std::size_t nb : neighbors) {
                if (nb == i || visited[nb] || !super.member[nb]) continue;
                visited[nb] = 1;
                queue.push_back(nb);
            }
        }
        const auto [bx, by] = g.unravel(best);
        peaks.push_back({bx, by, g.center_of(best), map.values[best]});
    }

    std::sort(peaks.begin(), peaks.end(), [&g](const Peak& a, const Peak& b) {
        if (a.value != b.value) return a.value > b.value;
        return g.index(a.ix, a.iy) < g.index(b.ix, b.iy);
    });
    return peaks;
}

}  // namespace dsm2d
