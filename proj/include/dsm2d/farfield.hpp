#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "dsm2d/errors.hpp"
#include "dsm2d/geometry.hpp"
#include "dsm2d/scene.hpp"

namespace dsm2d {

using Complex = std::complex<double>;

enum class DataMode { monostatic, multistatic };

/// Far-field pattern samples. Mono-static: N entries, entry n belongs to the
/// receiver x_n with paired transmit d_n = -x_n. Multi-static: L x N entries,
/// row-major over (transmit l, receiver n).
struct FarFieldData {
    DataMode mode = DataMode::monostatic;
    std::size_t n_tx = 0;
    std::size_t n_rx = 0;
    std::vector<Complex> values;
    double k0 = 0.0;

    Complex& at(std::size_t l, std::size_t n) { return values[l * n_rx + n]; }
    const Complex& at(std::size_t l, std::size_t n) const { return values[l * n_rx + n]; }
    std::span<const Complex> row(std::size_t l) const {
        return {values.data() + l * n_rx, n_rx};
    }
};

namespace detail {

inline void require_unit(Vec2 v, const char* what) {
    if (std::abs(v.norm() - 1.0) > 1e-9)
        throw DomainError(std::string(what) + ": direction must be a unit vector");
}

}  // namespace detail

/// Small-obstacle far-field pattern for incidence d observed at x:
///   u_inf(x, d) = k0^2 (1+i) / (4 sqrt(k0 pi))
///                 * sum_m alpha_m^2 (eps_m - eps0)/sqrt(eps0 mu0) |D_m|
///                 * e^{i k0 (d - x) . r_m}
/// The remainder of the expansion is dropped.
inline Complex asymptotic_farfield(const Scene& scene, Vec2 transmit, Vec2 receive) {
    detail::require_unit(transmit, "asymptotic_farfield(transmit)");
    detail::require_unit(receive, "asymptotic_farfield(receive)");

    const Medium& med = scene.medium();
    const double k0 = med.wavenumber;
    const Complex prefactor =
        k0 * k0 * Complex(1.0, 1.0) / (4.0 * std::sqrt(k0 * pi));
    const double root_eps_mu = std::sqrt(med.eps0 * med.mu0);

    Complex sum = 0.0;
    const Vec2 q = transmit - receive;
    for (const Inhomogeneity& t : scene.inhomogeneities()) {
        const double amplitude = t.radius * t.radius *
                                 ((t.permittivity - med.eps0) / root_eps_mu) *
                                 t.reference_area;
        sum += amplitude * std::polar(1.0, k0 * q.dot(t.location));
    }
    return prefactor * sum;
}

/// Mono-static sweep: entry n is the far field for transmit -x_n observed at
/// x_n, so the per-scatterer phase reduces to e^{-2 i k0 x_n . r_m}.
inline FarFieldData monostatic_sweep(const Scene& scene, const DirectionSet& dirs) {
    if (!dirs.monostatic_pairing)
        throw UsageError("monostatic_sweep: direction set lacks mono-static pairing");

    FarFieldData data;
    data.mode = DataMode::monostatic;
    data.n_tx = data.n_rx = dirs.size();
    data.k0 = scene.medium().wavenumber;
    data.values.reserve(dirs.size());
    for (std::size_t n = 0; n < dirs.size(); ++n)
        data.values.push_back(asymptotic_farfield(scene, dirs.transmit(n), dirs.receive(n)));
    return data;
}

/// Multi-static matrix: entry (l, n) is the far field for transmit d_l
/// observed at x_n.
inline FarFieldData multistatic_matrix(const Scene& scene, const DirectionSet& tx,
                                       const DirectionSet& rx) {
    FarFieldData data;
    data.mode = DataMode::multistatic;
    data.n_tx = tx.size();
    data.n_rx = rx.size();
    data.k0 = scene.medium().wavenumber;
    data.values.reserve(tx.size() * rx.size());
    for (std::size_t l = 0; l < tx.size(); ++l)
        for (std::size_t n = 0; n < rx.size(); ++n)
            data.values.push_back(
                asymptotic_farfield(scene, tx.directions[l], rx.directions[n]));
    return data;
}

namespace detail {

// Deterministic standard-normal pairs: Box-Muller over the pinned
// mt19937_64 bit stream. std::normal_distribution is not used because its
// output sequence is implementation-defined.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

    std::pair<double, double> next_pair() {
        const double u1 = uniform_open();
        const double u2 = uniform_open();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return {r * std::cos(two_pi * u2), r * std::sin(two_pi * u2)};
    }

private:
    double uniform_open() {
        // (0, 1]: never returns 0, so log() stays finite.
        return (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
    }

    std::mt19937_64 rng_;
};

}  // namespace detail

/// Adds circular complex white Gaussian noise at the prescribed SNR. The
/// signal power is measured over the whole dataset, matching the "measured"
/// mode of the usual awgn tooling: per-entry noise variance is
/// sigma^2 = mean(|value|^2) / 10^(snr_db/10), split evenly between the real
/// and imaginary parts. snr_db = +infinity returns the data unchanged.
/// Deterministic for a fixed seed.
inline FarFieldData add_awgn(const FarFieldData& data, double snr_db, std::uint64_t seed) {
    if (data.values.empty()) throw UsageError("add_awgn: empty data");
    if (std::isnan(snr_db)) throw DomainError("add_awgn: snr_db must not be NaN");
    if (snr_db == std::numeric_limits<double>::infinity()) return data;

    double power = 0.0;
    for (const Complex& v : data.values) power += std::norm(v);
    power /= static_cast<double>(data.values.size());
    if (power == 0.0)
        throw UsageError("add_awgn: all-zero data, signal power undefined");

    const double sigma2 = power / std::pow(10.0, snr_db / 10.0);
    const double component_sigma = std::sqrt(0.5 * sigma2);

    FarFieldData noisy = data;
    detail::GaussianStream gauss(seed);
    for (Complex& v : noisy.values) {
        const auto [zr, zi] = gauss.next_pair();
        v += Complex(component_sigma * zr, component_sigma * zi);
    }
    return noisy;
}

}  // namespace dsm2d
