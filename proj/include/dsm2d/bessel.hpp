#pragma once

#include <cmath>
#include <complex>

#include "dsm2d/errors.hpp"
#include "dsm2d/geometry.hpp"

// Bessel functions J0, J1, Y0, Y1 and the outgoing Hankel kernels
// H0 = J0 + i*Y0, H1 = J1 + i*Y1.
//
// |x| <= 12: ascending power series (A&S 9.1.10-9.1.13). The largest series
// term at x = 12 is ~4e3, so double precision keeps the absolute error
// below ~1e-12 on the whole branch.
// |x| > 12: Hankel's large-argument expansion, summed as the complex series
// H_nu(x) ~ sqrt(2/(pi x)) e^{i(x - nu pi/2 - pi/4)} sum_m i^m a_m(nu)/x^m
// truncated at the smallest term; at x = 12 the smallest term is ~7e-12 and
// it decays fast for larger arguments.

namespace dsm2d {

namespace detail {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;
inline constexpr double series_asymptotic_split = 12.0;

// Both branches deliver J and Y together.
struct BesselPair {
    double j;
    double y;
};

inline BesselPair bessel01_series(double x, int order) {
    const double q = 0.25 * x * x;
    const double log_half_x = std::log(0.5 * x);  // callers guarantee x > 0 for Y

    if (order == 0) {
        // J0 = sum (-q)^k/(k!)^2,  Y0 = (2/pi)[(ln(x/2)+gamma) J0 + sum H_k (-1)^{k+1} q^k/(k!)^2]
        double term = 1.0, j = 1.0, ysum = 0.0, harmonic = 0.0;
        for (int k = 1; k <= 48; ++k) {
            term *= -q / (static_cast<double>(k) * k);
            harmonic += 1.0 / k;
            j += term;
            ysum -= harmonic * term;  // (-1)^{k+1} q^k/(k!)^2 = -term
            if (std::abs(term) < 1e-18) break;
        }
        return {j, (2.0 / pi) * ((log_half_x + euler_gamma) * j + ysum)};
    }

    // J1 = (x/2) sum (-q)^k/(k!(k+1)!)
    // Y1 = (2/pi) ln(x/2) J1 - 2/(pi x)
    //      - (x/(2 pi)) sum (-q)^k (H_k + H_{k+1} - 2 gamma + 2 gamma)/(k!(k+1)!) ... (A&S 9.1.11)
    double term = 1.0, jsum = 1.0;
    double hk = 0.0, hk1 = 1.0;
    double ysum = hk + hk1;  // k = 0 contribution of (H_k + H_{k+1}) term
    for (int k = 1; k <= 48; ++k) {
        term *= -q / (static_cast<double>(k) * (k + 1.0));
        hk += 1.0 / k;
        hk1 += 1.0 / (k + 1.0);
        jsum += term;
        ysum += (hk + hk1) * term;
        if (std::abs(term) < 1e-18) break;
    }
    const double j1 = 0.5 * x * jsum;
    const double y1 = (2.0 / pi) * ((log_half_x + euler_gamma) * j1 - 1.0 / x) -
                      (x / (2.0 * pi)) * ysum;
    return {j1, y1};
}

inline BesselPair bessel01_asymptotic(double x, int order) {
    const double mu = 4.0 * order * order;
    std::complex<double> term(1.0, 0.0), sum(1.0, 0.0);
    double prev_mag = 1.0;
    for (int m = 0; m < 40; ++m) {
        const double odd = 2.0 * m + 1.0;
        term *= std::complex<double>(0.0, 1.0) * ((mu - odd * odd) / (8.0 * (m + 1.0) * x));
        const double mag = std::abs(term);
        if (mag >= prev_mag) break;  // divergence onset: stop at the smallest term
        sum += term;
        prev_mag = mag;
        if (mag < 1e-18) break;
    }
    const double omega = x - 0.5 * order * pi - 0.25 * pi;
    const std::complex<double> h =
        std::sqrt(2.0 / (pi * x)) * std::polar(1.0, omega) * sum;
    return {h.real(), h.imag()};
}

inline BesselPair bessel01(double x, int order) {
    return x <= series_asymptotic_split ? bessel01_series(x, order)
                                        : bessel01_asymptotic(x, order);
}

}  // namespace detail

/// Bessel function of the first kind, order zero (even in x).
inline double bessel_j0(double x) {
    if (std::isnan(x)) throw DomainError("bessel_j0: NaN argument");
    x = std::abs(x);
    if (x == 0.0) return 1.0;
    return detail::bessel01(x, 0).j;
}

/// Bessel function of the first kind, order one (odd in x).
inline double bessel_j1(double x) {
    if (std::isnan(x)) throw DomainError("bessel_j1: NaN argument");
    const double ax = std::abs(x);
    if (ax == 0.0) return 0.0;
    const double v = detail::bessel01(ax, 1).j;
    return x < 0.0 ? -v : v;
}

/// Bessel function of the second kind, order zero; requires x > 0.
inline double bessel_y0(double x) {
    if (!(x > 0.0)) throw DomainError("bessel_y0: argument must be positive");
    return detail::bessel01(x, 0).y;
}

/// Bessel function of the second kind, order one; requires x > 0.
inline double bessel_y1(double x) {
    if (!(x > 0.0)) throw DomainError("bessel_y1: argument must be positive");
    return detail::bessel01(x, 1).y;
}

/// Outgoing Hankel kernel H0^(1)(x) = J0(x) + i Y0(x); requires x > 0.
inline std::complex<double> hankel0_outgoing(double x) {
    if (!(x > 0.0)) throw DomainError("hankel0_outgoing: argument must be positive");
    const auto [j, y] = detail::bessel01(x, 0);
    return {j, y};
}

/// Outgoing Hankel kernel H1^(1)(x) = J1(x) + i Y1(x); requires x > 0.
inline std::complex<double> hankel1_outgoing(double x) {
    if (!(x > 0.0)) throw DomainError("hankel1_outgoing: argument must be positive");
    const auto [j, y] = detail::bessel01(x, 1);
    return {j, y};
}

}  // namespace dsm2d
