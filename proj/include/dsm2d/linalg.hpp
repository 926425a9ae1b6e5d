#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "dsm2d/errors.hpp"

namespace dsm2d {

/// Dense complex LU factorization with partial pivoting. Row-major storage;
/// factor once, then solve for any number of right-hand sides. Problem sizes
/// here stay in the low thousands, so a plain O(n^3) loop nest is adequate.
class LuFactorization {
public:
    LuFactorization(std::vector<std::complex<double>> matrix, std::size_t n)
        : a_(std::move(matrix)), n_(n), pivot_(n) {
        if (a_.size() != n * n) throw UsageError("LuFactorization: matrix size mismatch");
        factor();
    }

    std::size_t size() const { return n_; }

    std::vector<std::complex<double>> solve(std::vector<std::complex<double>> b) const {
        if (b.size() != n_) throw UsageError("LuFactorization::solve: rhs size mismatch");
        for (std::size_t k = 0; k < n_; ++k) {
            if (pivot_[k] != k) std::swap(b[k], b[pivot_[k]]);
        }
        // forward substitution (unit lower triangle)
        for (std::size_t i = 1; i < n_; ++i) {
            std::complex<double> s = b[i];
            const std::complex<double>* row = &a_[i * n_];
            for (std::size_t j = 0; j < i; ++j) s -= row[j] * b[j];
            b[i] = s;
        }
        // back substitution
        for (std::size_t ii = n_; ii-- > 0;) {
            std::complex<double> s = b[ii];
            const std::complex<double>* row = &a_[ii * n_];
            for (std::size_t j = ii + 1; j < n_; ++j) s -= row[j] * b[j];
            b[ii] = s / row[ii];
        }
        return b;
    }

private:
    void factor() {
        double scale = 0.0;
        for (const auto& v : a_) scale = std::max(scale, std::abs(v));
        const double tiny = scale * 1e-300 + 1e-300;

        for (std::size_t k = 0; k < n_; ++k) {
            std::size_t p = k;
            double best = std::abs(a_[k * n_ + k]);
            for (std::size_t i = k + 1; i < n_; ++i) {
                const double mag = std::abs(a_[i * n_ + k]);
                if (mag > best) {
                    best = mag;
                    p = i;
                }
            }
            pivot_[k] = p;
            if (!(best > tiny))
                throw NumericalError("LuFactorization: singular matrix (zero pivot)");
            if (p != k)
                for (std::size_t j = 0; j < n_; ++j) std::swap(a_[k * n_ + j], a_[p * n_ + j]);

            const std::complex<double> inv_pivot = 1.0 / a_[k * n_ + k];
            for (std::size_t i = k + 1; i < n_; ++i) {
                const std::complex<double> m = a_[i * n_ + k] * inv_pivot;
                a_[i * n_ + k] = m;
                if (m != std::complex<double>(0.0, 0.0)) {
                    const std::complex<double>* src = &a_[k * n_ + k + 1];
                    std::complex<double>* dst = &a_[i * n_ + k + 1];
                    for (std::size_t j = 0; j < n_ - k - 1; ++j) dst[j] -= m * src[j];
                }
            }
        }
    }

    std::vector<std::complex<double>> a_;
    std::size_t n_;
    std::vector<std::size_t> pivot_;
};

}  // namespace dsm2d
