#pragma once

// Threshold functions for the perfect-matching conditions on connected graphs
// of even order n >= 4.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>

#include "qmatch/errors.hpp"
#include "qmatch/polynomial.hpp"

namespace qmatch {

// x^3 - (3n-7) x^2 + n(2n-7) x - 2(n^2 - 7n + 12)
inline Polynomial threshold_cubic(long long n) {
    const auto nd = static_cast<double>(n);
    return Polynomial::from_descending({1.0, -(3 * nd - 7), nd * (2 * nd - 7), -2 * (nd * nd - 7 * nd + 12)});
}

// r(n): largest root of threshold_cubic(n); equals q1(K1 ∨ (K_{n-3} ∪ K̄2)).
inline double r_of_n(long long n) {
    if (n < 4) {
        throw InputError("r_of_n: need n >= 4, got " + std::to_string(n));
    }
    return largest_real_root(threshold_cubic(n));
}

// 108 times the Cardano discriminant q^2/4 + p^3/27 of the depressed cubic.
// Negative for every n >= 4, so the cube roots below are genuinely complex.
inline double closed_form_discriminant(long long n) {
    const auto x = static_cast<double>(n);
    return -4 * std::pow(x, 6) + 84 * std::pow(x, 5) - 781 * std::pow(x, 4) + 4074 * std::pow(x, 3) -
           12633 * x * x + 22232 * x - 17376;
}

// r(n) by radicals, principal complex branches throughout. Returned unreduced so
// callers can inspect the imaginary residue.
inline std::complex<double> closed_form_r_complex(long long n) {
    using C = std::complex<double>;
    const auto x = static_cast<double>(n);
    const C disc_root = std::sqrt(C(closed_form_discriminant(n), 0.0));
    const C radicand = 63 * x + 3 * std::sqrt(3.0) * disc_root - 9 * x * x - 38.0;
    const C cube = std::pow(radicand, 1.0 / 3.0);
    return x + std::cbrt(4.0) * cube / 6.0 + std::cbrt(2.0) * (3 * x * x - 21 * x + 49) / (3.0 * cube) -
           7.0 / 3.0;
}

inline constexpr double closed_form_imag_tolerance = 1e-6;

inline double closed_form_r(long long n) {
    if (n < 4) {
        throw InputError("closed_form_r: need n >= 4, got " + std::to_string(n));
    }
    const auto z = closed_form_r_complex(n);
    if (std::abs(z.imag()) > closed_form_imag_tolerance) {
        throw NumericalError("closed_form_r: imaginary residue " + std::to_string(z.imag()) + " at n=" +
                             std::to_string(n));
    }
    return z.real();
}

namespace detail {
inline void require_even_order(long long n, const char* what) {
    if (n < 4 || n % 2 != 0) {
        throw InputError(std::string(what) + ": need even n >= 4, got " + std::to_string(n));
    }
}
}  // namespace detail

// Spectral threshold: q1(G) above it forces a perfect matching.
inline double q1_threshold(long long n) {
    detail::require_even_order(n, "q1_threshold");
    if (n == 6) {
        return 4 + 2 * std::numbers::sqrt3;
    }
    if (n == 8) {
        return 6 + 2 * std::sqrt(6.0);
    }
    return r_of_n(n);
}

// Edge threshold: more edges than this forces a perfect matching. Exact integer.
inline std::int64_t edge_threshold(long long n) {
    detail::require_even_order(n, "edge_threshold");
    if (n == 6) {
        return 9;
    }
    if (n == 8) {
        return 18;
    }
    return (n * n - 5 * n + 10) / 2;
}

// Largest root of x^2 + (2 - 2s - n) x + (sn - 4s) at n = 2s + 2.
inline double r_l(long long n) {
    const auto x = static_cast<double>(n);
    return (2 * x - 4 + std::sqrt(2 * x * (x - 2))) / 2;
}

}  // namespace qmatch
