#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "qmatch/errors.hpp"

namespace qmatch {

// Real polynomial, coefficients in ascending order: c[0] + c[1] x + ... + c[d] x^d.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> ascending) : c_(std::move(ascending)) { trim(); }

    // Builds from highest-degree coefficient first, the order polynomials are written in.
    static Polynomial from_descending(std::vector<double> descending) {
        std::reverse(descending.begin(), descending.end());
        return Polynomial(std::move(descending));
    }

    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const std::vector<double>& coefficients() const noexcept { return c_; }
    double coefficient(int power) const {
        return power >= 0 && power < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(power)] : 0.0;
    }

    double operator()(double x) const {
        double acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            acc = acc * x + *it;
        }
        return acc;
    }

    // Sum of |c_i| |x|^i: the natural magnitude against which p(x) rounding is judged.
    double magnitude(double x) const {
        double acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            acc = acc * std::abs(x) + std::abs(*it);
        }
        return acc;
    }

    Polynomial derivative() const {
        std::vector<double> d;
        for (std::size_t i = 1; i < c_.size(); ++i) {
            d.push_back(static_cast<double>(i) * c_[i]);
        }
        return Polynomial(std::move(d));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0.0) {
            c_.pop_back();
        }
    }

    std::vector<double> c_;
};

namespace detail {

// Root of p on [a,b] given p(a), p(b) of opposite sign (or one zero).
inline double bisect_root(const Polynomial& p, double a, double b) {
    double fa = p(a);
    if (fa == 0.0) {
        return a;
    }
    if (p(b) == 0.0) {
        return b;
    }
    for (int it = 0; it < 2000; ++it) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) {
            break;
        }
        const double fm = p(mid);
        if (fm == 0.0) {
            return mid;
        }
        if ((fm < 0) == (fa < 0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    double x = 0.5 * (a + b);
    // Newton polish, kept only when it improves the residual.
    const Polynomial dp = p.derivative();
    for (int it = 0; it < 3; ++it) {
        const double slope = dp(x);
        if (slope == 0.0) {
            break;
        }
        const double step = x - p(x) / slope;
        if (!(std::abs(p(step)) < std::abs(p(x)))) {
            break;
        }
        x = step;
    }
    return x;
}

inline double cauchy_bound(const Polynomial& p) {
    const auto& c = p.coefficients();
    const double lead = std::abs(c.back());
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        m = std::max(m, std::abs(c[i]) / lead);
    }
    return 1.0 + m;
}

}  // namespace detail

// All real roots in ascending order. Each monotone stretch between consecutive
// critical points is bracketed and bisected; a critical point where p vanishes
// to rounding is reported as a repeated root.
inline std::vector<double> real_roots(const Polynomial& p) {
    if (p.is_zero()) {
        throw NumericalError("real_roots: zero polynomial");
    }
    if (p.degree() == 0) {
        return {};
    }
    if (p.degree() == 1) {
        return {-p.coefficient(0) / p.coefficient(1)};
    }
    const double bound = detail::cauchy_bound(p);
    std::vector<double> cuts{-bound};
    for (double c : real_roots(p.derivative())) {
        if (c > cuts.back() && c < bound) {
            cuts.push_back(c);
        }
    }
    cuts.push_back(bound);

    constexpr double touch_tol = 64 * std::numeric_limits<double>::epsilon();
    std::vector<double> roots;
    auto push = [&roots](double r) {
        if (roots.empty() || r > roots.back()) {
            roots.push_back(r);
        }
    };
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i];
        const double b = cuts[i + 1];
        const double fa = p(a);
        const double fb = p(b);
        if (i > 0 && std::abs(fa) <= touch_tol * p.magnitude(a)) {
            push(a);
            continue;
        }
        if ((fa < 0) != (fb < 0) || fb == 0.0) {
            push(detail::bisect_root(p, a, b));
        }
    }
    return roots;
}

inline double largest_real_root(const Polynomial& p) {
    const auto roots = real_roots(p);
    if (roots.empty()) {
        throw NumericalError("largest_real_root: no real root in Cauchy bracket");
    }
    return roots.back();
}

}  // namespace qmatch
