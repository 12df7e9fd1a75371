#pragma once

// Signless Laplacian, dominant eigenvalue, equitable partitions and quotient
// matrices.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qmatch/errors.hpp"
#include "qmatch/graph.hpp"
#include "qmatch/polynomial.hpp"

namespace qmatch {

// Dense symmetric matrix with nonnegative entries, row-major.
class SymMatrix {
public:
    SymMatrix() = default;

    SymMatrix(std::size_t order, std::vector<double> entries) : order_(order), a_(std::move(entries)) {
        if (a_.size() != order_ * order_) {
            throw InputError("SymMatrix: expected " + std::to_string(order_ * order_) + " entries");
        }
        for (std::size_t i = 0; i < order_; ++i) {
            for (std::size_t j = 0; j < order_; ++j) {
                if (a_[i * order_ + j] != a_[j * order_ + i]) {
                    throw InputError("SymMatrix: not symmetric at (" + std::to_string(i) + "," +
                                     std::to_string(j) + ")");
                }
                if (!(a_[i * order_ + j] >= 0.0)) {
                    throw InputError("SymMatrix: negative entry at (" + std::to_string(i) + "," +
                                     std::to_string(j) + ")");
                }
            }
        }
    }

    std::size_t order() const noexcept { return order_; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * order_ + j]; }
    std::span<const double> row(std::size_t i) const { return {a_.data() + i * order_, order_}; }

    // Copy with rows and columns reordered: result(i,j) = this(perm[i], perm[j]).
    SymMatrix permuted(std::span<const std::size_t> perm) const {
        std::vector<double> b(a_.size());
        for (std::size_t i = 0; i < order_; ++i) {
            for (std::size_t j = 0; j < order_; ++j) {
                b[i * order_ + j] = a_[perm[i] * order_ + perm[j]];
            }
        }
        return SymMatrix(order_, std::move(b));
    }

    void multiply(std::span<const double> x, std::span<double> y) const {
        for (std::size_t i = 0; i < order_; ++i) {
            const double* r = a_.data() + i * order_;
            double acc = 0.0;
            for (std::size_t j = 0; j < order_; ++j) {
                acc += r[j] * x[j];
            }
            y[i] = acc;
        }
    }

    friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

private:
    std::size_t order_ = 0;
    std::vector<double> a_;
};

// Q(G) = D(G) + A(G)
inline SymMatrix signless_laplacian(const Graph& g) {
    const std::size_t n = g.order();
    std::vector<double> q(n * n, 0.0);
    for (Vertex v = 0; v < n; ++v) {
        const auto nbrs = g.neighbors(v);
        q[v * n + v] = static_cast<double>(nbrs.size());
        for (Vertex w : nbrs) {
            q[v * n + w] = 1.0;
        }
    }
    return SymMatrix(n, std::move(q));
}

// ---------------------------------------------------------------------------
// Eigenvalues

// All eigenvalues, descending, by cyclic Jacobi rotations.
inline std::vector<double> symmetric_eigenvalues(const SymMatrix& m, int max_sweeps = 100) {
    const std::size_t n = m.order();
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        std::copy_n(m.row(i).begin(), n, a.begin() + static_cast<std::ptrdiff_t>(i * n));
    }
    auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };

    double total = 0.0;
    for (double v : a) {
        total += v * v;
    }
    bool converged = n <= 1;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off += 2 * at(p, q) * at(p, q);
            }
        }
        if (off <= 1e-30 * total) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) {
                    continue;
                }
                const double theta = (at(q, q) - at(p, p)) / (2 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                const double c = 1 / std::sqrt(t * t + 1);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = at(k, p);
                    const double akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = at(p, k);
                    const double aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    if (!converged) {
        throw NumericalError("symmetric_eigenvalues: Jacobi did not converge");
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) {
        ev[i] = at(i, i);
    }
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return ev;
}

struct EigenOptions {
    double tolerance = 1e-10;
    std::size_t max_iterations = 100000;
};

struct DominantEigenpair {
    enum class Method { power_iteration, jacobi };

    double value = 0.0;
    std::vector<double> vector;  // unit 2-norm; empty for the Jacobi fallback
    double residual = 0.0;       // ||M x - value x||_2
    std::size_t iterations = 0;
    Method method = Method::power_iteration;
};

// Power iteration from a fixed positive start, stopped when the Rayleigh
// residual drops below tol * max(1, lambda). Falls back to Jacobi if the cap is hit.
inline DominantEigenpair dominant_eigenpair(const SymMatrix& m, const EigenOptions& opts = {}) {
    const std::size_t n = m.order();
    if (n == 0) {
        throw InputError("dominant_eigenpair: empty matrix");
    }
    if (!(opts.tolerance > 0)) {
        throw InputError("dominant_eigenpair: tolerance must be positive");
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = 1.0 + 1e-3 * static_cast<double>((i * 7919) % 101) / 101.0;
    }
    auto normalize = [](std::vector<double>& v) {
        const double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
        for (double& e : v) {
            e /= norm;
        }
        return norm;
    };
    normalize(x);
    std::vector<double> y(n);
    DominantEigenpair out;
    for (std::size_t it = 1; it <= opts.max_iterations; ++it) {
        m.multiply(x, y);
        const double lambda = std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
        double r2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = y[i] - lambda * x[i];
            r2 += d * d;
        }
        const double residual = std::sqrt(r2);
        if (residual <= opts.tolerance * std::max(1.0, lambda)) {
            out.value = lambda;
            out.vector = std::move(x);
            out.residual = residual;
            out.iterations = it;
            return out;
        }
        if (normalize(y) == 0.0) {
            break;
        }
        std::swap(x, y);
    }
    out.value = symmetric_eigenvalues(m).front();
    out.method = DominantEigenpair::Method::jacobi;
    out.iterations = opts.max_iterations;
    return out;
}

inline double spectral_radius(const SymMatrix& m, double tol = 1e-10) {
    return dominant_eigenpair(m, EigenOptions{tol}).value;
}

// q1(G)
inline double q1(const Graph& g) { return spectral_radius(signless_laplacian(g)); }

// ---------------------------------------------------------------------------
// Partitions and quotients

class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<std::vector<std::size_t>> classes) : classes_(std::move(classes)) {
        for (const auto& c : classes_) {
            if (c.empty()) {
                throw InputError("Partition: empty class");
            }
        }
    }

    // Consecutive blocks of the given sizes: {0..s0-1}, {s0..s0+s1-1}, ...
    static Partition consecutive(std::span<const std::size_t> sizes) {
        std::vector<std::vector<std::size_t>> classes;
        std::size_t next = 0;
        for (std::size_t s : sizes) {
            std::vector<std::size_t> c(s);
            std::iota(c.begin(), c.end(), next);
            next += s;
            classes.push_back(std::move(c));
        }
        return Partition(std::move(classes));
    }

    static Partition singletons(std::size_t order) {
        std::vector<std::size_t> ones(order, 1);
        return consecutive(ones);
    }

    std::size_t size() const noexcept { return classes_.size(); }
    const std::vector<std::size_t>& operator[](std::size_t i) const { return classes_[i]; }
    const std::vector<std::vector<std::size_t>>& classes() const noexcept { return classes_; }

    std::vector<std::size_t> class_sizes() const {
        std::vector<std::size_t> out;
        for (const auto& c : classes_) {
            out.push_back(c.size());
        }
        return out;
    }

    // Throws unless the classes are disjoint and cover 0..order-1 exactly.
    void validate(std::size_t order) const {
        std::vector<bool> seen(order, false);
        std::size_t count = 0;
        for (const auto& c : classes_) {
            for (std::size_t i : c) {
                if (i >= order) {
                    throw InputError("Partition: index " + std::to_string(i) + " out of range");
                }
                if (seen[i]) {
                    throw InputError("Partition: index " + std::to_string(i) + " in two classes");
                }
                seen[i] = true;
                ++count;
            }
        }
        if (count != order) {
            throw InputError("Partition: classes do not cover all " + std::to_string(order) + " indices");
        }
    }

private:
    std::vector<std::vector<std::size_t>> classes_;
};

// Matrix of average block row sums. Not symmetric in general, but for a
// quotient of a symmetric matrix c_ij * n_i = c_ji * n_j, so it is similar to
// the symmetric matrix with entries sqrt(c_ij c_ji).
class QuotientMatrix {
public:
    QuotientMatrix() = default;
    QuotientMatrix(std::vector<double> entries, std::vector<std::size_t> class_sizes)
        : m_(class_sizes.size()), c_(std::move(entries)), sizes_(std::move(class_sizes)) {
        if (c_.size() != m_ * m_) {
            throw InputError("QuotientMatrix: entry count does not match class count");
        }
        for (double v : c_) {
            if (!(v >= 0.0)) {
                throw InputError("QuotientMatrix: negative entry");
            }
        }
    }

    std::size_t order() const noexcept { return m_; }
    double operator()(std::size_t i, std::size_t j) const { return c_[i * m_ + j]; }
    const std::vector<std::size_t>& class_sizes() const noexcept { return sizes_; }
    const std::vector<double>& entries() const noexcept { return c_; }

    SymMatrix symmetrized() const {
        std::vector<double> s(m_ * m_);
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = i; j < m_; ++j) {
                const double lhs = (*this)(i, j) * static_cast<double>(sizes_[i]);
                const double rhs = (*this)(j, i) * static_cast<double>(sizes_[j]);
                if (std::abs(lhs - rhs) > 1e-9 * std::max({1.0, lhs, rhs})) {
                    throw InputError("QuotientMatrix: not the quotient of a symmetric matrix at (" +
                                     std::to_string(i) + "," + std::to_string(j) + ")");
                }
                s[i * m_ + j] = s[j * m_ + i] = std::sqrt((*this)(i, j) * (*this)(j, i));
            }
        }
        return SymMatrix(m_, std::move(s));
    }

    friend bool operator==(const QuotientMatrix&, const QuotientMatrix&) = default;

private:
    std::size_t m_ = 0;
    std::vector<double> c_;
    std::vector<std::size_t> sizes_;
};

inline QuotientMatrix quotient_matrix(const SymMatrix& m, const Partition& p) {
    p.validate(m.order());
    const std::size_t k = p.size();
    std::vector<double> c(k * k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            double block = 0.0;
            for (std::size_t r : p[i]) {
                for (std::size_t col : p[j]) {
                    block += m(r, col);
                }
            }
            c[i * k + j] = block / static_cast<double>(p[i].size());
        }
    }
    return QuotientMatrix(std::move(c), p.class_sizes());
}

// Every row of every block has the same sum. Exact for integer-valued matrices.
inline bool is_equitable(const SymMatrix& m, const Partition& p) {
    p.validate(m.order());
    bool integral = true;
    for (std::size_t i = 0; i < m.order() && integral; ++i) {
        for (double v : m.row(i)) {
            if (v != std::floor(v)) {
                integral = false;
                break;
            }
        }
    }
    const double tol = integral ? 0.0 : 1e-9;
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = 0; j < p.size(); ++j) {
            double first = 0.0;
            bool have_first = false;
            for (std::size_t r : p[i]) {
                double sum = 0.0;
                for (std::size_t col : p[j]) {
                    sum += m(r, col);
                }
                if (!have_first) {
                    first = sum;
                    have_first = true;
                } else if (std::abs(sum - first) > tol) {
                    return false;
                }
            }
        }
    }
    return true;
}

inline double spectral_radius(const QuotientMatrix& c, double tol = 1e-10) {
    return spectral_radius(c.symmetrized(), tol);
}

// det(xI - C) by Gaussian elimination with partial pivoting.
inline double characteristic_value(const QuotientMatrix& c, double x) {
    const std::size_t n = c.order();
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a[i * n + j] = (i == j ? x : 0.0) - c(i, j);
        }
    }
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) {
                pivot = r;
            }
        }
        if (a[pivot * n + col] == 0.0) {
            return 0.0;
        }
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a[pivot * n + j], a[col * n + j]);
            }
            det = -det;
        }
        const double d = a[col * n + col];
        det *= d;
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] / d;
            if (f == 0.0) {
                continue;
            }
            for (std::size_t j = col; j < n; ++j) {
                a[r * n + j] -= f * a[col * n + j];
            }
        }
    }
    return det;
}

// Hadamard-style bound on |det(xI - C)|: product of the row 1-norms of xI - C.
inline double characteristic_scale(const QuotientMatrix& c, double x) {
    double scale = 1.0;
    for (std::size_t i = 0; i < c.order(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < c.order(); ++j) {
            row += std::abs((i == j ? x : 0.0) - c(i, j));
        }
        scale *= std::max(row, 1.0);
    }
    return scale;
}

// Coefficients of det(xI - C) via Faddeev-LeVerrier in long double; exact for
// the small integer quotients used here.
inline Polynomial characteristic_polynomial(const QuotientMatrix& c) {
    const std::size_t n = c.order();
    using Real = long double;
    std::vector<Real> mk(n * n, 0.0L);  // M_k, starting from M_0 = 0
    std::vector<Real> coeff(n + 1, 0.0L);  // coeff[n-k] multiplies x^(n-k)
    coeff[n] = 1.0L;
    std::vector<Real> am(n * n);
    for (std::size_t k = 1; k <= n; ++k) {
        // M_k = C M_{k-1} + c_{n-k+1} I
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                Real acc = 0.0L;
                for (std::size_t t = 0; t < n; ++t) {
                    acc += static_cast<Real>(c(i, t)) * mk[t * n + j];
                }
                am[i * n + j] = acc;
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            am[i * n + i] += coeff[n - k + 1];
        }
        mk = am;
        // c_{n-k} = -tr(C M_k) / k
        Real trace = 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t t = 0; t < n; ++t) {
                trace += static_cast<Real>(c(i, t)) * mk[t * n + i];
            }
        }
        coeff[n - k] = -trace / static_cast<Real>(k);
    }
    std::vector<double> out(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        out[i] = static_cast<double>(coeff[i]);
    }
    return Polynomial(std::move(out));
}

}  // namespace qmatch
