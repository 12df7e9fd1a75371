#pragma once

// Numerical checks of each intermediate step in the extremal argument for the
// spectral perfect-matching threshold, run on concrete parameter instances.
//
// An instance fixes |S| = s and the odd component orders n1 >= ... >= nk of
// G - S with k >= s + 2. Its maximal graph is G' = K_s ∨ (K_n1 ∪ ... ∪ K_nk).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qmatch/errors.hpp"
#include "qmatch/graph.hpp"
#include "qmatch/spectral.hpp"
#include "qmatch/thresholds.hpp"

namespace qmatch {

class ProofInstance {
public:
    // Parts are sorted nonincreasing; all must be odd, k >= s + 2, n even.
    ProofInstance(std::size_t s, std::vector<std::size_t> parts) : s_(s), parts_(std::move(parts)) {
        std::sort(parts_.begin(), parts_.end(), std::greater<>());
        if (s_ < 1) {
            throw InputError("ProofInstance: s must be >= 1");
        }
        if (parts_.size() < s_ + 2) {
            throw InputError("ProofInstance: need k >= s + 2 components in " + describe());
        }
        for (std::size_t p : parts_) {
            if (p % 2 == 0) {
                throw InputError("ProofInstance: component orders must be odd in " + describe());
            }
        }
        if (n() % 2 != 0) {
            throw InputError("ProofInstance: total order must be even in " + describe());
        }
    }

    std::size_t s() const noexcept { return s_; }
    std::size_t k() const noexcept { return parts_.size(); }
    std::size_t n() const noexcept { return s_ + std::accumulate(parts_.begin(), parts_.end(), std::size_t{0}); }
    const std::vector<std::size_t>& parts() const noexcept { return parts_; }

    Graph graph() const { return proof_graph(s_, parts_); }

    // Partition {S, V(G1), ..., V(Gk)} of graph().
    Partition partition() const {
        std::vector<std::size_t> sizes{s_};
        sizes.insert(sizes.end(), parts_.begin(), parts_.end());
        return Partition::consecutive(sizes);
    }

    // "n=6 s=1 parts=[3,1,1]"
    std::string describe() const {
        std::string out = "n=" + std::to_string(n()) + " s=" + std::to_string(s_) + " parts=[";
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            out += (i ? "," : "") + std::to_string(parts_[i]);
        }
        return out + "]";
    }

    friend bool operator==(const ProofInstance&, const ProofInstance&) = default;

private:
    std::size_t s_;
    std::vector<std::size_t> parts_;
};

// ---------------------------------------------------------------------------
// Quotient matrices of the argument, written out from their closed forms.

// Partition {S, V(G1), ..., V(Gk)}: arrowhead with S row (n+s-2, n1, ..., nk).
inline QuotientMatrix build_m1(const ProofInstance& inst) {
    const std::size_t m = inst.k() + 1;
    const auto n = static_cast<double>(inst.n());
    const auto s = static_cast<double>(inst.s());
    std::vector<double> c(m * m, 0.0);
    c[0] = n + s - 2;
    for (std::size_t i = 1; i < m; ++i) {
        const auto ni = static_cast<double>(inst.parts()[i - 1]);
        c[i] = ni;
        c[i * m] = s;
        c[i * m + i] = 2 * ni + s - 2;
    }
    std::vector<std::size_t> sizes{inst.s()};
    sizes.insert(sizes.end(), inst.parts().begin(), inst.parts().end());
    return QuotientMatrix(std::move(c), std::move(sizes));
}

// Partition {V(G1), S, rest} when every component but G1 is a single vertex,
// so n1 = n - s - k + 1.
inline QuotientMatrix build_m3(std::size_t n, std::size_t s, std::size_t k) {
    if (s < 1 || k < 2 || n < s + k) {
        throw InputError("build_m3: need s >= 1, k >= 2, n >= s + k");
    }
    const std::size_t n1 = n - s - k + 1;
    const auto nd = static_cast<double>(n);
    const auto sd = static_cast<double>(s);
    const auto n1d = static_cast<double>(n1);
    return QuotientMatrix({2 * n1d + sd - 2, sd, 0,  //
                           n1d, nd + sd - 2, static_cast<double>(k - 1),
                           0, sd, sd},
                          {n1, s, k - 1});
}

// M3 at k = s + 2, i.e. n1 = n - 2s - 1.
inline QuotientMatrix build_m4(std::size_t n, std::size_t s) {
    if (n < 2 * s + 2) {
        throw InputError("build_m4: need n >= 2s + 2");
    }
    return build_m3(n, s, s + 2);
}

// Partition {S, V - S} of K_s ∨ K̄_{s+2} (n1 = 1, n = 2s + 2).
inline QuotientMatrix build_m5(std::size_t s) {
    if (s < 1) {
        throw InputError("build_m5: need s >= 1");
    }
    const auto sd = static_cast<double>(s);
    const double n = 2 * sd + 2;
    return QuotientMatrix({n + sd - 2, sd + 2, sd, sd}, {s, s + 2});
}

// ---------------------------------------------------------------------------
// Reports

struct ProofReport {
    std::string check;
    std::string subject;
    bool applicable = true;
    bool passed = true;
    std::vector<std::pair<std::string, double>> values;
    std::vector<std::string> failures;

    ProofReport(std::string check_name, std::string subject_text)
        : check(std::move(check_name)), subject(std::move(subject_text)) {}

    void record(std::string key, double value) { values.emplace_back(std::move(key), value); }

    void require(bool ok, const std::string& what) {
        if (!ok) {
            passed = false;
            failures.push_back(what);
        }
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["check"] = check;
        j["subject"] = subject;
        j["applicable"] = applicable;
        j["passed"] = passed;
        nlohmann::ordered_json v = nlohmann::ordered_json::object();
        for (const auto& [key, value] : values) {
            v[key] = value;
        }
        j["values"] = v;
        j["failures"] = failures;
        return j;
    }
};

inline constexpr double proof_root_margin = 1e-6;
inline constexpr double proof_equality_tol = 1e-8;
inline constexpr double proof_strict_margin = 1e-9;
inline constexpr double h_bound_minimum = 4.2843;
inline constexpr double h_bound_tol = 1e-3;

// r_f = rho(M1) against the lower bounds n+s-2, 2n1+2s-2 and
// 2n1+s-2 (the M1 diagonal), plus r_f = q1(G') and M1 = computed quotient.
inline ProofReport check_root_bounds(const ProofInstance& inst) {
    ProofReport rep{"root_bounds", inst.describe()};
    const QuotientMatrix m1 = build_m1(inst);
    const Graph g = inst.graph();
    const SymMatrix q = signless_laplacian(g);
    const QuotientMatrix computed = quotient_matrix(q, inst.partition());
    rep.require(computed == m1, "M1 differs from the computed quotient of Q(G')");
    rep.require(is_equitable(q, inst.partition()), "partition {S, parts} is not equitable");

    const double rf = spectral_radius(m1);
    const double q1g = spectral_radius(q);
    const auto n = static_cast<double>(inst.n());
    const auto s = static_cast<double>(inst.s());
    const auto n1 = static_cast<double>(inst.parts().front());
    rep.record("r_f", rf);
    rep.record("q1", q1g);
    rep.record("bound_n_s", n + s - 2);
    rep.record("bound_2n1_2s", 2 * n1 + 2 * s - 2);
    rep.record("bound_diagonal", 2 * n1 + s - 2);
    rep.require(std::abs(rf - q1g) <= proof_equality_tol, "r_f != q1(G')");
    rep.require(rf > n + s - 2 + proof_root_margin, "r_f <= n+s-2");
    rep.require(rf > 2 * n1 + 2 * s - 2 + proof_root_margin, "r_f <= 2n1+2s-2");
    rep.require(rf > 2 * n1 + s - 2 + proof_root_margin, "r_f <= 2n1+s-2");
    return rep;
}

// Moving two vertices from a later component into G1 strictly raises q1.
// The donor is the last component after G1 with at least three vertices
// (G_k itself whenever nk >= 3); not applicable if there is none.
inline ProofReport check_vertex_shift(const ProofInstance& inst) {
    ProofReport rep{"vertex_shift", inst.describe()};
    auto parts = inst.parts();
    std::size_t donor = 0;
    for (std::size_t j = parts.size(); j-- > 1;) {
        if (parts[j] >= 3) {
            donor = j;
            break;
        }
    }
    if (donor == 0) {
        rep.applicable = false;
        return rep;
    }
    parts.front() += 2;
    parts[donor] -= 2;
    const ProofInstance shifted(inst.s(), parts);
    const double before = q1(inst.graph());
    const double after = q1(shifted.graph());
    rep.subject += " -> " + shifted.describe();
    rep.record("q1_before", before);
    rep.record("q1_after", after);
    rep.require(after > before + proof_strict_margin, "q1 did not increase after the vertex shift");
    return rep;
}

// g~(x): characteristic polynomial of the M3 quotient after two trailing
// singletons are merged into G1.
inline double g_tilde(double x, double n, double s, double k, double n1) {
    return (x - 2 * n1 - s - 2) * ((x - n - s + 2) * (x - s) - s * (k - 3)) - (n1 + 2) * s * (x - s);
}

// Deleting two singleton components and growing G1 by two strictly raises q1.
// Needs two trailing singletons and k >= s + 4.
inline ProofReport check_merge_singletons(const ProofInstance& inst) {
    ProofReport rep{"merge_singletons", inst.describe()};
    const auto& parts = inst.parts();
    const std::size_t k = parts.size();
    if (k < inst.s() + 4 || parts[k - 1] != 1 || parts[k - 2] != 1) {
        rep.applicable = false;
        return rep;
    }
    std::vector<std::size_t> merged(parts.begin(), parts.end() - 2);
    merged.front() += 2;
    const ProofInstance next(inst.s(), merged);
    const double before = q1(inst.graph());
    const double after = q1(next.graph());
    rep.subject += " -> " + next.describe();
    rep.record("q1_before", before);
    rep.record("q1_after", after);
    rep.require(after > before + proof_strict_margin, "q1 did not increase after merging singletons");

    // When G1 is the only non-trivial component, also evaluate g~ at r_g directly.
    if (std::all_of(parts.begin() + 1, parts.end(), [](std::size_t p) { return p == 1; })) {
        const QuotientMatrix m3 = build_m3(inst.n(), inst.s(), k);
        const double rg = spectral_radius(m3);
        const double value = g_tilde(rg, static_cast<double>(inst.n()), static_cast<double>(inst.s()),
                                     static_cast<double>(k), static_cast<double>(parts.front()));
        rep.record("r_g", rg);
        rep.record("g_tilde_at_r_g", value);
        rep.require(value < 0, "g~(r_g) is not negative");
    }
    return rep;
}

// E(n,s) = r(n)^2 - (2s+4) r(n) - 2s^2 >= 4.2843 and h(r(n)) >= 0 with h the
// characteristic polynomial of M4.
inline ProofReport check_h_bound(std::size_t n, std::size_t s) {
    if (s < 1 || n < 2 * s + 4 || n % 2 != 0) {
        throw InputError("check_h_bound: need s >= 1, even n >= 2s + 4");
    }
    ProofReport rep{"h_bound", "n=" + std::to_string(n) + " s=" + std::to_string(s)};
    const double r = r_of_n(static_cast<long long>(n));
    const auto sd = static_cast<double>(s);
    const double e = r * r - (2 * sd + 4) * r - 2 * sd * sd;
    const double h = characteristic_value(build_m4(n, s), r);
    rep.record("r_n", r);
    rep.record("E", e);
    rep.record("h_at_r_n", h);
    rep.require(e >= h_bound_minimum - h_bound_tol, "r^2 - (2s+4) r - 2s^2 below 4.2843");
    rep.require(h >= -1e-6, "h(r(n)) negative");
    return rep;
}

// r(n) vs r_l(n): r > r_l for n >= 10, r < r_l for n in {6, 8}, equal at n = 4.
inline ProofReport check_case_analysis(std::size_t n) {
    if (n < 4 || n % 2 != 0) {
        throw InputError("check_case_analysis: need even n >= 4");
    }
    ProofReport rep{"case_analysis", "n=" + std::to_string(n)};
    const double r = r_of_n(static_cast<long long>(n));
    const double rl = r_l(static_cast<long long>(n));
    rep.record("r_n", r);
    rep.record("r_l", rl);
    if (n == 4) {
        rep.require(std::abs(r - rl) <= 1e-8, "r(4) != r_l(4)");
    } else if (n == 6 || n == 8) {
        rep.require(r < rl - proof_root_margin, "r(n) not below r_l(n)");
    } else {
        rep.require(r > rl + proof_root_margin, "r(n) not above r_l(n)");
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Instance sets

// Every valid instance with the given even total order.
inline std::vector<ProofInstance> instances_of_order(std::size_t n) {
    std::vector<ProofInstance> out;
    std::vector<std::size_t> parts;
    // Nonincreasing odd parts summing to `left`, each at most `cap`.
    std::function<void(std::size_t, std::size_t, std::size_t)> grow = [&](std::size_t s, std::size_t left,
                                                                          std::size_t cap) {
        if (left == 0) {
            if (parts.size() >= s + 2) {
                out.emplace_back(s, parts);
            }
            return;
        }
        for (std::size_t p = std::min(cap, left); p >= 1; --p) {
            if (p % 2 == 1) {
                parts.push_back(p);
                grow(s, left - p, p);
                parts.pop_back();
            }
        }
    };
    for (std::size_t s = 1; s + 3 <= n; ++s) {
        grow(s, n - s, n - s);
    }
    return out;
}

// Every valid instance with even order 4 <= n <= n_max.
inline std::vector<ProofInstance> exhaustive_instances(std::size_t n_max) {
    std::vector<ProofInstance> out;
    for (std::size_t n = 4; n <= n_max; n += 2) {
        auto batch = instances_of_order(n);
        out.insert(out.end(), batch.begin(), batch.end());
    }
    return out;
}

inline constexpr std::uint64_t proof_sample_seed = 20240611;

// Seeded sample: n uniform over even values in [n_min, n_max], s uniform over
// feasible values, k uniform with k ≡ s (mod 2), then the surplus n - s - k
// dealt to the components two vertices at a time.
inline std::vector<ProofInstance> sampled_instances(std::size_t count, std::size_t n_min, std::size_t n_max,
                                                    std::uint64_t seed = proof_sample_seed) {
    n_min = std::max<std::size_t>(n_min + n_min % 2, 4);
    if (n_max < n_min) {
        throw InputError("sampled_instances: empty order range");
    }
    std::mt19937_64 rng(seed);
    auto uniform = [&rng](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    std::vector<ProofInstance> out;
    out.reserve(count);
    while (out.size() < count) {
        const std::size_t n = 2 * uniform(n_min / 2, n_max / 2);
        const std::size_t s = uniform(1, (n - 2) / 2);
        // k in {s+2, s+4, ..., <= n-s}
        const std::size_t k = s + 2 + 2 * uniform(0, (n - 2 * s - 2) / 2);
        std::vector<std::size_t> parts(k, 1);
        for (std::size_t surplus = n - s - k; surplus > 0; surplus -= 2) {
            parts[uniform(0, k - 1)] += 2;
        }
        out.emplace_back(s, std::move(parts));
    }
    return out;
}

// Instance of order n whose G' has the largest q1 (first found on ties).
inline std::pair<ProofInstance, double> maximizing_instance(std::size_t n) {
    const auto all = instances_of_order(n);
    if (all.empty()) {
        throw InputError("maximizing_instance: no instances of order " + std::to_string(n));
    }
    std::size_t best = 0;
    double best_q1 = -1.0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        const double value = q1(all[i].graph());
        if (value > best_q1 + proof_strict_margin) {
            best = i;
            best_q1 = value;
        }
    }
    return {all[best], best_q1};
}

// ---------------------------------------------------------------------------
// Hand-expanded polynomials vs characteristic polynomials

struct TranscriptionEntry {
    std::string polynomial;
    std::string subject;
    double max_relative_error = 0.0;
    bool agrees = true;
};

inline constexpr double transcription_tol = 1e-9;

namespace detail {

inline std::vector<double> transcription_points(double n) {
    return {-1.0, 0.0, 0.5, 2.5, n / 2 + 0.25, n + 0.3, 2 * n + 1.7};
}

// Compares `expansion` with det(xI - M) at the sample points, relative to the
// Hadamard scale of xI - M.
template <typename Fn>
TranscriptionEntry compare_expansion(std::string name, std::string subject, const QuotientMatrix& m,
                                     double n, Fn&& expansion) {
    TranscriptionEntry e{std::move(name), std::move(subject)};
    for (double x : transcription_points(n)) {
        const double err = std::abs(expansion(x) - characteristic_value(m, x)) / characteristic_scale(m, x);
        e.max_relative_error = std::max(e.max_relative_error, err);
    }
    e.agrees = e.max_relative_error <= transcription_tol;
    return e;
}

}  // namespace detail

// f(x) expanded along the first row with the sign (-1)^i on the s*n_i
// cofactor terms. Does not match det(xI - M1); f_arrowhead does.
inline double f_alternating(const ProofInstance& inst, double x) {
    const auto s = static_cast<double>(inst.s());
    const auto n = static_cast<double>(inst.n());
    const auto& parts = inst.parts();
    auto diag = [&](std::size_t i) { return x - 2 * static_cast<double>(parts[i]) - s + 2; };
    double all = x - n - s + 2;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        all *= diag(i);
    }
    double total = all;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        double term = s * static_cast<double>(parts[i]);
        for (std::size_t j = 0; j < parts.size(); ++j) {
            if (j != i) {
                term *= diag(j);
            }
        }
        total += ((i + 1) % 2 == 0 ? 1.0 : -1.0) * term;
    }
    return total;
}

// Arrowhead determinant: every s*n_i cofactor term enters with a minus sign.
inline double f_arrowhead(const ProofInstance& inst, double x) {
    const auto s = static_cast<double>(inst.s());
    const auto n = static_cast<double>(inst.n());
    const auto& parts = inst.parts();
    auto diag = [&](std::size_t i) { return x - 2 * static_cast<double>(parts[i]) - s + 2; };
    double total = x - n - s + 2;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        total *= diag(i);
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
        double term = s * static_cast<double>(parts[i]);
        for (std::size_t j = 0; j < parts.size(); ++j) {
            if (j != i) {
                term *= diag(j);
            }
        }
        total -= term;
    }
    return total;
}

inline double g_expanded(double x, double n, double s, double k, double n1) {
    return (x - 2 * n1 - s + 2) * ((x - n - s + 2) * (x - s) - s * (k - 1)) - n1 * s * (x - s);
}

inline double h_expanded(double x, double n, double s) {
    return x * x * x + (s - 3 * n + 6) * x * x + (2 * n * n + n * s - 8 * n - 4 * s * s - 4 * s + 8) * x -
           2 * s * (n * n - 2 * n * s - 5 * n + s * s + 5 * s + 6);
}

inline double l_expanded(double x, double n, double s) { return x * x + (2 - 2 * s - n) * x + (s * n - 4 * s); }

inline std::vector<TranscriptionEntry> verify_polynomial_transcriptions() {
    std::vector<TranscriptionEntry> out;
    const std::vector<ProofInstance> m1_cases{
        {1, {3, 1, 1}}, {2, {1, 1, 1, 1}}, {1, {7, 1, 1}}, {2, {5, 3, 1, 1}}, {3, {5, 3, 1, 1, 1}}};
    for (const auto& inst : m1_cases) {
        const auto m1 = build_m1(inst);
        const auto n = static_cast<double>(inst.n());
        out.push_back(detail::compare_expansion("f_alternating", inst.describe(), m1, n,
                                                [&](double x) { return f_alternating(inst, x); }));
        out.push_back(detail::compare_expansion("f_arrowhead", inst.describe(), m1, n,
                                                [&](double x) { return f_arrowhead(inst, x); }));
    }
    const std::vector<std::array<std::size_t, 3>> m3_cases{{6, 1, 3}, {8, 1, 5}, {10, 1, 3}, {10, 2, 4}, {12, 3, 5}};
    for (const auto& [n, s, k] : m3_cases) {
        const double nd = static_cast<double>(n), sd = static_cast<double>(s), kd = static_cast<double>(k);
        const double n1 = nd - sd - kd + 1;
        out.push_back(detail::compare_expansion(
            "g", "n=" + std::to_string(n) + " s=" + std::to_string(s) + " k=" + std::to_string(k),
            build_m3(n, s, k), nd, [&](double x) { return g_expanded(x, nd, sd, kd, n1); }));
    }
    const std::vector<std::array<std::size_t, 2>> m4_cases{{6, 1}, {8, 2}, {10, 1}, {10, 3}, {12, 4}};
    for (const auto& [n, s] : m4_cases) {
        const double nd = static_cast<double>(n), sd = static_cast<double>(s);
        const std::string subject = "n=" + std::to_string(n) + " s=" + std::to_string(s);
        const auto m4 = build_m4(n, s);
        out.push_back(detail::compare_expansion("h_factored", subject, m4, nd, [&](double x) {
            return (x - 2 * nd + 3 * sd + 4) * ((x - nd - sd + 2) * (x - sd) - sd * (sd + 1)) -
                   (nd - 2 * sd - 1) * sd * (x - sd);
        }));
        out.push_back(detail::compare_expansion("h_expanded", subject, m4, nd,
                                                [&](double x) { return h_expanded(x, nd, sd); }));
    }
    for (std::size_t s = 1; s <= 5; ++s) {
        const double sd = static_cast<double>(s);
        const double nd = 2 * sd + 2;
        out.push_back(detail::compare_expansion("l", "n=" + std::to_string(2 * s + 2) + " s=" + std::to_string(s),
                                                build_m5(s), nd, [&](double x) { return l_expanded(x, nd, sd); }));
    }
    return out;
}

}  // namespace qmatch
