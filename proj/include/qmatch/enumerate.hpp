#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qmatch/errors.hpp"
#include "qmatch/graph.hpp"

namespace qmatch {

// Bit k of an edge mask is the k-th vertex pair in graph6 order:
// (0,1), (0,2), (1,2), (0,3), (1,3), (2,3), ...
using EdgeMask = std::uint64_t;

inline constexpr std::size_t pair_index(Vertex i, Vertex j) {
    if (i > j) {
        std::swap(i, j);
    }
    return j * (j - 1) / 2 + i;
}

inline constexpr std::size_t pair_count(std::size_t n) { return n * (n == 0 ? 0 : n - 1) / 2; }

inline Graph graph_from_mask(std::size_t n, EdgeMask mask) {
    GraphBuilder b(n);
    std::size_t k = 0;
    for (Vertex j = 1; j < n; ++j) {
        for (Vertex i = 0; i < j; ++i, ++k) {
            if ((mask >> k) & 1U) {
                b.add_edge(i, j);
            }
        }
    }
    return b.build();
}

inline EdgeMask mask_of(const Graph& g) {
    if (pair_count(g.order()) > 64) {
        throw CapacityError("mask_of: graph too large for a 64-bit edge mask");
    }
    EdgeMask mask = 0;
    for (const auto& [u, v] : g.edges()) {
        mask |= EdgeMask{1} << pair_index(u, v);
    }
    return mask;
}

inline constexpr std::size_t enumerate_max_order = 7;
// Above this order exhaustive enumeration needs allow_large (n = 7 is ~2^21 masks).
inline constexpr std::size_t enumerate_default_max_order = 6;

// Calls fn(mask, graph) for every connected labelled graph on n vertices, in
// increasing mask order.
template <typename Fn>
void for_each_connected(std::size_t n, Fn&& fn, bool allow_large = false) {
    if (n < 1) {
        throw InputError("for_each_connected: need n >= 1");
    }
    if (n > enumerate_max_order || (n > enumerate_default_max_order && !allow_large)) {
        throw CapacityError("for_each_connected: n=" + std::to_string(n) + " not enumerable" +
                            (n <= enumerate_max_order ? " without allow_large" : ""));
    }
    const std::size_t width = pair_count(n);
    const std::uint32_t everyone = (std::uint32_t{1} << n) - 1;
    std::vector<std::uint32_t> adj(n);
    for (EdgeMask mask = 0; mask < (EdgeMask{1} << width); ++mask) {
        std::fill(adj.begin(), adj.end(), 0U);
        std::size_t k = 0;
        for (std::size_t j = 1; j < n; ++j) {
            for (std::size_t i = 0; i < j; ++i, ++k) {
                if ((mask >> k) & 1U) {
                    adj[i] |= 1U << j;
                    adj[j] |= 1U << i;
                }
            }
        }
        std::uint32_t reached = 1;
        std::uint32_t frontier = 1;
        while (frontier != 0) {
            std::uint32_t grow = 0;
            for (std::uint32_t f = frontier; f != 0; f &= f - 1) {
                grow |= adj[static_cast<std::size_t>(std::countr_zero(f))];
            }
            frontier = grow & ~reached;
            reached |= grow;
        }
        if (reached == everyone) {
            fn(mask, graph_from_mask(n, mask));
        }
    }
}

inline std::vector<Graph> all_connected(std::size_t n, bool allow_large = false) {
    std::vector<Graph> out;
    for_each_connected(
        n, [&out](EdgeMask, Graph g) { out.push_back(std::move(g)); }, allow_large);
    return out;
}

inline constexpr std::size_t sample_attempt_cap = 100000;

// Connected G(n, p) graphs by rejection; deterministic in (n, p, count, seed).
inline std::vector<Graph> sample_connected(std::size_t n, double p, std::size_t count, std::uint64_t seed) {
    if (!(p > 0.0 && p < 1.0)) {
        throw InputError("sample_connected: need 0 < p < 1");
    }
    if (n < 2) {
        throw InputError("sample_connected: need n >= 2");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<Graph> out;
    out.reserve(count);
    while (out.size() < count) {
        bool found = false;
        for (std::size_t attempt = 0; attempt < sample_attempt_cap; ++attempt) {
            GraphBuilder b(n);
            for (Vertex j = 1; j < n; ++j) {
                for (Vertex i = 0; i < j; ++i) {
                    if (coin(rng) < p) {
                        b.add_edge(i, j);
                    }
                }
            }
            Graph g = b.build();
            if (is_connected(g)) {
                out.push_back(std::move(g));
                found = true;
                break;
            }
        }
        if (!found) {
            throw SamplingError("sample_connected: no connected graph after " +
                                std::to_string(sample_attempt_cap) + " draws (n=" + std::to_string(n) +
                                ", p=" + std::to_string(p) + ")");
        }
    }
    return out;
}

}  // namespace qmatch
