#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmatch/errors.hpp"
#include "qmatch/graph.hpp"

namespace qmatch {

struct MatchingResult {
    std::size_t size = 0;
    std::vector<Edge> edges;  // (u,v) with u < v, sorted by u
    // Set S with o(G-S) - |S| = n - 2*size; present iff the matching is not perfect.
    std::optional<VertexSet> witness;
};

namespace detail {

// Edmonds' augmenting-path search with blossom contraction, O(n^3).
class BlossomMatcher {
public:
    static constexpr Vertex none = static_cast<Vertex>(-1);

    explicit BlossomMatcher(const Graph& g)
        : n_(g.order()),
          adj_(n_),
          mate_(n_, none),
          parent_(n_, none),
          base_(n_),
          outer_(n_, false),
          in_blossom_(n_, false) {
        for (Vertex v = 0; v < n_; ++v) {
            adj_[v] = g.neighbors(v);
        }
    }

    void run() {
        for (Vertex root = 0; root < n_; ++root) {
            if (mate_[root] != none) {
                continue;
            }
            Vertex v = find_augmenting_path(root);
            while (v != none) {
                const Vertex pv = parent_[v];
                const Vertex ppv = mate_[pv];
                mate_[v] = pv;
                mate_[pv] = v;
                v = ppv;
            }
        }
    }

    const std::vector<Vertex>& mate() const noexcept { return mate_; }

    // Gallai-Edmonds: D = vertices reachable from an exposed vertex by an even
    // alternating path, A = N(D) \ D. Valid once run() has finished.
    VertexSet barrier() {
        std::vector<bool> in_d(n_, false);
        for (Vertex root = 0; root < n_; ++root) {
            if (mate_[root] != none) {
                continue;
            }
            find_augmenting_path(root);
            for (Vertex v = 0; v < n_; ++v) {
                if (outer_[v]) {
                    in_d[v] = true;
                }
            }
        }
        VertexSet a;
        for (Vertex v = 0; v < n_; ++v) {
            if (in_d[v]) {
                continue;
            }
            for (Vertex w : adj_[v]) {
                if (in_d[w]) {
                    a.push_back(v);
                    break;
                }
            }
        }
        return a;
    }

private:
    Vertex lowest_common_base(Vertex a, Vertex b) const {
        std::vector<bool> seen(n_, false);
        for (;;) {
            a = base_[a];
            seen[a] = true;
            if (mate_[a] == none) {
                break;
            }
            a = parent_[mate_[a]];
        }
        for (;;) {
            b = base_[b];
            if (seen[b]) {
                return b;
            }
            b = parent_[mate_[b]];
        }
    }

    void mark_path(Vertex v, Vertex b, Vertex child) {
        while (base_[v] != b) {
            in_blossom_[base_[v]] = true;
            in_blossom_[base_[mate_[v]]] = true;
            parent_[v] = child;
            child = mate_[v];
            v = parent_[mate_[v]];
        }
    }

    // Returns the exposed endpoint of an augmenting path from root, or none.
    // outer_ holds the even vertices of the search forest afterwards.
    Vertex find_augmenting_path(Vertex root) {
        std::fill(outer_.begin(), outer_.end(), false);
        std::fill(parent_.begin(), parent_.end(), none);
        for (Vertex i = 0; i < n_; ++i) {
            base_[i] = i;
        }
        std::vector<Vertex> queue;
        queue.reserve(n_);
        outer_[root] = true;
        queue.push_back(root);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const Vertex v = queue[head];
            for (Vertex to : adj_[v]) {
                if (base_[v] == base_[to] || mate_[v] == to) {
                    continue;
                }
                if (to == root || (mate_[to] != none && parent_[mate_[to]] != none)) {
                    const Vertex cur = lowest_common_base(v, to);
                    std::fill(in_blossom_.begin(), in_blossom_.end(), false);
                    mark_path(v, cur, to);
                    mark_path(to, cur, v);
                    for (Vertex i = 0; i < n_; ++i) {
                        if (in_blossom_[base_[i]]) {
                            base_[i] = cur;
                            if (!outer_[i]) {
                                outer_[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if (parent_[to] == none) {
                    parent_[to] = v;
                    if (mate_[to] == none) {
                        return to;
                    }
                    const Vertex next = mate_[to];
                    outer_[next] = true;
                    queue.push_back(next);
                }
            }
        }
        return none;
    }

    std::size_t n_;
    std::vector<std::vector<Vertex>> adj_;
    std::vector<Vertex> mate_;
    std::vector<Vertex> parent_;
    std::vector<Vertex> base_;
    std::vector<bool> outer_;
    std::vector<bool> in_blossom_;
};

}  // namespace detail

// o(G-S) - |S|, as a signed value.
inline long long tutte_deficiency(const Graph& g, std::span<const Vertex> s) {
    return static_cast<long long>(odd_components(delete_vertices(g, s))) -
           static_cast<long long>(s.size());
}

// Single-vertex-removal fallback for the barrier: v is in D iff some maximum
// matching misses it. Only used if the forest-based barrier fails to certify.
inline VertexSet barrier_by_removal(const Graph& g, std::size_t nu) {
    const std::size_t n = g.order();
    std::vector<bool> in_d(n, false);
    for (Vertex v = 0; v < n; ++v) {
        const Vertex single[] = {v};
        detail::BlossomMatcher m(delete_vertices(g, single));
        m.run();
        std::size_t matched = 0;
        for (Vertex u : m.mate()) {
            matched += (u != detail::BlossomMatcher::none) ? 1 : 0;
        }
        in_d[v] = (matched / 2 == nu);
    }
    VertexSet a;
    for (Vertex v = 0; v < n; ++v) {
        if (in_d[v]) {
            continue;
        }
        for (Vertex w : g.neighbors(v)) {
            if (in_d[w]) {
                a.push_back(v);
                break;
            }
        }
    }
    return a;
}

inline MatchingResult maximum_matching(const Graph& g) {
    detail::BlossomMatcher matcher(g);
    matcher.run();
    MatchingResult result;
    const auto& mate = matcher.mate();
    for (Vertex v = 0; v < g.order(); ++v) {
        if (mate[v] != detail::BlossomMatcher::none && v < mate[v]) {
            result.edges.emplace_back(v, mate[v]);
        }
    }
    result.size = result.edges.size();
    if (2 * result.size != g.order()) {
        const auto target = static_cast<long long>(g.order() - 2 * result.size);
        VertexSet witness = matcher.barrier();
        if (tutte_deficiency(g, witness) != target) {
            witness = barrier_by_removal(g, result.size);
            if (tutte_deficiency(g, witness) != target) {
                throw NumericalError("maximum_matching: could not certify Tutte-Berge witness");
            }
        }
        result.witness = std::move(witness);
    }
    return result;
}

inline bool has_perfect_matching(const Graph& g) {
    if (g.order() % 2 == 1) {
        return false;
    }
    return 2 * maximum_matching(g).size == g.order();
}

// Checks that `edges` is a matching of g: pairwise disjoint and each an edge of g.
inline bool is_valid_matching(const Graph& g, std::span<const Edge> edges) {
    std::vector<bool> used(g.order(), false);
    for (const auto& [u, v] : edges) {
        if (!g.adjacent(u, v) || used[u] || used[v]) {
            return false;
        }
        used[u] = used[v] = true;
    }
    return true;
}

struct TutteBergeResult {
    long long deficiency = 0;  // max over S of o(G-S) - |S|
    VertexSet witness;
};

inline constexpr std::size_t tutte_oracle_max_order = 20;

// Exhaustive Tutte-Berge maximisation over all 2^n subsets, enumerated by
// increasing size and, within a size, by increasing bitmask. The first
// maximiser is returned.
inline TutteBergeResult tutte_berge_oracle(const Graph& g) {
    const std::size_t n = g.order();
    if (n > tutte_oracle_max_order) {
        throw CapacityError("tutte_berge_oracle: n=" + std::to_string(n) + " exceeds " +
                            std::to_string(tutte_oracle_max_order));
    }
    std::vector<std::uint32_t> adj(n, 0);
    for (const auto& [u, v] : g.edges()) {
        adj[u] |= std::uint32_t{1} << v;
        adj[v] |= std::uint32_t{1} << u;
    }
    const std::uint32_t full = n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;

    auto odd_count = [&](std::uint32_t removed) {
        std::uint32_t remaining = full & ~removed;
        long long odd = 0;
        while (remaining != 0) {
            std::uint32_t comp = remaining & (~remaining + 1);
            std::uint32_t frontier = comp;
            while (frontier != 0) {
                std::uint32_t grow = 0;
                for (std::uint32_t f = frontier; f != 0; f &= f - 1) {
                    grow |= adj[static_cast<std::size_t>(std::countr_zero(f))];
                }
                grow &= remaining & ~comp;
                comp |= grow;
                frontier = grow;
            }
            remaining &= ~comp;
            odd += std::popcount(comp) % 2;
        }
        return odd;
    };

    TutteBergeResult best{odd_count(0), {}};
    std::uint32_t best_mask = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        std::uint32_t mask = (std::uint32_t{1} << k) - 1;
        while (mask <= full) {
            const long long value = odd_count(mask) - static_cast<long long>(k);
            if (value > best.deficiency) {
                best.deficiency = value;
                best_mask = mask;
            }
            // Gosper's hack: next mask with the same popcount.
            const std::uint32_t low = mask & (~mask + 1);
            const std::uint64_t ripple = std::uint64_t{mask} + low;
            if (ripple > full) {
                break;
            }
            const auto r = static_cast<std::uint32_t>(ripple);
            mask = (((r ^ mask) >> 2) / low) | r;
        }
    }
    for (Vertex v = 0; v < n; ++v) {
        if ((best_mask >> v) & 1U) {
            best.witness.push_back(v);
        }
    }
    return best;
}

}  // namespace qmatch
