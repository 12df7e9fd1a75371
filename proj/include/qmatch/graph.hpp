#pragma once

// Immutable simple undirected graphs with dense bitset adjacency, structural
// operations (vertex deletion, components, joins) and the named families used
// throughout the toolkit.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qmatch/errors.hpp"

namespace qmatch {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;
// Sorted, duplicate-free list of vertex labels.
using VertexSet = std::vector<Vertex>;

class Graph;

// Mutable staging area; the only way to assemble adjacency incrementally.
class GraphBuilder {
public:
    explicit GraphBuilder(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

    std::size_t order() const noexcept { return n_; }

    GraphBuilder& add_edge(Vertex u, Vertex v) {
        if (u >= n_ || v >= n_) {
            throw InputError("edge endpoint out of range: (" + std::to_string(u) + "," +
                             std::to_string(v) + ") with n=" + std::to_string(n_));
        }
        if (u == v) {
            throw InputError("self-loop at vertex " + std::to_string(u));
        }
        set(u, v);
        set(v, u);
        return *this;
    }

    // Makes every pair inside `members` adjacent.
    GraphBuilder& add_clique(std::span<const Vertex> members) {
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                add_edge(members[i], members[j]);
            }
        }
        return *this;
    }

    bool has_edge(Vertex u, Vertex v) const {
        return (bits_[u * words_ + v / 64] >> (v % 64)) & 1U;
    }

    Graph build() const;

private:
    void set(Vertex u, Vertex v) { bits_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64); }

    std::size_t n_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;

    friend class Graph;
};

class Graph {
public:
    Graph() = default;

    // Duplicate pairs collapse; (u,v) and (v,u) are the same edge.
    Graph(std::size_t n, std::span<const Edge> edges) : Graph(from_edges(n, edges)) {}
    Graph(std::size_t n, std::initializer_list<Edge> edges)
        : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

    std::size_t order() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edge_count_; }

    bool adjacent(Vertex u, Vertex v) const {
        return u < n_ && v < n_ && ((bits_[u * words_ + v / 64] >> (v % 64)) & 1U);
    }

    std::size_t degree(Vertex v) const {
        std::size_t d = 0;
        for (std::size_t w = 0; w < words_; ++w) {
            d += static_cast<std::size_t>(std::popcount(bits_[v * words_ + w]));
        }
        return d;
    }

    std::size_t max_degree() const {
        std::size_t best = 0;
        for (Vertex v = 0; v < n_; ++v) {
            best = std::max(best, degree(v));
        }
        return best;
    }

    std::vector<Vertex> neighbors(Vertex v) const {
        std::vector<Vertex> out;
        for (std::size_t w = 0; w < words_; ++w) {
            std::uint64_t word = bits_[v * words_ + w];
            while (word != 0) {
                out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
                word &= word - 1;
            }
        }
        return out;
    }

    // Edges (u,v) with u < v, ordered by u then v.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(edge_count_);
        for (Vertex u = 0; u < n_; ++u) {
            for (Vertex v : neighbors(u)) {
                if (u < v) {
                    out.emplace_back(u, v);
                }
            }
        }
        return out;
    }

    std::span<const std::uint64_t> row_bits(Vertex v) const {
        return {bits_.data() + v * words_, words_};
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.bits_ == b.bits_;
    }

private:
    static Graph from_edges(std::size_t n, std::span<const Edge> edges) {
        GraphBuilder b(n);
        for (const auto& [u, v] : edges) {
            b.add_edge(u, v);
        }
        return b.build();
    }

    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::size_t edge_count_ = 0;
    std::vector<std::uint64_t> bits_;

    friend class GraphBuilder;
};

inline Graph GraphBuilder::build() const {
    Graph g;
    g.n_ = n_;
    g.words_ = words_;
    g.bits_ = bits_;
    std::size_t degree_sum = 0;
    for (auto word : bits_) {
        degree_sum += static_cast<std::size_t>(std::popcount(word));
    }
    g.edge_count_ = degree_sum / 2;
    return g;
}

// ---------------------------------------------------------------------------
// Structure

// Component id per vertex (ids in order of smallest member) and the number of components.
struct Components {
    std::vector<std::size_t> label;
    std::vector<std::size_t> sizes;
};

inline Components components(const Graph& g) {
    const std::size_t n = g.order();
    constexpr std::size_t unseen = static_cast<std::size_t>(-1);
    Components c{std::vector<std::size_t>(n, unseen), {}};
    std::vector<Vertex> stack;
    for (Vertex root = 0; root < n; ++root) {
        if (c.label[root] != unseen) {
            continue;
        }
        const std::size_t id = c.sizes.size();
        c.sizes.push_back(0);
        c.label[root] = id;
        stack.push_back(root);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            ++c.sizes[id];
            for (Vertex w : g.neighbors(v)) {
                if (c.label[w] == unseen) {
                    c.label[w] = id;
                    stack.push_back(w);
                }
            }
        }
    }
    return c;
}

inline bool is_connected(const Graph& g) {
    if (g.order() == 0) {
        throw InputError("is_connected: graph has no vertices");
    }
    return components(g).sizes.size() == 1;
}

inline std::size_t odd_components(const Graph& g) {
    const auto sizes = components(g).sizes;
    return static_cast<std::size_t>(
        std::count_if(sizes.begin(), sizes.end(), [](std::size_t s) { return s % 2 == 1; }));
}

// G - S, survivors relabelled 0.. in increasing original order.
inline Graph delete_vertices(const Graph& g, std::span<const Vertex> removed) {
    std::vector<bool> gone(g.order(), false);
    for (Vertex v : removed) {
        if (v >= g.order()) {
            throw InputError("delete_vertices: vertex " + std::to_string(v) + " not in graph of order " +
                             std::to_string(g.order()));
        }
        gone[v] = true;
    }
    std::vector<Vertex> relabel(g.order(), 0);
    std::size_t next = 0;
    for (Vertex v = 0; v < g.order(); ++v) {
        if (!gone[v]) {
            relabel[v] = next++;
        }
    }
    GraphBuilder b(next);
    for (const auto& [u, v] : g.edges()) {
        if (!gone[u] && !gone[v]) {
            b.add_edge(relabel[u], relabel[v]);
        }
    }
    return b.build();
}

// Vertices of `a` keep their labels; vertices of `b` are shifted by a.order().
inline Graph disjoint_union(const Graph& a, const Graph& b) {
    const std::size_t offset = a.order();
    GraphBuilder out(offset + b.order());
    for (const auto& [u, v] : a.edges()) {
        out.add_edge(u, v);
    }
    for (const auto& [u, v] : b.edges()) {
        out.add_edge(u + offset, v + offset);
    }
    return out.build();
}

inline Graph join(const Graph& a, const Graph& b) {
    const std::size_t offset = a.order();
    GraphBuilder out(offset + b.order());
    for (const auto& [u, v] : a.edges()) {
        out.add_edge(u, v);
    }
    for (const auto& [u, v] : b.edges()) {
        out.add_edge(u + offset, v + offset);
    }
    for (Vertex u = 0; u < a.order(); ++u) {
        for (Vertex v = 0; v < b.order(); ++v) {
            out.add_edge(u, v + offset);
        }
    }
    return out.build();
}

// ---------------------------------------------------------------------------
// Named families

inline Graph complete_graph(std::size_t n) {
    GraphBuilder b(n);
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            b.add_edge(u, v);
        }
    }
    return b.build();
}

// K̄_n
inline Graph empty_graph(std::size_t n) { return GraphBuilder(n).build(); }

inline Graph path_graph(std::size_t n) {
    GraphBuilder b(n);
    for (Vertex v = 0; v + 1 < n; ++v) {
        b.add_edge(v, v + 1);
    }
    return b.build();
}

inline Graph cycle_graph(std::size_t n) {
    if (n < 3) {
        throw InputError("cycle_graph: need n >= 3");
    }
    GraphBuilder b(n);
    for (Vertex v = 0; v < n; ++v) {
        b.add_edge(v, (v + 1) % n);
    }
    return b.build();
}

// K_{1,leaves} with center 0.
inline Graph star_graph(std::size_t leaves) { return join(complete_graph(1), empty_graph(leaves)); }

inline Graph petersen_graph() {
    GraphBuilder b(10);
    for (Vertex i = 0; i < 5; ++i) {
        b.add_edge(i, (i + 1) % 5);
        b.add_edge(i, i + 5);
        b.add_edge(i + 5, (i + 2) % 5 + 5);
    }
    return b.build();
}

// K_s ∨ K̄_t, the K_s side labelled 0..s-1.
inline Graph complete_split_graph(std::size_t s, std::size_t t) {
    return join(complete_graph(s), empty_graph(t));
}

// K_s ∨ (K_{n1} ∪ ... ∪ K_{nk}). S occupies labels 0..s-1, then each part in order.
inline Graph proof_graph(std::size_t s, std::span<const std::size_t> parts) {
    if (s < 1) {
        throw InputError("proof_graph: s must be >= 1");
    }
    if (parts.empty()) {
        throw InputError("proof_graph: need at least one part");
    }
    if (std::any_of(parts.begin(), parts.end(), [](std::size_t p) { return p == 0; })) {
        throw InputError("proof_graph: part sizes must be >= 1");
    }
    const std::size_t n = s + std::accumulate(parts.begin(), parts.end(), std::size_t{0});
    GraphBuilder b(n);
    std::vector<Vertex> clique(s);
    std::iota(clique.begin(), clique.end(), Vertex{0});
    b.add_clique(clique);
    Vertex next = s;
    for (std::size_t size : parts) {
        clique.resize(size);
        std::iota(clique.begin(), clique.end(), next);
        b.add_clique(clique);
        for (Vertex v : clique) {
            for (Vertex hub = 0; hub < s; ++hub) {
                b.add_edge(hub, v);
            }
        }
        next += size;
    }
    return b.build();
}

inline Graph proof_graph(std::size_t s, std::initializer_list<std::size_t> parts) {
    return proof_graph(s, std::span<const std::size_t>(parts.begin(), parts.size()));
}

// K1 ∨ (K_{n-3} ∪ K̄2): hub 0, clique 1..n-3, pendants n-2 and n-1.
// The K_{n-3} class and the two pendants are mutually non-adjacent.
inline Graph extremal_h(std::size_t n) {
    if (n < 4) {
        throw InputError("extremal_h: need n >= 4, got " + std::to_string(n));
    }
    return proof_graph(1, {n - 3, 1, 1});
}

}  // namespace qmatch
