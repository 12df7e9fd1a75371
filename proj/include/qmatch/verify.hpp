#pragma once

// Theorem harness: classify connected even-order graphs against the spectral
// and edge-count perfect-matching thresholds, and aggregate corpus statistics.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "qmatch/enumerate.hpp"
#include "qmatch/errors.hpp"
#include "qmatch/graph.hpp"
#include "qmatch/graph6.hpp"
#include "qmatch/matching.hpp"
#include "qmatch/spectral.hpp"
#include "qmatch/thresholds.hpp"

namespace qmatch {

// Thresholds are attained exactly by the extremal graphs; anything within
// this band of the threshold is a boundary case, never a counterexample.
inline constexpr double boundary_band = 1e-8;

enum class Verdict { conclusion_holds, hypothesis_not_met, boundary, counterexample };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::conclusion_holds: return "conclusion-holds";
        case Verdict::hypothesis_not_met: return "hypothesis-not-met";
        case Verdict::boundary: return "boundary";
        case Verdict::counterexample: return "COUNTEREXAMPLE";
    }
    return "?";
}

inline Verdict classify(double q1, double threshold, bool has_pm) {
    if (std::abs(q1 - threshold) <= boundary_band) {
        return Verdict::boundary;
    }
    if (q1 < threshold) {
        return Verdict::hypothesis_not_met;
    }
    return has_pm ? Verdict::conclusion_holds : Verdict::counterexample;
}

struct VerdictRecord {
    std::string graph6;
    std::size_t n = 0;
    std::size_t edges = 0;
    double q1 = 0.0;
    double q1_threshold = 0.0;
    std::int64_t edge_threshold = 0;
    bool has_pm = false;
    Verdict verdict = Verdict::hypothesis_not_met;
    std::optional<VertexSet> witness;

    // More edges than the edge threshold but no perfect matching.
    bool violates_edge_theorem() const {
        return static_cast<std::int64_t>(edges) > edge_threshold && !has_pm;
    }

    // Field order is part of the output format. Reals are rounded to 12
    // significant digits so records diff cleanly across platforms.
    nlohmann::ordered_json to_json() const {
        auto round12 = [](double x) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.12g", x);
            return std::strtod(buf, nullptr);
        };
        nlohmann::ordered_json j;
        j["graph6"] = graph6;
        j["n"] = n;
        j["edges"] = edges;
        j["q1"] = round12(q1);
        j["q1_threshold"] = round12(q1_threshold);
        j["edge_threshold"] = edge_threshold;
        j["has_pm"] = has_pm;
        j["verdict"] = to_string(verdict);
        j["witness"] = witness ? nlohmann::ordered_json(*witness) : nlohmann::ordered_json(nullptr);
        return j;
    }
};

inline VerdictRecord check_graph(const Graph& g) {
    const std::size_t n = g.order();
    if (n < 4 || n % 2 != 0) {
        throw HypothesisError("check_graph: need even n >= 4, got n=" + std::to_string(n));
    }
    if (!is_connected(g)) {
        throw HypothesisError("check_graph: graph is disconnected");
    }
    VerdictRecord rec;
    rec.graph6 = encode_graph6(g);
    rec.n = n;
    rec.edges = g.edge_count();
    rec.q1 = q1(g);
    rec.q1_threshold = q1_threshold(static_cast<long long>(n));
    rec.edge_threshold = edge_threshold(static_cast<long long>(n));
    MatchingResult m = maximum_matching(g);
    rec.has_pm = 2 * m.size == n;
    rec.witness = std::move(m.witness);
    rec.verdict = classify(rec.q1, rec.q1_threshold, rec.has_pm);
    return rec;
}

struct Summary {
    std::size_t checked = 0;
    std::size_t conclusion_holds = 0;
    std::size_t hypothesis_not_met = 0;
    std::size_t boundary = 0;
    std::size_t counterexamples = 0;
    std::size_t edge_theorem_violations = 0;
    std::size_t witness_failures = 0;  // witness that does not recheck to o(G-S) - |S| >= 1
    std::size_t skipped_odd = 0;       // odd order or n < 4
    std::size_t skipped_disconnected = 0;
    std::size_t parse_errors = 0;
    std::vector<VerdictRecord> counterexample_records;
    std::vector<VerdictRecord> edge_violation_records;
    std::vector<std::string> errors;  // "line N: message"

    bool clean() const { return counterexamples == 0 && edge_theorem_violations == 0 && witness_failures == 0; }

    void add(const VerdictRecord& rec, const Graph& g) {
        ++checked;
        switch (rec.verdict) {
            case Verdict::conclusion_holds: ++conclusion_holds; break;
            case Verdict::hypothesis_not_met: ++hypothesis_not_met; break;
            case Verdict::boundary: ++boundary; break;
            case Verdict::counterexample:
                ++counterexamples;
                counterexample_records.push_back(rec);
                break;
        }
        if (rec.violates_edge_theorem()) {
            ++edge_theorem_violations;
            edge_violation_records.push_back(rec);
        }
        if (!rec.has_pm && (!rec.witness || tutte_deficiency(g, *rec.witness) < 1)) {
            ++witness_failures;
        }
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["checked"] = checked;
        j["conclusion_holds"] = conclusion_holds;
        j["hypothesis_not_met"] = hypothesis_not_met;
        j["boundary"] = boundary;
        j["counterexamples"] = counterexamples;
        j["edge_theorem_violations"] = edge_theorem_violations;
        j["witness_failures"] = witness_failures;
        j["skipped_odd"] = skipped_odd;
        j["skipped_disconnected"] = skipped_disconnected;
        j["parse_errors"] = parse_errors;
        return j;
    }
};

struct HarnessOptions {
    std::size_t jobs = 1;
    JsonlWriter* sink = nullptr;  // one record per checked graph, in input order
};

namespace detail {

inline constexpr std::size_t harness_batch = 4096;

// Checks a batch (possibly in parallel), then folds results into the summary
// and the sink in input order.
inline void process_batch(std::vector<Graph>& batch, Summary& summary, const HarnessOptions& opts) {
    std::vector<VerdictRecord> records(batch.size());
    const std::size_t jobs = std::max<std::size_t>(1, std::min(opts.jobs, batch.size()));
    if (jobs == 1) {
        for (std::size_t i = 0; i < batch.size(); ++i) {
            records[i] = check_graph(batch[i]);
        }
    } else {
        std::vector<std::jthread> workers;
        for (std::size_t w = 0; w < jobs; ++w) {
            workers.emplace_back([&, w] {
                for (std::size_t i = w; i < batch.size(); i += jobs) {
                    records[i] = check_graph(batch[i]);
                }
            });
        }
    }
    for (std::size_t i = 0; i < batch.size(); ++i) {
        summary.add(records[i], batch[i]);
        if (opts.sink != nullptr) {
            opts.sink->write(records[i].to_json());
        }
    }
    batch.clear();
}

}  // namespace detail

// Feeds graphs through check_graph, skipping (and counting) graphs outside
// the hypothesis.
class Harness {
public:
    explicit Harness(HarnessOptions opts = {}) : opts_(opts) {}

    void push(Graph g) {
        if (g.order() < 4 || g.order() % 2 != 0) {
            ++summary_.skipped_odd;
            return;
        }
        if (!is_connected(g)) {
            ++summary_.skipped_disconnected;
            return;
        }
        pending_.push_back(std::move(g));
        if (pending_.size() >= detail::harness_batch) {
            detail::process_batch(pending_, summary_, opts_);
        }
    }

    void parse_error(std::size_t line, const std::string& message) {
        ++summary_.parse_errors;
        summary_.errors.push_back("line " + std::to_string(line) + ": " + message);
    }

    Summary finish() {
        detail::process_batch(pending_, summary_, opts_);
        return std::move(summary_);
    }

private:
    HarnessOptions opts_;
    Summary summary_;
    std::vector<Graph> pending_;
};

// Every labelled connected graph of order n in {4, 6}.
inline Summary run_exhaustive(std::size_t n, const HarnessOptions& opts = {}) {
    if (n != 4 && n != 6) {
        throw InputError("run_exhaustive: n must be 4 or 6, got " + std::to_string(n));
    }
    Harness h(opts);
    for_each_connected(n, [&h](EdgeMask, Graph g) { h.push(std::move(g)); });
    return h.finish();
}

inline Summary run_stream(std::istream& in, const HarnessOptions& opts = {}) {
    Harness h(opts);
    Graph6Reader reader(in);
    while (auto item = reader.next()) {
        if (item->graph) {
            h.push(std::move(*item->graph));
        } else {
            h.parse_error(item->line_number, item->error);
        }
    }
    return h.finish();
}

inline Summary run_random(std::size_t n, double p, std::size_t count, std::uint64_t seed,
                          const HarnessOptions& opts = {}) {
    Harness h(opts);
    for (auto& g : sample_connected(n, p, count, seed)) {
        h.push(std::move(g));
    }
    return h.finish();
}

// ---------------------------------------------------------------------------
// Extremal graphs

enum class ExtremalKind { h, k2e4, k3e5 };

inline const char* to_string(ExtremalKind k) {
    switch (k) {
        case ExtremalKind::h: return "h";
        case ExtremalKind::k2e4: return "k2e4";
        case ExtremalKind::k3e5: return "k3e5";
    }
    return "?";
}

// The graph attaining the threshold at order n.
inline ExtremalKind default_extremal(std::size_t n) {
    if (n == 6) {
        return ExtremalKind::k2e4;
    }
    if (n == 8) {
        return ExtremalKind::k3e5;
    }
    return ExtremalKind::h;
}

inline Graph extremal_graph(std::size_t n, ExtremalKind kind) {
    switch (kind) {
        case ExtremalKind::h: return extremal_h(n);
        case ExtremalKind::k2e4:
            if (n != 6) {
                throw InputError("K2 v K̄4 has order 6, not " + std::to_string(n));
            }
            return complete_split_graph(2, 4);
        case ExtremalKind::k3e5:
            if (n != 8) {
                throw InputError("K3 v K̄5 has order 8, not " + std::to_string(n));
            }
            return complete_split_graph(3, 5);
    }
    throw InputError("unknown extremal kind");
}

// Equitable partition of the extremal graph: {K_{n-3}, K1, K̄2} for H(n),
// {K_s, K̄_t} for the split graphs.
inline Partition extremal_partition(std::size_t n, ExtremalKind kind) {
    switch (kind) {
        case ExtremalKind::h: {
            std::vector<std::size_t> clique(n - 3);
            std::iota(clique.begin(), clique.end(), std::size_t{1});
            return Partition({clique, {0}, {n - 2, n - 1}});
        }
        case ExtremalKind::k2e4: return Partition::consecutive(std::vector<std::size_t>{2, 4});
        case ExtremalKind::k3e5: return Partition::consecutive(std::vector<std::size_t>{3, 5});
    }
    throw InputError("unknown extremal kind");
}

struct SharpnessRow {
    std::size_t n = 0;
    ExtremalKind kind = ExtremalKind::h;
    std::size_t edges = 0;
    std::int64_t edge_threshold = 0;
    double q1 = 0.0;
    double q1_threshold = 0.0;
    bool has_pm = false;
    VertexSet witness;
    long long witness_deficiency = 0;
    bool passed = true;
    std::vector<std::string> failures;
};

inline constexpr double sharpness_tol = 1e-8;

inline SharpnessRow sharpness_row(std::size_t n) {
    if (n < 4 || n % 2 != 0) {
        throw InputError("sharpness_report: need even n >= 4, got " + std::to_string(n));
    }
    SharpnessRow row;
    row.n = n;
    row.kind = default_extremal(n);
    const Graph g = extremal_graph(n, row.kind);
    row.edges = g.edge_count();
    row.edge_threshold = edge_threshold(static_cast<long long>(n));
    row.q1 = q1(g);
    row.q1_threshold = q1_threshold(static_cast<long long>(n));
    const MatchingResult m = maximum_matching(g);
    row.has_pm = 2 * m.size == n;
    if (m.witness) {
        row.witness = *m.witness;
        row.witness_deficiency = tutte_deficiency(g, row.witness);
    }
    auto require = [&row](bool ok, std::string what) {
        if (!ok) {
            row.passed = false;
            row.failures.push_back(std::move(what));
        }
    };
    require(std::abs(row.q1 - row.q1_threshold) <= sharpness_tol, "q1 differs from threshold");
    require(!row.has_pm, "extremal graph has a perfect matching");
    require(row.witness_deficiency >= 1, "Tutte witness does not verify");
    require(static_cast<std::int64_t>(row.edges) == row.edge_threshold, "edge count differs from edge threshold");
    return row;
}

inline std::vector<SharpnessRow> sharpness_report(const std::vector<std::size_t>& ns) {
    std::vector<SharpnessRow> rows;
    for (std::size_t n : ns) {
        rows.push_back(sharpness_row(n));
    }
    return rows;
}

}  // namespace qmatch
