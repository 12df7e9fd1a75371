#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "qmatch/enumerate.hpp"
#include "qmatch/errors.hpp"
#include "qmatch/graph6.hpp"
#include "qmatch/verify.hpp"

using namespace qmatch;

TEST(Classify, GuardBand) {
    EXPECT_EQ(classify(5.0, 5.0 + 5e-9, false), Verdict::boundary);
    EXPECT_EQ(classify(5.0 + 2e-8, 5.0, false), Verdict::counterexample);
    EXPECT_EQ(classify(5.0 + 2e-8, 5.0, true), Verdict::conclusion_holds);
    EXPECT_EQ(classify(4.0, 5.0, false), Verdict::hypothesis_not_met);
    EXPECT_EQ(classify(4.0, 5.0, true), Verdict::hypothesis_not_met);
    EXPECT_STREQ(to_string(Verdict::counterexample), "COUNTEREXAMPLE");
}

TEST(CheckGraph, Examples) {
    const auto k4 = check_graph(complete_graph(4));
    EXPECT_NEAR(k4.q1, 6.0, 1e-10);
    EXPECT_NEAR(k4.q1_threshold, 4.0, 1e-12);
    EXPECT_TRUE(k4.has_pm);
    EXPECT_EQ(k4.verdict, Verdict::conclusion_holds);
    EXPECT_FALSE(k4.witness);

    const auto h6 = check_graph(extremal_h(6));
    EXPECT_NEAR(h6.q1, 6.9095, 5e-4);
    EXPECT_NEAR(h6.q1_threshold, 7.4641, 5e-4);
    EXPECT_EQ(h6.verdict, Verdict::hypothesis_not_met);

    const auto k2e4 = check_graph(join(complete_graph(2), empty_graph(4)));
    EXPECT_EQ(k2e4.verdict, Verdict::boundary);
    EXPECT_FALSE(k2e4.has_pm);
    ASSERT_TRUE(k2e4.witness);
}

TEST(CheckGraph, HypothesisErrors) {
    EXPECT_THROW(check_graph(complete_graph(5)), HypothesisError);
    EXPECT_THROW(check_graph(complete_graph(2)), HypothesisError);
    EXPECT_THROW(check_graph(disjoint_union(complete_graph(3), complete_graph(3))), HypothesisError);
}

TEST(CheckGraph, Deterministic) {
    const Graph g = petersen_graph();
    const auto a = check_graph(g).to_json().dump();
    const auto b = check_graph(g).to_json().dump();
    EXPECT_EQ(a, b);
}

TEST(VerdictRecord, JsonFieldOrder) {
    const auto j = check_graph(join(complete_graph(3), empty_graph(5))).to_json();
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) {
        keys.push_back(k);
    }
    EXPECT_EQ(keys, (std::vector<std::string>{"graph6", "n", "edges", "q1", "q1_threshold", "edge_threshold",
                                              "has_pm", "verdict", "witness"}));
    EXPECT_EQ(j["verdict"], "boundary");
    EXPECT_EQ(j["witness"], nlohmann::ordered_json::array({0, 1, 2}));
    EXPECT_TRUE(check_graph(complete_graph(4)).to_json()["witness"].is_null());
}

TEST(Exhaustive, FourAndSix) {
    const auto four = run_exhaustive(4);
    EXPECT_EQ(four.checked, 38u);
    EXPECT_EQ(four.counterexamples, 0u);
    EXPECT_EQ(four.edge_theorem_violations, 0u);
    EXPECT_TRUE(four.clean());

    const auto six = run_exhaustive(6);
    EXPECT_EQ(six.checked, 26704u);
    EXPECT_EQ(six.counterexamples, 0u);
    EXPECT_EQ(six.edge_theorem_violations, 0u);
    EXPECT_EQ(six.witness_failures, 0u);
    EXPECT_TRUE(six.clean());
    EXPECT_EQ(six.conclusion_holds + six.hypothesis_not_met + six.boundary, six.checked);
    EXPECT_THROW(run_exhaustive(5), InputError);
}

TEST(Exhaustive, SixHasK2E4Boundary) {
    // Every labelled K2 v 4K1 lands on the threshold without a perfect matching.
    std::ostringstream out;
    JsonlWriter sink(out);
    const auto six = run_exhaustive(6, {1, &sink});
    const std::string k2e4 = encode_graph6(join(complete_graph(2), empty_graph(4)));
    std::istringstream lines(out.str());
    std::string line;
    std::size_t boundary_no_pm = 0;
    bool found = false;
    while (std::getline(lines, line)) {
        const auto j = nlohmann::json::parse(line);
        if (j["verdict"] == "boundary" && !j["has_pm"].get<bool>()) {
            ++boundary_no_pm;
        }
        found = found || j["graph6"] == k2e4;
        if (j["graph6"] == k2e4) {
            EXPECT_EQ(j["verdict"], "boundary");
        }
    }
    EXPECT_TRUE(found);
    EXPECT_EQ(boundary_no_pm, 15u);  // C(6,2) choices of the K2
    EXPECT_EQ(six.boundary, 15u);
}

TEST(Stream, Examples) {
    std::istringstream empty("");
    const auto none = run_stream(empty);
    EXPECT_EQ(none.checked, 0u);
    EXPECT_TRUE(none.clean());

    std::ostringstream out;
    JsonlWriter sink(out);
    std::istringstream corpus(">>graph6<<\n" + encode_graph6(join(complete_graph(3), empty_graph(5))) +
                              "\nBg\n??garbage\n" + encode_graph6(empty_graph(4)) + "\nC~\n");
    const auto s = run_stream(corpus, {1, &sink});
    EXPECT_EQ(s.checked, 2u);
    EXPECT_EQ(s.boundary, 1u);
    EXPECT_EQ(s.skipped_odd, 1u);
    EXPECT_EQ(s.skipped_disconnected, 1u);
    EXPECT_EQ(s.parse_errors, 1u);
    ASSERT_EQ(s.errors.size(), 1u);
    EXPECT_NE(s.errors.front().find("line 4"), std::string::npos);
    const auto first = nlohmann::json::parse(out.str().substr(0, out.str().find('\n')));
    EXPECT_EQ(first["witness"], nlohmann::json::array({0, 1, 2}));
}

TEST(Stream, JobsDoNotChangeOutput) {
    std::string corpus;
    for (const Graph& g : sample_connected(8, 0.4, 300, 5)) {
        corpus += encode_graph6(g) + "\n";
    }
    std::string outputs[2];
    std::size_t jobs[2] = {1, 3};
    for (int i = 0; i < 2; ++i) {
        std::istringstream in(corpus);
        std::ostringstream out;
        JsonlWriter sink(out);
        run_stream(in, {jobs[i], &sink});
        outputs[i] = out.str();
    }
    EXPECT_EQ(outputs[0], outputs[1]);
}

TEST(Random, NoCounterexamplesAtEightTenTwelve) {
    for (std::size_t n : {8u, 10u, 12u}) {
        const auto s = run_random(n, 0.5, 10000, 100 + n);
        EXPECT_EQ(s.checked, 10000u);
        EXPECT_EQ(s.counterexamples, 0u) << "n=" << n;
        EXPECT_EQ(s.edge_theorem_violations, 0u) << "n=" << n;
        EXPECT_EQ(s.witness_failures, 0u) << "n=" << n;
    }
}

TEST(Random, DenseSamplesHitTheHypothesis) {
    // At p = 0.9 most graphs exceed the threshold; all must have a perfect matching.
    const auto s = run_random(10, 0.9, 2000, 9);
    EXPECT_GT(s.conclusion_holds, 1000u);
    EXPECT_TRUE(s.clean());
}

TEST(Summary, CatchesPlantedCounterexample) {
    // A record claiming q1 above threshold without a perfect matching is counted.
    Summary s;
    const Graph g = extremal_h(10);
    VerdictRecord rec = check_graph(g);
    rec.q1 = rec.q1_threshold + 1.0;
    rec.verdict = classify(rec.q1, rec.q1_threshold, rec.has_pm);
    s.add(rec, g);
    EXPECT_EQ(s.counterexamples, 1u);
    EXPECT_FALSE(s.clean());
}

TEST(Summary, CatchesEdgeViolation) {
    Summary s;
    const Graph g = extremal_h(10);
    VerdictRecord rec = check_graph(g);
    rec.edges = static_cast<std::size_t>(rec.edge_threshold) + 1;
    s.add(rec, g);
    EXPECT_EQ(s.edge_theorem_violations, 1u);
    EXPECT_FALSE(s.clean());
}

TEST(Sharpness, Examples) {
    const auto r10 = sharpness_row(10);
    EXPECT_TRUE(r10.passed);
    EXPECT_EQ(r10.edges, 30u);
    EXPECT_NEAR(r10.q1, r_of_n(10), 1e-8);
    EXPECT_FALSE(r10.has_pm);

    const auto r6 = sharpness_row(6);
    EXPECT_TRUE(r6.passed);
    EXPECT_EQ(r6.kind, ExtremalKind::k2e4);
    EXPECT_NEAR(r6.q1, 4 + 2 * std::sqrt(3.0), 1e-8);

    const auto r4 = sharpness_row(4);
    EXPECT_TRUE(r4.passed);
    EXPECT_NEAR(r4.q1, 4.0, 1e-10);
}

TEST(Sharpness, ReportOverManyOrders) {
    std::vector<std::size_t> ns;
    for (std::size_t n = 4; n <= 60; n += 2) {
        ns.push_back(n);
    }
    for (const auto& row : sharpness_report(ns)) {
        ASSERT_TRUE(row.passed) << "n=" << row.n;
        ASSERT_GE(row.witness_deficiency, 1);
        ASSERT_EQ(static_cast<std::int64_t>(row.edges), row.edge_threshold);
    }
}

TEST(Sharpness, EdgeCountEqualsEdgeThresholdForH) {
    EXPECT_EQ(static_cast<std::int64_t>(extremal_h(4).edge_count()), edge_threshold(4));
    for (long long n = 10; n <= 200; n += 2) {
        ASSERT_EQ(static_cast<std::int64_t>(extremal_h(static_cast<std::size_t>(n)).edge_count()), edge_threshold(n));
    }
}

TEST(Extremal, Kinds) {
    EXPECT_EQ(default_extremal(6), ExtremalKind::k2e4);
    EXPECT_EQ(default_extremal(8), ExtremalKind::k3e5);
    EXPECT_EQ(default_extremal(10), ExtremalKind::h);
    EXPECT_EQ(extremal_graph(8, ExtremalKind::k3e5).edge_count(), 18u);
    EXPECT_THROW(extremal_graph(8, ExtremalKind::k2e4), InputError);
    EXPECT_THROW(sharpness_row(7), InputError);
}

TEST(Extremal, QuotientEqualityForAllThreePartitions) {
    for (std::size_t n = 4; n <= 40; n += 2) {
        const Graph h = extremal_h(n);
        ASSERT_NEAR(spectral_radius(quotient_matrix(signless_laplacian(h), extremal_partition(n, ExtremalKind::h))),
                    q1(h), 1e-8);
    }
    for (auto [n, kind] : {std::pair{6u, ExtremalKind::k2e4}, std::pair{8u, ExtremalKind::k3e5}}) {
        const Graph g = extremal_graph(n, kind);
        EXPECT_NEAR(spectral_radius(quotient_matrix(signless_laplacian(g), extremal_partition(n, kind))), q1(g),
                    1e-8);
    }
}

TEST(VerdictRecord, JsonRealsRoundedTo12Digits) {
    const auto j = check_graph(extremal_h(10)).to_json();
    EXPECT_EQ(j["q1"].get<double>(), 14.3469137257);
    EXPECT_EQ(j["q1_threshold"].get<double>(), 14.3469137257);
}
