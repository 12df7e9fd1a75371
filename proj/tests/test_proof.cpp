#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "qmatch/errors.hpp"
#include "qmatch/proof.hpp"

using namespace qmatch;

namespace {

// Classes {V(G1), S, rest} of proof_graph(s, [n1, 1, ..., 1]); vertices are S first, then G1.
Partition g1_s_rest(std::size_t s, std::size_t n1, std::size_t singles) {
    std::vector<std::size_t> g1(n1);
    std::vector<std::size_t> sv(s);
    std::vector<std::size_t> rest(singles);
    std::iota(sv.begin(), sv.end(), std::size_t{0});
    std::iota(g1.begin(), g1.end(), s);
    std::iota(rest.begin(), rest.end(), s + n1);
    return Partition({g1, sv, rest});
}

double value_of(const ProofReport& r, const std::string& key) {
    for (const auto& [k, v] : r.values) {
        if (k == key) {
            return v;
        }
    }
    ADD_FAILURE() << "no value " << key << " in " << r.check;
    return NAN;
}

}  // namespace

TEST(ProofInstance, Invariants) {
    const ProofInstance inst(1, {1, 3, 1});
    EXPECT_EQ(inst.parts(), (std::vector<std::size_t>{3, 1, 1}));
    EXPECT_EQ(inst.n(), 6u);
    EXPECT_EQ(inst.k(), 3u);
    EXPECT_EQ(inst.describe(), "n=6 s=1 parts=[3,1,1]");
    EXPECT_THROW(ProofInstance(0, {1, 1}), InputError);
    EXPECT_THROW(ProofInstance(2, {1, 1, 1}), InputError);        // k < s + 2
    EXPECT_THROW(ProofInstance(1, {2, 1, 1}), InputError);        // even part
    EXPECT_THROW(ProofInstance(2, {1, 1, 1, 1, 1}), InputError);  // n = 7
}

TEST(BuildM1, Examples) {
    // Diagonal 2*n1 + s - 2 = 5: a K3 vertex has degree 3 and two neighbours in its class.
    EXPECT_EQ(build_m1(ProofInstance(1, {3, 1, 1})).entries(),
              (std::vector<double>{5, 3, 1, 1, 1, 5, 0, 0, 1, 0, 1, 0, 1, 0, 0, 1}));
    const auto m = build_m1(ProofInstance(2, {1, 1, 1, 1}));
    EXPECT_EQ(std::vector<double>(m.entries().begin(), m.entries().begin() + 10),
              (std::vector<double>{6, 1, 1, 1, 1, 2, 2, 0, 0, 0}));
    const ProofInstance h10(1, {7, 1, 1});
    EXPECT_EQ(build_m1(h10), quotient_matrix(signless_laplacian(h10.graph()), h10.partition()));
}

TEST(BuildM1, EqualsComputedQuotientOnAllSmallInstances) {
    for (const auto& inst : exhaustive_instances(14)) {
        const SymMatrix q = signless_laplacian(inst.graph());
        ASSERT_TRUE(is_equitable(q, inst.partition())) << inst.describe();
        ASSERT_EQ(build_m1(inst), quotient_matrix(q, inst.partition())) << inst.describe();
        ASSERT_NEAR(spectral_radius(build_m1(inst)), spectral_radius(q), 1e-8) << inst.describe();
    }
}

TEST(BuildM3, EqualsComputedQuotient) {
    for (std::size_t n = 4; n <= 24; n += 2) {
        for (std::size_t s = 1; 2 * s + 2 <= n; ++s) {
            for (std::size_t k = s + 2; s + k <= n; k += 2) {
                const std::size_t n1 = n - s - k + 1;
                std::vector<std::size_t> parts{n1};
                parts.resize(k, 1);
                const Graph g = proof_graph(s, parts);
                const Partition p = g1_s_rest(s, n1, k - 1);
                const SymMatrix q = signless_laplacian(g);
                ASSERT_TRUE(is_equitable(q, p));
                ASSERT_EQ(build_m3(n, s, k), quotient_matrix(q, p)) << n << " " << s << " " << k;
            }
        }
    }
}

TEST(BuildM4, IsM3AtMinimalK) {
    EXPECT_EQ(build_m4(10, 1), build_m3(10, 1, 3));
    EXPECT_EQ(build_m4(12, 3), build_m3(12, 3, 5));
    EXPECT_THROW(build_m4(5, 2), InputError);
}

TEST(BuildM5, EqualsComputedQuotient) {
    for (std::size_t s = 1; s <= 8; ++s) {
        std::vector<std::size_t> parts(s + 2, 1);
        const Graph g = proof_graph(s, parts);
        const std::vector<std::size_t> sizes{s, s + 2};
        ASSERT_EQ(build_m5(s), quotient_matrix(signless_laplacian(g), Partition::consecutive(sizes)));
    }
}

TEST(RootBounds, Examples) {
    const auto a = check_root_bounds(ProofInstance(1, {3, 1, 1}));
    EXPECT_TRUE(a.passed) << a.to_json().dump();
    EXPECT_EQ(value_of(a, "bound_n_s"), 5.0);
    EXPECT_EQ(value_of(a, "bound_2n1_2s"), 6.0);
    EXPECT_GT(value_of(a, "r_f"), 6.0);

    const auto b = check_root_bounds(ProofInstance(1, {1, 1, 1}));
    EXPECT_TRUE(b.passed);
    EXPECT_NEAR(value_of(b, "r_f"), 4.0, 1e-10);
    EXPECT_GT(value_of(b, "r_f"), 3.0);

    const auto c = check_root_bounds(ProofInstance(1, {7, 1, 1}));
    EXPECT_TRUE(c.passed);
    const double oracle_root = oracle::largest_real_eigenvalue(
        (Eigen::MatrixXd(3, 3) << 0, 0, 84, 1, 0, -130, 0, 1, 23).finished());  // companion of x^3-23x^2+130x-84
    EXPECT_NEAR(value_of(c, "r_f"), oracle_root, 1e-8);
}

TEST(VertexShift, Examples) {
    struct Case {
        std::size_t s;
        std::vector<std::size_t> before, after;
    };
    for (const auto& c : std::vector<Case>{{1, {3, 3, 1}, {5, 1, 1}},
                                           {1, {3, 3, 3}, {5, 3, 1}},
                                           {3, {3, 3, 3, 3, 3}, {5, 3, 3, 3, 1}}}) {
        const ProofInstance inst(c.s, c.before);
        const auto rep = check_vertex_shift(inst);
        ASSERT_TRUE(rep.applicable);
        EXPECT_TRUE(rep.passed);
        EXPECT_NEAR(value_of(rep, "q1_after"), q1(proof_graph(c.s, c.after)), 1e-9);
        EXPECT_NEAR(value_of(rep, "q1_before"), q1(proof_graph(c.s, c.before)), 1e-9);
    }
    EXPECT_FALSE(check_vertex_shift(ProofInstance(1, {3, 1, 1})).applicable);
}

TEST(MergeSingletons, Examples) {
    struct Case {
        std::size_t s;
        std::vector<std::size_t> before, after;
    };
    for (const auto& c : std::vector<Case>{{1, {1, 1, 1, 1, 1}, {3, 1, 1}},
                                           {1, {3, 1, 1, 1, 1}, {5, 1, 1}},
                                           {2, {1, 1, 1, 1, 1, 1}, {3, 1, 1, 1}}}) {
        const auto rep = check_merge_singletons(ProofInstance(c.s, c.before));
        ASSERT_TRUE(rep.applicable);
        EXPECT_TRUE(rep.passed) << rep.to_json().dump();
        EXPECT_NEAR(value_of(rep, "q1_after"), q1(proof_graph(c.s, c.after)), 1e-9);
    }
    EXPECT_FALSE(check_merge_singletons(ProofInstance(1, {3, 1, 1})).applicable);
}

TEST(HBound, Examples) {
    const auto a = check_h_bound(6, 1);
    EXPECT_TRUE(a.passed);
    EXPECT_NEAR(value_of(a, "E"), 4.2843, 1e-3);
    const auto b = check_h_bound(10, 1);
    EXPECT_TRUE(b.passed);
    EXPECT_GT(value_of(b, "E"), 4.2843);
    const auto c = check_h_bound(12, 4);
    EXPECT_TRUE(c.passed);
    EXPECT_GT(value_of(c, "E"), 4.2843);
    EXPECT_THROW(check_h_bound(6, 2), InputError);
}

TEST(HBound, MinimumOverGridIsAtSixOne) {
    double best = 1e300;
    std::pair<std::size_t, std::size_t> where;
    for (std::size_t n = 6; n <= 100; n += 2) {
        for (std::size_t s = 1; 2 * s + 4 <= n; ++s) {
            const auto rep = check_h_bound(n, s);
            ASSERT_TRUE(rep.passed) << rep.subject;
            if (value_of(rep, "E") < best) {
                best = value_of(rep, "E");
                where = {n, s};
            }
        }
    }
    EXPECT_EQ(where, (std::pair<std::size_t, std::size_t>{6, 1}));
    EXPECT_NEAR(best, 4.2843, 1e-3);
}

TEST(CaseAnalysis, Trichotomy) {
    for (std::size_t n = 4; n <= 100; n += 2) {
        const auto rep = check_case_analysis(n);
        ASSERT_TRUE(rep.passed) << rep.subject;
    }
    EXPECT_NEAR(value_of(check_case_analysis(6), "r_l"), 4 + 2 * std::sqrt(3.0), 1e-12);
    EXPECT_LT(value_of(check_case_analysis(8), "r_n"), value_of(check_case_analysis(8), "r_l"));
}

TEST(ProofSweep, ExhaustiveUpTo12AndSampledTo40) {
    auto instances = exhaustive_instances(12);
    const auto sample = sampled_instances(200, 14, 40);
    ASSERT_EQ(sample.size(), 200u);
    instances.insert(instances.end(), sample.begin(), sample.end());
    for (const auto& inst : instances) {
        for (const auto& rep : {check_root_bounds(inst), check_vertex_shift(inst), check_merge_singletons(inst)}) {
            ASSERT_TRUE(rep.passed) << rep.check << " " << rep.subject;
        }
    }
}

TEST(ProofSweep, SampleIsSeeded) {
    EXPECT_EQ(sampled_instances(20, 14, 40), sampled_instances(20, 14, 40));
    for (const auto& inst : sampled_instances(200, 14, 40)) {
        ASSERT_GE(inst.n(), 14u);
        ASSERT_LE(inst.n(), 40u);
    }
}

TEST(ProofSweep, InstanceEnumerationCount) {
    // n = 6: s=1 with parts [3,1,1] or [1,1,1,1,1]; s=2 with [1,1,1,1].
    EXPECT_EQ(instances_of_order(6).size(), 3u);
    EXPECT_EQ(instances_of_order(4).size(), 1u);
}

TEST(Maximiser, MatchesThresholdCases) {
    auto check = [](std::size_t n, std::size_t s, std::vector<std::size_t> parts) {
        const auto [inst, value] = maximizing_instance(n);
        EXPECT_EQ(inst, ProofInstance(s, parts)) << inst.describe();
        EXPECT_NEAR(value, q1_threshold(static_cast<long long>(n)), 1e-8);
    };
    check(4, 1, {1, 1, 1});
    check(6, 2, {1, 1, 1, 1});
    check(8, 3, {1, 1, 1, 1, 1});
    check(10, 1, {7, 1, 1});
    check(12, 1, {9, 1, 1});
}

TEST(Transcriptions, OnlyAlternatingFDisagrees) {
    const auto entries = verify_polynomial_transcriptions();
    std::size_t m1 = 0;
    for (const auto& e : entries) {
        if (e.polynomial == "f_alternating") {
            ++m1;
            EXPECT_FALSE(e.agrees) << e.subject;
        } else {
            EXPECT_TRUE(e.agrees) << e.polynomial << " " << e.subject << " err=" << e.max_relative_error;
        }
    }
    EXPECT_EQ(m1, 5u);
    EXPECT_EQ(entries.size(), 5u * 2 + 5 + 5 * 2 + 5);
}

TEST(Transcriptions, PointExamples) {
    EXPECT_NEAR(l_expanded(4 + 2 * std::sqrt(3.0), 6, 2), 0.0, 1e-12);
    const ProofInstance inst(1, {3, 1, 1});
    EXPECT_NEAR(f_arrowhead(inst, 0.0), characteristic_value(build_m1(inst), 0.0), 1e-9);
    const double r10 = r_of_n(10);
    EXPECT_NEAR(g_expanded(r10, 10, 1, 3, 7), 0.0, 1e-8 * characteristic_scale(build_m3(10, 1, 3), r10));
}

TEST(GTilde, NegativeAtRg) {
    const auto rep = check_merge_singletons(ProofInstance(1, {3, 1, 1, 1, 1}));
    EXPECT_LT(value_of(rep, "g_tilde_at_r_g"), 0.0);
}
