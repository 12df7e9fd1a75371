// qmatch: command-line front end for the spectral perfect-matching toolkit.
//
// Exit codes: 0 = no counterexample / all checks passed, 1 = counterexample or
// failed check, 2 = input error.

#include <fmt/core.h>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qmatch/qmatch.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_input = 2;

// 12 significant digits, always with a decimal point or exponent.
std::string real(double x) {
    std::string s = fmt::format("{:.12g}", x);
    if (s.find_first_of(".einn") == std::string::npos) {
        s += ".0";
    }
    return s;
}

std::string vertex_list(const qmatch::VertexSet& vs) {
    std::string out = "{";
    for (std::size_t i = 0; i < vs.size(); ++i) {
        out += (i ? "," : "") + std::to_string(vs[i]);
    }
    return out + "}";
}

void row(const std::string& key, const std::string& value) { fmt::print("{:<16}{}\n", key, value); }

struct GraphSource {
    std::string graph6;
    std::string edges_file;

    void attach(CLI::App* cmd) {
        auto* g6 = cmd->add_option("--graph6", graph6, "graph in graph6 format");
        auto* ef = cmd->add_option("--edges", edges_file, "edge-list file ('n <count>' then 'u v' lines)");
        g6->excludes(ef);
        ef->excludes(g6);
        cmd->require_option(1);
    }

    qmatch::Graph load() const {
        if (!graph6.empty()) {
            return qmatch::decode_graph6(graph6);
        }
        std::ifstream in(edges_file);
        if (!in) {
            throw qmatch::InputError("cannot open edge list '" + edges_file + "'");
        }
        return qmatch::read_edge_list(in);
    }
};

int cmd_q1(const GraphSource& src) {
    const qmatch::Graph g = src.load();
    if (g.order() == 0) {
        throw qmatch::InputError("q1: graph has no vertices");
    }
    fmt::print("{}\n", real(qmatch::q1(g)));
    return exit_ok;
}

int cmd_threshold(long long n) {
    const double q = qmatch::q1_threshold(n);
    const double r = qmatch::r_of_n(n);
    const auto e = qmatch::edge_threshold(n);
    row("n", std::to_string(n));
    row("q1_threshold", real(q));
    row("r(n)", real(r));
    row("edge_threshold", std::to_string(e));
    return exit_ok;
}

int cmd_rn(long long n, bool closed_form) {
    const double root = qmatch::r_of_n(n);
    const double radical = closed_form ? qmatch::closed_form_r(n) : 0.0;
    row("n", std::to_string(n));
    row("r(n)", real(root));
    if (closed_form) {
        row("closed_form", real(radical));
        row("agree_1e-6", std::abs(radical - root) <= 1e-6 ? "yes" : "no");
        return std::abs(radical - root) <= 1e-6 ? exit_ok : exit_failure;
    }
    return exit_ok;
}

int cmd_check(const GraphSource& src) {
    const qmatch::Graph g = src.load();
    const qmatch::VerdictRecord rec = qmatch::check_graph(g);
    row("graph6", rec.graph6);
    row("n", std::to_string(rec.n));
    row("edges", std::to_string(rec.edges));
    row("edge_threshold", std::to_string(rec.edge_threshold));
    row("q1", real(rec.q1));
    row("q1_threshold", real(rec.q1_threshold));
    row("has_pm", rec.has_pm ? "true" : "false");
    row("verdict", qmatch::to_string(rec.verdict));
    row("witness", rec.witness ? vertex_list(*rec.witness) : "-");
    return rec.verdict == qmatch::Verdict::counterexample ? exit_failure : exit_ok;
}

struct VerifyArgs {
    std::optional<std::size_t> exhaustive;
    std::string graph6_file;
    std::optional<std::size_t> random_n;
    double p = 0.5;
    std::size_t count = 1000;
    std::uint64_t seed = 1;
    std::string out;
    std::size_t jobs = 1;
    bool stable = false;
};

void print_summary(const qmatch::Summary& s) {
    row("checked", std::to_string(s.checked));
    row("conclusion", std::to_string(s.conclusion_holds));
    row("not_met", std::to_string(s.hypothesis_not_met));
    row("boundary", std::to_string(s.boundary));
    row("counterexamples", std::to_string(s.counterexamples));
    row("edge_violations", std::to_string(s.edge_theorem_violations));
    row("witness_fail", std::to_string(s.witness_failures));
    row("skipped_odd", std::to_string(s.skipped_odd));
    row("skipped_disconn", std::to_string(s.skipped_disconnected));
    row("parse_errors", std::to_string(s.parse_errors));
    for (const auto& rec : s.counterexample_records) {
        fmt::print("COUNTEREXAMPLE {} q1={} threshold={}\n", rec.graph6, real(rec.q1), real(rec.q1_threshold));
    }
    for (const auto& rec : s.edge_violation_records) {
        fmt::print("EDGE-VIOLATION {} edges={} threshold={}\n", rec.graph6, rec.edges, rec.edge_threshold);
    }
    for (const auto& e : s.errors) {
        fmt::print(stderr, "parse error: {}\n", e);
    }
}

int cmd_verify(const VerifyArgs& a) {
    std::unique_ptr<std::ofstream> file;
    std::unique_ptr<qmatch::JsonlWriter> sink;
    if (!a.out.empty()) {
        file = std::make_unique<std::ofstream>(a.out);
        if (!*file) {
            throw qmatch::InputError("cannot open output '" + a.out + "'");
        }
        sink = std::make_unique<qmatch::JsonlWriter>(*file);
    }
    // Records are always emitted in input order, so --stable needs no extra work.
    const qmatch::HarnessOptions opts{a.jobs, sink.get()};
    qmatch::Summary summary;
    if (a.exhaustive) {
        summary = qmatch::run_exhaustive(*a.exhaustive, opts);
    } else if (!a.graph6_file.empty()) {
        std::ifstream in(a.graph6_file);
        if (!in) {
            throw qmatch::InputError("cannot open graph6 file '" + a.graph6_file + "'");
        }
        summary = qmatch::run_stream(in, opts);
    } else {
        summary = qmatch::run_random(*a.random_n, a.p, a.count, a.seed, opts);
    }
    print_summary(summary);
    return summary.clean() ? exit_ok : exit_failure;
}

int cmd_extremal(const std::vector<std::size_t>& ns, const std::string& which, bool emit_graph6) {
    static const std::map<std::string, qmatch::ExtremalKind> kinds{
        {"h", qmatch::ExtremalKind::h}, {"k2e4", qmatch::ExtremalKind::k2e4}, {"k3e5", qmatch::ExtremalKind::k3e5}};
    bool ok = true;
    fmt::print("{:<6}{:<7}{:<7}{:<9}{:<16}{:<16}{:<8}{:<12}{}\n", "n", "graph", "edges", "edge_thr", "q1",
               "q1_threshold", "has_pm", "witness", "status");
    for (std::size_t n : ns) {
        const auto kind = which.empty() ? qmatch::default_extremal(n) : kinds.at(which);
        const qmatch::Graph g = qmatch::extremal_graph(n, kind);
        std::string status = "-";
        if (kind == qmatch::default_extremal(n)) {
            const auto rep = qmatch::sharpness_row(n);
            status = rep.passed ? "sharp" : "FAIL";
            ok = ok && rep.passed;
        }
        const auto m = qmatch::maximum_matching(g);
        fmt::print("{:<6}{:<7}{:<7}{:<9}{:<16}{:<16}{:<8}{:<12}{}\n", n, qmatch::to_string(kind), g.edge_count(),
                   qmatch::edge_threshold(static_cast<long long>(n)), real(qmatch::q1(g)),
                   real(qmatch::q1_threshold(static_cast<long long>(n))), 2 * m.size == n ? "true" : "false",
                   m.witness ? vertex_list(*m.witness) : "-", status);
        if (emit_graph6) {
            fmt::print("{}\n", qmatch::encode_graph6(g));
        }
    }
    return ok ? exit_ok : exit_failure;
}

// "s,n1,n2,..." -> instance
qmatch::ProofInstance parse_instance(const std::string& text) {
    std::vector<std::size_t> values;
    std::stringstream ss(text);
    std::string field;
    while (std::getline(ss, field, ',')) {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(field, &used);
            if (used != field.size() || v < 0) {
                throw std::invalid_argument(field);
            }
            values.push_back(static_cast<std::size_t>(v));
        } catch (const std::logic_error&) {
            throw qmatch::InputError("--instance: bad integer '" + field + "'");
        }
    }
    if (values.size() < 2) {
        throw qmatch::InputError("--instance: expected s,n1,...,nk");
    }
    return qmatch::ProofInstance(values.front(), {values.begin() + 1, values.end()});
}

void print_report(const qmatch::ProofReport& r) {
    std::string verdict = !r.applicable ? "n/a" : (r.passed ? "pass" : "FAIL");
    fmt::print("{:<18}{:<5} {}\n", r.check, verdict, r.subject);
    for (const auto& [key, value] : r.values) {
        fmt::print("    {:<16}{}\n", key, real(value));
    }
    for (const auto& f : r.failures) {
        fmt::print("    failure: {}\n", f);
    }
}

struct Tally {
    std::size_t applicable = 0;
    std::size_t passed = 0;
};

int cmd_proof_check(bool all, const std::string& instance, std::size_t nmax, const std::string& out) {
    std::unique_ptr<std::ofstream> file;
    std::unique_ptr<qmatch::JsonlWriter> sink;
    if (!out.empty()) {
        file = std::make_unique<std::ofstream>(out);
        if (!*file) {
            throw qmatch::InputError("cannot open output '" + out + "'");
        }
        sink = std::make_unique<qmatch::JsonlWriter>(*file);
    }
    auto emit = [&](const qmatch::ProofReport& r) {
        if (sink) {
            sink->write(r.to_json());
        }
    };

    if (!all) {
        const auto inst = parse_instance(instance);
        bool ok = true;
        for (const auto& r : {qmatch::check_root_bounds(inst), qmatch::check_vertex_shift(inst),
                              qmatch::check_merge_singletons(inst)}) {
            print_report(r);
            emit(r);
            ok = ok && r.passed;
        }
        return ok ? exit_ok : exit_failure;
    }

    if (nmax < 4 || nmax % 2 != 0) {
        throw qmatch::InputError("--nmax must be an even integer >= 4");
    }
    std::map<std::string, Tally> tally;
    std::vector<qmatch::ProofReport> failures;
    auto account = [&](const qmatch::ProofReport& r) {
        emit(r);
        auto& t = tally[r.check];
        if (!r.applicable) {
            return;
        }
        ++t.applicable;
        if (r.passed) {
            ++t.passed;
        } else {
            failures.push_back(r);
        }
    };

    auto instances = qmatch::exhaustive_instances(nmax);
    const std::size_t exhaustive_count = instances.size();
    if (nmax < 40) {
        auto sample = qmatch::sampled_instances(200, std::max<std::size_t>(nmax + 2, 14), 40);
        instances.insert(instances.end(), sample.begin(), sample.end());
    }
    for (const auto& inst : instances) {
        account(qmatch::check_root_bounds(inst));
        account(qmatch::check_vertex_shift(inst));
        account(qmatch::check_merge_singletons(inst));
    }
    for (std::size_t n = 6; n <= 100; n += 2) {
        for (std::size_t s = 1; 2 * s + 4 <= n; ++s) {
            account(qmatch::check_h_bound(n, s));
        }
    }
    for (std::size_t n = 4; n <= 100; n += 2) {
        account(qmatch::check_case_analysis(n));
    }

    fmt::print("instances       {} exhaustive (n <= {}) + {} sampled\n", exhaustive_count, nmax,
               instances.size() - exhaustive_count);
    fmt::print("{:<18}{:>11}{:>9}{:>9}\n", "check", "applicable", "passed", "failed");
    for (const auto& [name, t] : tally) {
        fmt::print("{:<18}{:>11}{:>9}{:>9}\n", name, t.applicable, t.passed, t.applicable - t.passed);
    }
    const auto min_e = qmatch::check_h_bound(6, 1);
    fmt::print("h-bound minimum E(n=6, s=1) = {}\n", real(min_e.values[1].second));

    fmt::print("maximiser of q1 over instances:\n");
    for (std::size_t n = 4; n <= nmax; n += 2) {
        const auto [inst, value] = qmatch::maximizing_instance(n);
        fmt::print("    n={:<4} s={:<3} parts={:<24} q1={}\n", n, inst.s(),
                   inst.describe().substr(inst.describe().find('[')), real(value));
    }

    fmt::print("polynomial transcriptions:\n");
    for (const auto& e : qmatch::verify_polynomial_transcriptions()) {
        if (!e.agrees) {
            fmt::print("    DISCREPANCY {:<12} {} (relative error {})\n", e.polynomial, e.subject,
                       fmt::format("{:.3g}", e.max_relative_error));
        }
    }
    fmt::print("    (all other expansions agree to 1e-9)\n");

    for (const auto& r : failures) {
        print_report(r);
    }
    return failures.empty() ? exit_ok : exit_failure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Signless Laplacian spectral radius and perfect matchings: verification toolkit", "qmatch"};
    app.require_subcommand(1);

    GraphSource q1_src;
    auto* q1_cmd = app.add_subcommand("q1", "signless Laplacian spectral radius of a graph");
    q1_src.attach(q1_cmd);

    long long threshold_n = 0;
    auto* threshold_cmd = app.add_subcommand("threshold", "spectral and edge thresholds for even n >= 4");
    threshold_cmd->add_option("--n", threshold_n, "graph order")->required();

    long long rn_n = 0;
    bool rn_closed = false;
    auto* rn_cmd = app.add_subcommand("rn", "largest root r(n) of the threshold cubic");
    rn_cmd->add_option("--n", rn_n, "graph order")->required();
    rn_cmd->add_flag("--closed-form", rn_closed, "also evaluate the radical closed form");

    GraphSource check_src;
    auto* check_cmd = app.add_subcommand("check", "classify one connected even-order graph");
    check_src.attach(check_cmd);

    VerifyArgs va;
    std::size_t random_n = 0;
    auto* verify_cmd = app.add_subcommand("verify", "run the theorem harness over a graph corpus");
    auto* ex_opt = verify_cmd->add_option("--exhaustive", va.exhaustive, "all connected graphs of order 4 or 6");
    auto* file_opt = verify_cmd->add_option("--graph6-file", va.graph6_file, "graph6 corpus");
    auto* rand_opt = verify_cmd->add_option("--random", random_n, "order of sampled connected G(n,p) graphs");
    verify_cmd->add_option("--p", va.p, "edge probability")->needs(rand_opt);
    verify_cmd->add_option("--count", va.count, "number of sampled graphs")->needs(rand_opt);
    verify_cmd->add_option("--seed", va.seed, "sampling seed")->needs(rand_opt);
    verify_cmd->add_option("--out", va.out, "JSONL output path");
    verify_cmd->add_option("--jobs", va.jobs, "worker threads")->check(CLI::PositiveNumber);
    verify_cmd->add_flag("--stable", va.stable, "emit records in input order");
    ex_opt->excludes(file_opt)->excludes(rand_opt);
    file_opt->excludes(rand_opt);
    verify_cmd->require_option(1, 0);

    std::vector<std::size_t> ext_ns;
    std::string ext_which;
    bool ext_emit = false;
    auto* ext_cmd = app.add_subcommand("extremal", "extremal graphs and the sharpness report");
    ext_cmd->add_option("--n", ext_ns, "graph order(s)")->required();
    ext_cmd->add_option("--which", ext_which, "h | k2e4 | k3e5")->check(CLI::IsMember({"h", "k2e4", "k3e5"}));
    ext_cmd->add_flag("--emit-graph6", ext_emit, "print each graph in graph6");

    bool pc_all = false;
    std::string pc_instance;
    std::size_t pc_nmax = 12;
    std::string pc_out;
    auto* pc_cmd = app.add_subcommand("proof-check", "numerical checks of the proof steps");
    auto* all_opt = pc_cmd->add_flag("--all", pc_all, "exhaustive small instances plus a seeded sample");
    auto* inst_opt = pc_cmd->add_option("--instance", pc_instance, "s,n1,...,nk");
    pc_cmd->add_option("--nmax", pc_nmax, "largest order for the exhaustive instance set");
    pc_cmd->add_option("--out", pc_out, "JSONL output path for the reports");
    all_opt->excludes(inst_opt);
    inst_opt->excludes(all_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n" << app.help();
        return exit_input;
    }

    try {
        if (*q1_cmd) return cmd_q1(q1_src);
        if (*threshold_cmd) return cmd_threshold(threshold_n);
        if (*rn_cmd) return cmd_rn(rn_n, rn_closed);
        if (*check_cmd) return cmd_check(check_src);
        if (*verify_cmd) {
            if (*rand_opt) {
                va.random_n = random_n;
            }
            return cmd_verify(va);
        }
        if (*ext_cmd) return cmd_extremal(ext_ns, ext_which, ext_emit);
        if (*pc_cmd) {
            if (!pc_all && pc_instance.empty()) {
                std::cerr << "error: proof-check needs --all or --instance\n";
                return exit_input;
            }
            return cmd_proof_check(pc_all, pc_instance, pc_nmax, pc_out);
        }
    } catch (const qmatch::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const qmatch::HypothesisError& e) {
        std::cerr << "hypothesis not applicable: " << e.what() << "\n";
        return exit_input;
    } catch (const qmatch::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_input;
    } catch (const qmatch::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
    return exit_input;
}
