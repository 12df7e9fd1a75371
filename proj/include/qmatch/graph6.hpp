#pragma once

// graph6 codec, a plain edge-list reader and a JSONL line sink.
//
// graph6 layout: N(n) followed by the upper triangle x(0,1), x(0,2), x(1,2),
// x(0,3), ... packed big-endian six bits per byte, each byte offset by 63.
// N(n) is the single byte n+63 for n <= 62, otherwise 126 followed by n in
// three 6-bit bytes.

#include <cstddef>
#include <cstdint>
#include <istream>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "json.hpp"
#include "qmatch/errors.hpp"
#include "qmatch/graph.hpp"

namespace qmatch {

inline constexpr std::string_view graph6_header = ">>graph6<<";
inline constexpr std::size_t graph6_max_order = 258047;

// Bytes needed for the upper triangle of an n-vertex graph.
inline std::size_t graph6_body_length(std::size_t n) {
    const std::size_t bits = n * (n == 0 ? 0 : n - 1) / 2;
    return (bits + 5) / 6;
}

inline std::string encode_graph6(const Graph& g) {
    const std::size_t n = g.order();
    if (n > graph6_max_order) {
        throw CapacityError("encode_graph6: n=" + std::to_string(n) + " exceeds " +
                            std::to_string(graph6_max_order));
    }
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else {
        out.push_back(static_cast<char>(126));
        out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
        out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
        out.push_back(static_cast<char>((n & 63) + 63));
    }
    const std::size_t header = out.size();
    out.resize(header + graph6_body_length(n), static_cast<char>(0));
    std::size_t k = 0;
    for (Vertex j = 1; j < n; ++j) {
        for (Vertex i = 0; i < j; ++i, ++k) {
            if (g.adjacent(i, j)) {
                out[header + k / 6] = static_cast<char>(out[header + k / 6] | (1 << (5 - k % 6)));
            }
        }
    }
    for (std::size_t b = header; b < out.size(); ++b) {
        out[b] = static_cast<char>(out[b] + 63);
    }
    return out;
}

inline Graph decode_graph6(std::string_view line) {
    const std::size_t base = line.starts_with(graph6_header) ? graph6_header.size() : 0;
    line.remove_prefix(base);
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) {
        line.remove_suffix(1);
    }
    auto byte_at = [&](std::size_t pos) {
        const auto v = static_cast<unsigned char>(line[pos]);
        if (v < 63 || v > 126) {
            throw ParseError("graph6: byte " + std::to_string(v) + " outside 63..126", base + pos);
        }
        return static_cast<std::size_t>(v - 63);
    };
    if (line.empty()) {
        throw ParseError("graph6: empty line", base);
    }
    std::size_t n = byte_at(0);
    std::size_t pos = 1;
    if (n == 63) {
        if (line.size() >= 2 && static_cast<unsigned char>(line[1]) == 126) {
            throw ParseError("graph6: orders above " + std::to_string(graph6_max_order) + " unsupported",
                             base + 1);
        }
        if (line.size() < 4) {
            throw ParseError("graph6: truncated order field", base + line.size());
        }
        n = (byte_at(1) << 12) | (byte_at(2) << 6) | byte_at(3);
        pos = 4;
    }
    for (std::size_t p = pos; p < line.size(); ++p) {
        byte_at(p);
    }
    const std::size_t expected = graph6_body_length(n);
    if (line.size() - pos != expected) {
        throw ParseError("graph6: expected " + std::to_string(expected) + " adjacency bytes for n=" +
                             std::to_string(n) + ", found " + std::to_string(line.size() - pos),
                         base + pos);
    }
    GraphBuilder b(n);
    std::size_t k = 0;
    for (Vertex j = 1; j < n; ++j) {
        for (Vertex i = 0; i < j; ++i, ++k) {
            if ((byte_at(pos + k / 6) >> (5 - k % 6)) & 1U) {
                b.add_edge(i, j);
            }
        }
    }
    return b.build();
}

// One line of a graph6 stream: a graph, or a parse error tied to its line number.
struct StreamItem {
    std::size_t line_number = 0;  // 1-based
    std::string text;
    std::optional<Graph> graph;
    std::string error;
};

// Pulls graphs from a graph6 stream, skipping blank lines and a header line.
// Malformed lines come back as error items; reading continues after them.
class Graph6Reader {
public:
    explicit Graph6Reader(std::istream& in) : in_(in) {}

    std::optional<StreamItem> next() {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_number_;
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (line.starts_with(graph6_header)) {
                line.erase(0, graph6_header.size());
            }
            if (line.find_first_not_of(" \t") == std::string::npos) {
                continue;
            }
            StreamItem item;
            item.line_number = line_number_;
            item.text = line;
            try {
                item.graph = decode_graph6(line);
            } catch (const ParseError& e) {
                item.error = e.what();
            }
            return item;
        }
        return std::nullopt;
    }

private:
    std::istream& in_;
    std::size_t line_number_ = 0;
};

// Edge-list text: a line "n <count>", then one "u v" pair per line (0-based).
// Blank lines and '#' comments are ignored.
inline Graph read_edge_list(std::istream& in) {
    std::string line;
    std::size_t line_number = 0;
    std::optional<GraphBuilder> builder;
    while (std::getline(in, line)) {
        ++line_number;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        std::string first;
        if (!(fields >> first)) {
            continue;
        }
        auto fail = [&](const std::string& why) {
            throw InputError("edge list line " + std::to_string(line_number) + ": " + why);
        };
        if (!builder) {
            long long n = -1;
            if (first != "n" || !(fields >> n) || n < 0) {
                fail("expected header 'n <count>'");
            }
            builder.emplace(static_cast<std::size_t>(n));
        } else {
            long long u = -1;
            long long v = -1;
            std::istringstream pair(line);
            if (!(pair >> u >> v) || u < 0 || v < 0) {
                fail("expected 'u v'");
            }
            std::string extra;
            if (pair >> extra) {
                fail("trailing text '" + extra + "'");
            }
            try {
                builder->add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
            } catch (const InputError& e) {
                fail(e.what());
            }
            continue;
        }
        std::string extra;
        if (fields >> extra) {
            fail("trailing text '" + extra + "'");
        }
    }
    if (!builder) {
        throw InputError("edge list: missing 'n <count>' header");
    }
    return builder->build();
}

// Serialises JSON objects one per line; safe to call from several threads.
class JsonlWriter {
public:
    explicit JsonlWriter(std::ostream& out) : out_(out) {}

    void write(const nlohmann::ordered_json& record) {
        const std::string text = record.dump();
        std::lock_guard lock(mutex_);
        out_ << text << '\n';
    }

private:
    std::ostream& out_;
    std::mutex mutex_;
};

}  // namespace qmatch
