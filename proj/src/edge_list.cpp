#include "cbn/edge_list.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

namespace cbn {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& message) {
    throw GraphError("line " + std::to_string(line) + ": " + message);
}

Vertex parse_index(const std::string& token, std::size_t line) {
    if (token.empty() || !std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        fail(line, "expected a nonnegative integer, got \"" + token + "\"");
    }
    const unsigned long long value = std::stoull(token);
    if (value >= std::numeric_limits<Vertex>::max()) {
        fail(line, "vertex index " + token + " is too large");
    }
    return static_cast<Vertex>(value);
}

} // namespace

Digraph parse_edge_list(std::istream& in) {
    std::vector<Edge> edges;
    std::optional<std::size_t> declared_n;
    std::size_t largest = 0;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        text.erase(std::min(text.find('#'), text.size()));
        std::istringstream fields(text);
        std::vector<std::string> tokens;
        for (std::string t; fields >> t;) {
            tokens.push_back(t);
        }
        if (tokens.empty()) {
            continue;
        }
        if (tokens.size() != 2) {
            fail(line, "expected two fields, got " + std::to_string(tokens.size()));
        }
        if (tokens[0] == "n") {
            if (declared_n || !edges.empty()) {
                fail(line, "the \"n <count>\" header must come first and only once");
            }
            declared_n = parse_index(tokens[1], line);
            continue;
        }
        const Vertex u = parse_index(tokens[0], line);
        const Vertex v = parse_index(tokens[1], line);
        if (declared_n && (u >= *declared_n || v >= *declared_n)) {
            fail(line, "edge (" + tokens[0] + ", " + tokens[1] + ") exceeds n = " +
                           std::to_string(*declared_n));
        }
        largest = std::max<std::size_t>(largest, std::max(u, v));
        edges.emplace_back(u, v);
    }
    if (!declared_n && edges.empty()) {
        throw GraphError("edge list is empty");
    }
    return Digraph::from_edge_list(edges, declared_n ? *declared_n : largest + 1);
}

Digraph parse_edge_list(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_edge_list(in);
}

Digraph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw GraphError("cannot open \"" + path + "\"");
    }
    return parse_edge_list(in);
}

std::string format_edge_list(const Digraph& g) {
    std::ostringstream out;
    out << "n " << g.size() << "\n";
    for (const auto& [u, v] : g.edges()) {
        out << u << " " << v << "\n";
    }
    return out.str();
}

} // namespace cbn
