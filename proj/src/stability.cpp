#include "cbn/stability.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

namespace cbn {

namespace {

Necklace::Word block_word(const Decomposition& dec, const State& x) {
    Necklace::Word word = 0;
    for (const auto& block : dec.blocks) {
        word = (word << 1) | static_cast<Necklace::Word>(x.test(block.front()));
    }
    return word;
}

Necklace::Word position_bit(std::size_t length, std::size_t position) {
    return Necklace::Word{1} << (length - 1 - position);
}

std::size_t node_index(const std::vector<Necklace>& nodes, const Necklace& s) {
    return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), s) -
                                    nodes.begin());
}

struct EdgePlan {
    EdgeKind kind;
    std::size_t multiplicity;
};

StabilityStructure build(const Digraph& g, bool with_weights) {
    const Decomposition dec = irreducible_components(g);
    const Classification cls = classify(dec);
    StabilityStructure h;
    h.p_star = dec.p_star;
    h.n = g.size();
    h.alpha = cls.alpha;
    h.kind = cls.kind;
    h.nodes = enumerate_necklaces(dec.p_star);

    const std::size_t p = h.p_star;
    const Rational n_p(static_cast<long long>(h.n * p));
    for (const Necklace& s : h.nodes) {
        // Targets keyed by node index so edges come out in node order.
        std::map<std::size_t, EdgePlan> plan;
        for (std::size_t pos = 0; pos < p; ++pos) {
            const bool one = s.at(pos);
            if (!one && h.alpha == 0) {
                continue;
            }
            const Necklace t = canonicalize_word(s.word() ^ position_bit(p, pos), p);
            auto [it, inserted] =
                plan.try_emplace(node_index(h.nodes, t), EdgePlan{one ? EdgeKind::down : EdgeKind::up, 0});
            ++it->second.multiplicity;
        }
        if (sigma(s) != p && h.kind != GraphKind::cycle_digraph) {
            plan.try_emplace(node_index(h.nodes, s), EdgePlan{EdgeKind::self_loop, 0});
        }
        for (const auto& [target, edge] : plan) {
            StabilityEdge e{s, h.nodes[target], edge.kind, std::nullopt};
            if (with_weights) {
                switch (edge.kind) {
                case EdgeKind::down:
                    e.weight = Rational(static_cast<long long>(edge.multiplicity),
                                        static_cast<long long>(p));
                    break;
                case EdgeKind::up:
                    e.weight = Rational(static_cast<long long>(h.alpha * edge.multiplicity)) / n_p;
                    break;
                case EdgeKind::self_loop:
                    e.weight =
                        Rational(static_cast<long long>((p - sigma(s)) * (h.n - h.alpha))) / n_p;
                    break;
                }
            }
            h.edges.push_back(std::move(e));
        }
    }
    return h;
}

std::string weight_label(const std::optional<Rational>& w) {
    if (!w) {
        return "?";
    }
    return boost::multiprecision::numerator(*w).str() + "/" +
           boost::multiprecision::denominator(*w).str();
}

std::string dot_export(const StabilityStructure& h) {
    std::ostringstream out;
    out << "digraph stability {\n";
    for (const auto& s : h.nodes) {
        out << "  \"" << s.rep() << "\";\n";
    }
    for (const auto& e : h.edges) {
        out << "  \"" << e.from.rep() << "\" -> \"" << e.to.rep() << "\" [label=\""
            << weight_label(e.weight) << "\", kind=\"" << to_string(e.kind) << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

std::string table_export(const StabilityStructure& h) {
    std::ostringstream out;
    out << "p_star " << h.p_star << "  n " << h.n << "  kind " << to_string(h.kind) << "  alpha "
        << h.alpha << "\n";
    out << "from -> to  kind  weight\n";
    for (const auto& e : h.edges) {
        out << e.from.rep() << " -> " << e.to.rep() << "  " << to_string(e.kind) << "  "
            << weight_label(e.weight) << "\n";
    }
    return out.str();
}

std::string json_export(const StabilityStructure& h) {
    nlohmann::ordered_json j;
    j["p_star"] = h.p_star;
    j["n"] = h.n;
    j["alpha"] = h.alpha;
    j["kind"] = std::string(to_string(h.kind));
    j["nodes"] = nlohmann::ordered_json::array();
    for (const auto& s : h.nodes) {
        j["nodes"].push_back(s.rep());
    }
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : h.edges) {
        nlohmann::ordered_json je;
        je["from"] = e.from.rep();
        je["to"] = e.to.rep();
        if (e.weight) {
            je["num"] = boost::multiprecision::numerator(*e.weight).convert_to<long long>();
            je["den"] = boost::multiprecision::denominator(*e.weight).convert_to<long long>();
        }
        je["kind"] = std::string(to_string(e.kind));
        j["edges"].push_back(std::move(je));
    }
    return j.dump(2) + "\n";
}

GraphKind parse_graph_kind(const std::string& name) {
    for (GraphKind k : {GraphKind::general, GraphKind::rose, GraphKind::cycle_digraph}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    throw Error("unknown graph kind \"" + name + "\"");
}

EdgeKind parse_edge_kind(const std::string& name) {
    for (EdgeKind k : {EdgeKind::down, EdgeKind::up, EdgeKind::self_loop}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    throw Error("unknown edge kind \"" + name + "\"");
}

} // namespace

std::string_view to_string(EdgeKind kind) {
    switch (kind) {
    case EdgeKind::down: return "down";
    case EdgeKind::up: return "up";
    case EdgeKind::self_loop: return "self_loop";
    }
    return "down";
}

Necklace orbit_to_necklace(const Decomposition& dec, const State& x) {
    if (!is_periodic_state(dec, x)) {
        throw PreconditionError("state " + x.to_string() + " is not constant on every block");
    }
    return canonicalize_word(block_word(dec, x), dec.p_star);
}

State necklace_to_state(const Decomposition& dec, const Necklace& s) {
    if (s.length() != dec.p_star) {
        throw PreconditionError("necklace " + s.rep() + " does not have length p* = " +
                                std::to_string(dec.p_star));
    }
    State x(dec.size());
    for (std::size_t k = 0; k < dec.p_star; ++k) {
        for (Vertex v : dec.blocks[k]) {
            x.set(v, s.at(k));
        }
    }
    return x;
}

Necklace successor_after_flip(const Digraph& g, const Decomposition& dec, const State& x,
                              Vertex i) {
    if (i >= g.size()) {
        throw PreconditionError("flip index " + std::to_string(i) + " out of range");
    }
    if (!is_periodic_state(dec, x)) {
        throw PreconditionError("state " + x.to_string() + " is not periodic");
    }
    const std::size_t k = dec.block_of[i];
    Necklace::Word word = block_word(dec, x);
    const Necklace::Word bit = position_bit(dec.p_star, k);
    if (x.test(i)) {
        // A 0 inside a block spreads through the component and persists.
        word &= ~bit;
    } else if (dec.blocks[k].size() == 1) {
        // A singleton block is the whole component state.
        word |= bit;
    }
    // Otherwise the lone 1 dies out and the orbit is unchanged.
    return canonicalize_word(word, dec.p_star);
}

StabilityStructure stability_edges(const Digraph& g) { return build(g, false); }

StabilityStructure transition_weights(const Digraph& g) { return build(g, true); }

std::vector<Rational> outgoing_weight_sums(const StabilityStructure& h) {
    std::vector<Rational> sums(h.nodes.size());
    for (const auto& e : h.edges) {
        if (e.weight) {
            sums[node_index(h.nodes, e.from)] += *e.weight;
        }
    }
    return sums;
}

ExportFormat parse_export_format(std::string_view name) {
    if (name == "json") {
        return ExportFormat::json;
    }
    if (name == "dot") {
        return ExportFormat::dot;
    }
    if (name == "table") {
        return ExportFormat::table;
    }
    throw Error("unknown export format \"" + std::string(name) + "\" (expected json, dot or table)");
}

std::string export_structure(const StabilityStructure& h, ExportFormat format) {
    switch (format) {
    case ExportFormat::json: return json_export(h);
    case ExportFormat::dot: return dot_export(h);
    case ExportFormat::table: return table_export(h);
    }
    return {};
}

StabilityStructure parse_structure_json(std::string_view text) {
    try {
        const auto j = nlohmann::json::parse(text);
        StabilityStructure h;
        h.p_star = j.at("p_star").get<std::size_t>();
        h.n = j.at("n").get<std::size_t>();
        h.alpha = j.at("alpha").get<std::size_t>();
        h.kind = parse_graph_kind(j.at("kind").get<std::string>());
        for (const auto& node : j.at("nodes")) {
            h.nodes.push_back(canonicalize(node.get<std::string>()));
        }
        for (const auto& je : j.at("edges")) {
            StabilityEdge e{canonicalize(je.at("from").get<std::string>()),
                            canonicalize(je.at("to").get<std::string>()),
                            parse_edge_kind(je.at("kind").get<std::string>()), std::nullopt};
            if (je.contains("num")) {
                e.weight = Rational(je.at("num").get<long long>(), je.at("den").get<long long>());
            }
            h.edges.push_back(std::move(e));
        }
        return h;
    } catch (const nlohmann::json::exception& ex) {
        throw Error(std::string("malformed stability JSON: ") + ex.what());
    }
}

} // namespace cbn
