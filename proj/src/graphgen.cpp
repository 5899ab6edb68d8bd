#include "cbn/graphgen.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

namespace cbn::graphgen {

namespace {

void require_lengths(std::span<const std::size_t> lengths) {
    if (lengths.empty()) {
        throw PreconditionError("at least one cycle length is required");
    }
    if (std::any_of(lengths.begin(), lengths.end(), [](std::size_t l) { return l == 0; })) {
        throw PreconditionError("cycle lengths must be at least 1");
    }
}

// Uniform in [0, bound) from raw engine output, so results do not depend on
// the standard library's distribution implementation.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t value = 0;
    do {
        value = rng();
    } while (value >= limit);
    return value % bound;
}

} // namespace

Digraph cycle_digraph(std::size_t length) {
    const std::size_t lengths[] = {length};
    return bouquet(lengths);
}

Digraph rose(std::size_t length, std::size_t count) {
    if (count == 0) {
        throw PreconditionError("a rose needs at least one cycle");
    }
    const std::vector<std::size_t> lengths(count, length);
    return bouquet(lengths);
}

Digraph bouquet(std::span<const std::size_t> lengths) {
    require_lengths(lengths);
    const std::vector<Vertex> anchors(lengths.size() - 1, 0);
    return cactus(lengths, anchors);
}

Digraph cactus(std::span<const std::size_t> lengths, std::span<const Vertex> anchors) {
    require_lengths(lengths);
    if (anchors.size() + 1 != lengths.size()) {
        throw PreconditionError("cactus needs one anchor per cycle after the first");
    }
    std::vector<Edge> edges;
    Vertex next = 1;
    for (std::size_t c = 0; c < lengths.size(); ++c) {
        const Vertex anchor = c == 0 ? 0 : anchors[c - 1];
        if (anchor >= next) {
            throw PreconditionError("anchor " + std::to_string(anchor) + " of cycle " +
                                    std::to_string(c) + " does not exist yet");
        }
        Vertex previous = anchor;
        for (std::size_t i = 1; i < lengths[c]; ++i) {
            edges.emplace_back(previous, next);
            previous = next++;
        }
        edges.emplace_back(previous, anchor);
    }
    return Digraph::from_edge_list(edges, next);
}

Digraph random_strongly_connected(std::size_t n, std::size_t extra_edges, std::uint64_t seed) {
    if (n == 0) {
        throw PreconditionError("random digraph needs at least one vertex");
    }
    std::set<Edge> edges;
    for (Vertex v = 0; v < n; ++v) {
        edges.emplace(v, static_cast<Vertex>((v + 1) % n));
    }
    const std::size_t target = std::min(edges.size() + extra_edges, n * n);
    std::mt19937_64 rng(seed);
    while (edges.size() < target) {
        const auto u = static_cast<Vertex>(draw_below(rng, n));
        const auto v = static_cast<Vertex>(draw_below(rng, n));
        edges.emplace(u, v);
    }
    const std::vector<Edge> list(edges.begin(), edges.end());
    return Digraph::from_edge_list(list, n);
}

Digraph subdivide(const Digraph& g, std::size_t factor) {
    if (factor == 0) {
        throw PreconditionError("subdivision factor must be at least 1");
    }
    std::vector<Edge> edges;
    auto next = static_cast<Vertex>(g.size());
    for (const auto& [u, v] : g.edges()) {
        Vertex previous = u;
        for (std::size_t i = 1; i < factor; ++i) {
            edges.emplace_back(previous, next);
            previous = next++;
        }
        edges.emplace_back(previous, v);
    }
    return Digraph::from_edge_list(edges, next);
}

GenKind parse_gen_kind(std::string_view name) {
    if (name == "cycle") return GenKind::cycle;
    if (name == "rose") return GenKind::rose;
    if (name == "bouquet") return GenKind::bouquet;
    if (name == "cactus") return GenKind::cactus;
    if (name == "random") return GenKind::random;
    throw PreconditionError("unknown generator kind \"" + std::string(name) + "\"");
}

Digraph generate(const GenSpec& spec) {
    auto expect = [&](std::size_t count, const char* what) {
        if (spec.params.size() != count) {
            throw PreconditionError(std::string(what) + " expects " + std::to_string(count) +
                                    " parameter(s)");
        }
    };
    switch (spec.kind) {
    case GenKind::cycle:
        expect(1, "cycle");
        if (spec.params[0] == 0) {
            throw PreconditionError("cycle length must be at least 1");
        }
        return cycle_digraph(spec.params[0]);
    case GenKind::rose:
        expect(2, "rose");
        if (spec.params[0] == 0) {
            throw PreconditionError("cycle length must be at least 1");
        }
        return rose(spec.params[0], spec.params[1]);
    case GenKind::bouquet: return bouquet(spec.params);
    case GenKind::cactus: return cactus(spec.params, spec.anchors);
    case GenKind::random:
        expect(2, "random");
        return random_strongly_connected(spec.params[0], spec.params[1], spec.seed);
    }
    throw PreconditionError("unknown generator kind");
}

} // namespace cbn::graphgen
