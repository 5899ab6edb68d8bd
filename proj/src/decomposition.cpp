#include "cbn/decomposition.hpp"

#include <algorithm>
#include <string>

namespace cbn {

namespace {

void require_divisor(const Digraph& g, std::size_t p) {
    const std::size_t p_star = loop_number(g);
    if (p == 0 || p_star % p != 0) {
        throw PreconditionError("p = " + std::to_string(p) + " does not divide the loop number " +
                                std::to_string(p_star));
    }
}

std::size_t residue(std::int64_t depth, std::size_t p) {
    return static_cast<std::size_t>(depth) % p;
}

} // namespace

std::string_view to_string(GraphKind kind) {
    switch (kind) {
    case GraphKind::general: return "general";
    case GraphKind::rose: return "rose";
    case GraphKind::cycle_digraph: return "cycle_digraph";
    }
    return "general";
}

bool related(const Digraph& g, std::size_t p, Vertex i, Vertex j) {
    require_divisor(g, p);
    // Every walk i->j has the same length mod p, namely d(j) - d(i).
    const auto depth = depth_labels(g);
    return residue(depth[i], p) == residue(depth[j], p);
}

std::vector<VertexSet> partition(const Digraph& g, std::size_t p) {
    require_divisor(g, p);
    const auto depth = depth_labels(g);
    std::vector<VertexSet> blocks(p);
    for (Vertex v = 0; v < g.size(); ++v) {
        blocks[residue(depth[v], p)].push_back(v);
    }
    return blocks;
}

Decomposition irreducible_components(const Digraph& g) {
    Decomposition dec;
    dec.p_star = loop_number(g);
    dec.blocks = partition(g, dec.p_star);
    dec.block_of.assign(g.size(), 0);
    dec.local_index.assign(g.size(), 0);
    for (std::size_t k = 0; k < dec.blocks.size(); ++k) {
        for (std::size_t i = 0; i < dec.blocks[k].size(); ++i) {
            dec.block_of[dec.blocks[k][i]] = k;
            dec.local_index[dec.blocks[k][i]] = i;
        }
    }
    for (const auto& block : dec.blocks) {
        std::vector<Edge> local_edges;
        for (std::size_t i = 0; i < block.size(); ++i) {
            const Vertex source = block[i];
            for (Vertex target : n_out_p(g, std::span(&source, 1), dec.p_star)) {
                // Length-p* walks stay inside the block.
                local_edges.emplace_back(static_cast<Vertex>(i),
                                         static_cast<Vertex>(dec.local_index[target]));
            }
        }
        dec.components.push_back(
            Component{Digraph::from_edge_list(local_edges, block.size()), block});
    }
    return dec;
}

Classification classify(const Decomposition& dec) {
    Classification c;
    c.alpha = static_cast<std::size_t>(std::count_if(
        dec.blocks.begin(), dec.blocks.end(), [](const VertexSet& b) { return b.size() == 1; }));
    if (c.alpha == dec.p_star) {
        c.kind = GraphKind::cycle_digraph;
    } else if (c.alpha > 0) {
        c.kind = GraphKind::rose;
    }
    return c;
}

} // namespace cbn
