#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "cbn/digraph.hpp"

namespace cbn {

// One irreducible component: the digraph on a block, with local vertex i
// standing for global vertex `global[i]` (ascending).
struct Component {
    Digraph graph;
    std::vector<Vertex> global;
};

// Blocks U_0..U_{p*-1} of the loop-number partition and their component
// digraphs. Block 0 contains vertex 0 and N_out(U_k) = U_{k+1 mod p*}.
struct Decomposition {
    std::size_t p_star = 0;
    std::vector<VertexSet> blocks;
    std::vector<Component> components;
    // block_of[v] = index of the block containing v.
    std::vector<std::size_t> block_of;
    // local_index[v] = position of v inside its block.
    std::vector<std::size_t> local_index;

    std::size_t size() const { return block_of.size(); }
};

enum class GraphKind { general, rose, cycle_digraph };

std::string_view to_string(GraphKind kind);

struct Classification {
    GraphKind kind = GraphKind::general;
    // Number of singleton blocks.
    std::size_t alpha = 0;
};

// i ~p j: some walk from i to j has length divisible by p. Throws
// PreconditionError unless g is strongly connected and p divides its loop
// number.
bool related(const Digraph& g, std::size_t p, Vertex i, Vertex j);

// The p classes of ~p, ordered so that block k+1 is the out-neighbourhood of
// block k and block 0 holds vertex 0.
std::vector<VertexSet> partition(const Digraph& g, std::size_t p);

// Components for p = loop_number(g); an edge u->v of a component means that a
// walk of length exactly p* joins u to v in g.
Decomposition irreducible_components(const Digraph& g);

Classification classify(const Decomposition& dec);

} // namespace cbn
