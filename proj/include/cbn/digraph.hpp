#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "cbn/error.hpp"

namespace cbn {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;
// Sorted, duplicate-free list of vertex indices.
using VertexSet = std::vector<Vertex>;

// Directed graph on vertices 0..n-1. An edge u->v means that the update of v
// reads u. Self-loops are allowed, parallel edges are collapsed. Immutable
// once built.
class Digraph {
public:
    // Throws GraphError if n == 0 or an edge references a vertex >= n.
    static Digraph from_edge_list(std::span<const Edge> edges, std::size_t n);

    std::size_t size() const { return out_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    std::span<const Vertex> out_neighbors(Vertex v) const { return out_[v]; }
    std::span<const Vertex> in_neighbors(Vertex v) const { return in_[v]; }

    bool has_edge(Vertex u, Vertex v) const;
    // All edges in (from, to) lexicographic order.
    std::vector<Edge> edges() const;

    friend bool operator==(const Digraph&, const Digraph&) = default;

private:
    Digraph() = default;

    std::vector<std::vector<Vertex>> out_;
    std::vector<std::vector<Vertex>> in_;
    std::size_t edge_count_ = 0;
};

struct CycleList {
    // Each cycle starts at its smallest vertex and follows edge direction.
    std::vector<std::vector<Vertex>> cycles;
    std::vector<std::size_t> lengths;
};

inline constexpr std::size_t kDefaultCycleCap = 100000;

bool is_strongly_connected(const Digraph& g);

// Elementary circuits (Johnson). Throws CapExceeded once more than `cap`
// circuits have been found. Each circuit is reported once.
CycleList enumerate_cycles(const Digraph& g, std::size_t cap = kDefaultCycleCap);

// Breadth-first depth of every vertex from vertex 0. Unreached vertices get
// depth -1.
std::vector<std::int64_t> depth_labels(const Digraph& g);

// gcd of all cycle lengths, computed from BFS depth labels as the gcd of
// |d(u) + 1 - d(v)| over all edges. Throws PreconditionError if g is not
// strongly connected.
std::size_t loop_number(const Digraph& g);

// p-fold iterated neighbourhoods: N^0(S) = S, N^p(S) = N(N^{p-1}(S)).
VertexSet n_out_p(const Digraph& g, std::span<const Vertex> seed, std::size_t p);
VertexSet n_in_p(const Digraph& g, std::span<const Vertex> seed, std::size_t p);

} // namespace cbn
