#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "cbn/digraph.hpp"

namespace cbn::graphgen {

// Vertices 0..L-1 with edges i -> i+1 mod L.
Digraph cycle_digraph(std::size_t length);

// `count` cycles of length `length` through vertex 0; n = 1 + count (length - 1).
Digraph rose(std::size_t length, std::size_t count);

// One cycle per entry of `lengths`, all through vertex 0. Cycle i uses the
// next length-1 fresh vertices in order.
Digraph bouquet(std::span<const std::size_t> lengths);

// Like bouquet, but cycle i (i >= 1) passes through vertex anchors[i-1]
// instead of vertex 0; each anchor must already exist when its cycle is
// added. The cycles are exactly the elementary cycles of the result.
Digraph cactus(std::span<const std::size_t> lengths, std::span<const Vertex> anchors);

// Hamiltonian backbone 0 -> 1 -> ... -> n-1 -> 0 plus `extra_edges` distinct
// random edges (self-loops allowed). Output depends only on the arguments.
Digraph random_strongly_connected(std::size_t n, std::size_t extra_edges, std::uint64_t seed);

// Replaces every edge by a directed path of length `factor`, multiplying all
// cycle lengths by `factor`. New vertices are numbered after the original
// ones, in edge order.
Digraph subdivide(const Digraph& g, std::size_t factor);

enum class GenKind { cycle, rose, bouquet, cactus, random };

GenKind parse_gen_kind(std::string_view name);

struct GenSpec {
    GenKind kind = GenKind::cycle;
    // cycle: {L}; rose: {m, c}; bouquet/cactus: lengths; random: {n, extra}.
    std::vector<std::size_t> params;
    // cactus only.
    std::vector<Vertex> anchors;
    std::uint64_t seed = 0;
};

// Throws PreconditionError on parameters that do not fit the kind.
Digraph generate(const GenSpec& spec);

} // namespace cbn::graphgen
