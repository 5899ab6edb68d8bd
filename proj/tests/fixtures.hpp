#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cbn/digraph.hpp"
#include "cbn/graphgen.hpp"

// Named graphs shared by the test suites.
namespace fixtures {

inline cbn::Digraph c1() { return cbn::graphgen::cycle_digraph(1); }
inline cbn::Digraph c2() { return cbn::graphgen::cycle_digraph(2); }
inline cbn::Digraph c4() { return cbn::graphgen::cycle_digraph(4); }
// Three 4-cycles through vertex 0, n = 10.
inline cbn::Digraph r3x4() { return cbn::graphgen::rose(4, 3); }
// Two 4-cycles through vertex 0, n = 7.
inline cbn::Digraph r2x4() { return cbn::graphgen::rose(4, 2); }
// Cycles of length 4, 8, 12 through vertex 0, n = 22.
inline cbn::Digraph b4_8_12() {
    const std::vector<std::size_t> lengths{4, 8, 12};
    return cbn::graphgen::bouquet(lengths);
}
// Cycles 4, 4, 8 through vertex 0 and a 12-cycle through vertex 1, n = 25.
// Every component has a 4-cycle but the graph has no 16-cycle.
inline cbn::Digraph converse_counterexample() {
    const std::vector<std::size_t> lengths{4, 4, 8, 12};
    const std::vector<cbn::Vertex> anchors{0, 0, 1};
    return cbn::graphgen::cactus(lengths, anchors);
}

} // namespace fixtures
