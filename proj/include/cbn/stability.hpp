#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cbn/decomposition.hpp"
#include "cbn/digraph.hpp"
#include "cbn/dynamics.hpp"
#include "cbn/necklace.hpp"

namespace cbn {

using Rational = boost::multiprecision::cpp_rational;

enum class EdgeKind { down, up, self_loop };

std::string_view to_string(EdgeKind kind);

struct StabilityEdge {
    Necklace from;
    Necklace to;
    EdgeKind kind = EdgeKind::down;
    std::optional<Rational> weight;

    friend bool operator==(const StabilityEdge&, const StabilityEdge&) = default;
};

// Orbit-to-orbit transitions under a single-entry perturbation. Nodes are
// the necklaces of length p_star in (sigma, rep) order; edges are grouped by
// source in node order, then by target in node order.
struct StabilityStructure {
    std::size_t p_star = 0;
    std::size_t n = 0;
    std::size_t alpha = 0;
    GraphKind kind = GraphKind::general;
    std::vector<Necklace> nodes;
    std::vector<StabilityEdge> edges;

    friend bool operator==(const StabilityStructure&, const StabilityStructure&) = default;
};

// Reads the common bit of each block, block k giving position k. Throws
// PreconditionError if x is not block-constant.
Necklace orbit_to_necklace(const Decomposition& dec, const State& x);

// Block-constant state with position k of rep(s) on block U_k.
State necklace_to_state(const Decomposition& dec, const Necklace& s);

// Necklace of the orbit entered after flipping entry i of the periodic state
// x, from the block structure alone (no simulation).
Necklace successor_after_flip(const Digraph& g, const Decomposition& dec, const State& x,
                              Vertex i);

// Edge set with weights left empty.
StabilityStructure stability_edges(const Digraph& g);

// Edge set with exact weights:
//   down  gamma_down(s, t) / p*
//   up    alpha * gamma_up(s, t) / (n p*)
//   self  (p* - sigma(s)) (n - alpha) / (n p*)
StabilityStructure transition_weights(const Digraph& g);

// Sum of outgoing weights per node, in node order. Unweighted edges count 0.
std::vector<Rational> outgoing_weight_sums(const StabilityStructure& h);

enum class ExportFormat { json, dot, table };

// Throws Error on anything other than "json", "dot" or "table".
ExportFormat parse_export_format(std::string_view name);

std::string export_structure(const StabilityStructure& h, ExportFormat format);

// Inverse of the JSON export. Throws Error on malformed input.
StabilityStructure parse_structure_json(std::string_view text);

} // namespace cbn
