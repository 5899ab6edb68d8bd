#include "cbn/dynamics.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

namespace cbn {

namespace {

void require_size(const Digraph& g, const State& x) {
    if (x.size() != g.size()) {
        throw PreconditionError("state has " + std::to_string(x.size()) +
                                " entries but the digraph has " + std::to_string(g.size()) +
                                " vertices");
    }
}

void require_inputs(const Digraph& g, Vertex j) {
    if (g.in_neighbors(j).empty()) {
        throw PreconditionError("vertex " + std::to_string(j) +
                                " has no in-neighbours; its conjunctive update is undefined");
    }
}

} // namespace

State step(const Digraph& g, const State& x) {
    require_size(g, x);
    State next(g.size());
    for (Vertex j = 0; j < g.size(); ++j) {
        require_inputs(g, j);
        const auto in = g.in_neighbors(j);
        next.set(j, std::all_of(in.begin(), in.end(), [&](Vertex i) { return x.test(i); }));
    }
    return next;
}

State step_k(const Digraph& g, const State& x, std::size_t p) {
    require_size(g, x);
    State current = x;
    for (std::size_t t = 0; t < p; ++t) {
        current = step(g, current);
    }
    return current;
}

State step_k_product(const Digraph& g, const State& x, std::size_t p) {
    require_size(g, x);
    State next(g.size());
    for (Vertex j = 0; j < g.size(); ++j) {
        require_inputs(g, j);
        const auto sources = n_in_p(g, std::span(&j, 1), p);
        next.set(j,
                 std::all_of(sources.begin(), sources.end(), [&](Vertex i) { return x.test(i); }));
    }
    return next;
}

Orbit find_orbit(const Digraph& g, const State& x0) {
    return find_orbit(g, x0, [](const Digraph& d, const State& s) { return step(d, s); });
}

Orbit find_orbit(const Digraph& g, const State& x0, const StepFunction& f) {
    require_size(g, x0);
    std::unordered_map<State, std::size_t> first_seen;
    std::vector<State> trajectory;
    State current = x0;
    while (true) {
        const auto [it, inserted] = first_seen.try_emplace(current, trajectory.size());
        if (!inserted) {
            Orbit orbit;
            orbit.transient = it->second;
            orbit.period = trajectory.size() - it->second;
            orbit.states.assign(trajectory.begin() + static_cast<std::ptrdiff_t>(it->second),
                                trajectory.end());
            std::rotate(orbit.states.begin(),
                        std::min_element(orbit.states.begin(), orbit.states.end()),
                        orbit.states.end());
            return orbit;
        }
        trajectory.push_back(current);
        current = f(g, current);
    }
}

State restrict_to(const State& x, std::span<const Vertex> vertices) {
    State y(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        y.set(i, x.test(vertices[i]));
    }
    return y;
}

State induced_step(const Decomposition& dec, std::size_t k, const State& y) {
    if (k >= dec.components.size()) {
        throw PreconditionError("component index " + std::to_string(k) + " out of range");
    }
    return step(dec.components[k].graph, y);
}

bool is_periodic_state(const Decomposition& dec, const State& x) {
    if (x.size() != dec.size()) {
        throw PreconditionError("state size does not match the decomposition");
    }
    return std::all_of(dec.blocks.begin(), dec.blocks.end(), [&](const VertexSet& block) {
        return std::all_of(block.begin(), block.end(),
                           [&](Vertex v) { return x.test(v) == x.test(block.front()); });
    });
}

PackedStepper::PackedStepper(const Digraph& g) : masks_(g.size(), 0) {
    if (g.size() > State::kWordBits) {
        throw CapExceeded("packed stepping supports at most 64 vertices");
    }
    for (Vertex j = 0; j < g.size(); ++j) {
        require_inputs(g, j);
        for (Vertex i : g.in_neighbors(j)) {
            masks_[j] |= State::Word{1} << i;
        }
    }
}

} // namespace cbn
