#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "cbn/decomposition.hpp"
#include "cbn/digraph.hpp"
#include "cbn/state.hpp"

namespace cbn {

// One synchronous conjunctive update: vertex j becomes the AND of its
// in-neighbours. Throws PreconditionError on a size mismatch or a vertex with
// no in-neighbours.
State step(const Digraph& g, const State& x);

// p-fold composition of step.
State step_k(const Digraph& g, const State& x, std::size_t p);
// Same map via the closed form f^p_j(x) = AND of x over N_in^p(j).
State step_k_product(const Digraph& g, const State& x, std::size_t p);

using StepFunction = std::function<State(const Digraph&, const State&)>;

// A periodic cycle of the dynamics, rotated so its least state comes first;
// states[k+1] = step(states[k]) cyclically.
struct Orbit {
    std::vector<State> states;
    std::size_t period = 0;
    // Steps from the probe's initial state to the first orbit state.
    std::size_t transient = 0;

    const State& representative() const { return states.front(); }
};

Orbit find_orbit(const Digraph& g, const State& x0);
// Same search with a caller-supplied update map (used to test the oracle).
Orbit find_orbit(const Digraph& g, const State& x0, const StepFunction& f);

State restrict_to(const State& x, std::span<const Vertex> vertices);

// One conjunctive step on component k. Throws PreconditionError if y does
// not have |U_k| entries.
State induced_step(const Decomposition& dec, std::size_t k, const State& y);

// Periodic states are exactly the block-constant ones.
bool is_periodic_state(const Decomposition& dec, const State& x);

// Word-level conjunctive map for n <= 64: bit j of the image is set iff all
// bits of in_mask[j] are set. Used by exhaustive state sweeps.
class PackedStepper {
public:
    explicit PackedStepper(const Digraph& g);

    std::size_t size() const { return masks_.size(); }
    State::Word operator()(State::Word x) const {
        State::Word next = 0;
        for (std::size_t j = 0; j < masks_.size(); ++j) {
            next |= static_cast<State::Word>((x & masks_[j]) == masks_[j]) << j;
        }
        return next;
    }

private:
    std::vector<State::Word> masks_;
};

} // namespace cbn
