#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cbn/decomposition.hpp"
#include "cbn/digraph.hpp"
#include "cbn/dynamics.hpp"
#include "cbn/necklace.hpp"

// Exhaustive ground truth for small networks. Nothing here uses the closed
// forms it is meant to check; everything comes from iterating the map.
namespace cbn::oracle {

inline constexpr std::size_t kDefaultMaxN = 24;

struct Options {
    // Refuse networks with more vertices than this.
    std::size_t max_n = kDefaultMaxN;
    // Whole-state-space checks in validate() are exhaustive up to this n and
    // use `samples` seeded random states above it.
    std::size_t exhaustive_max_n = 14;
    std::size_t samples = 10000;
    std::uint64_t seed = 1;
    // Worker threads for the state sweep; 0 = hardware concurrency.
    std::size_t threads = 0;
    // Update map under test; empty means the conjunctive step.
    StepFunction step;
};

// Every periodic orbit, found by following the map from all 2^n states.
// Sorted by representative. Throws CapExceeded if n > options.max_n.
std::vector<Orbit> enumerate_attractors(const Digraph& g, const Options& options = {});

struct Transition {
    Necklace from;
    Necklace to;
    // Number of (orbit state, flipped entry) pairs leading from -> to.
    std::uint64_t mu = 0;
    // Period of the source orbit as simulated.
    std::size_t source_period = 0;

    friend bool operator==(const Transition&, const Transition&) = default;
};

// Flips every entry of every orbit state and records where the trajectory
// settles. Sorted by (from, to) in necklace order.
std::vector<Transition> empirical_stability(const Digraph& g, const Options& options = {});

struct CheckResult {
    std::string name;
    bool passed = true;
    std::string detail;
    // Offending state / flip / necklace; set whenever passed is false.
    std::string counterexample;
};

struct ValidationReport {
    std::size_t n = 0;
    std::size_t p_star = 0;
    GraphKind kind = GraphKind::general;
    std::size_t alpha = 0;
    std::vector<CheckResult> checks;

    bool all_passed() const;
    // First failing check in evaluation order, or nullptr.
    const CheckResult* first_failure() const;
};

// Runs every analytic-vs-exhaustive check. Never throws for a failed check;
// throws PreconditionError if g is not strongly connected and CapExceeded if
// n > options.max_n.
ValidationReport validate(const Digraph& g, const Options& options = {});

std::string report_to_json(const ValidationReport& report);
std::string report_to_table(const ValidationReport& report);

} // namespace cbn::oracle
