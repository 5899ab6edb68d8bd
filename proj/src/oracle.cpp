#include "cbn/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "cbn/stability.hpp"

namespace cbn::oracle {

namespace {

// Largest n for which a full successor table is representable.
constexpr std::size_t kTableLimit = 30;

std::size_t worker_count(const Options& options) {
    if (options.threads != 0) {
        return options.threads;
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void require_size(const Digraph& g, const Options& options) {
    if (g.size() > options.max_n || g.size() > kTableLimit) {
        throw CapExceeded("oracle refuses n = " + std::to_string(g.size()) + " (limit " +
                          std::to_string(std::min(options.max_n, kTableLimit)) + ")");
    }
}

State apply_step(const Digraph& g, const State& x, const Options& options) {
    return options.step ? options.step(g, x) : step(g, x);
}

Orbit orbit_from(const Digraph& g, const State& x, const Options& options) {
    if (options.step) {
        return find_orbit(g, x, options.step);
    }
    return find_orbit(g, x);
}

struct Sweep {
    std::vector<std::uint32_t> next;
    std::vector<bool> periodic;
    std::vector<Orbit> orbits;
};

Sweep sweep_state_space(const Digraph& g, const Options& options) {
    require_size(g, options);
    const std::size_t n = g.size();
    const std::size_t total = std::size_t{1} << n;
    Sweep sweep;
    sweep.next.resize(total);

    std::function<State::Word(State::Word)> map_word;
    if (options.step) {
        map_word = [&](State::Word x) { return options.step(g, State::from_word(n, x)).word(); };
    } else {
        map_word = PackedStepper(g);
    }
    const std::size_t workers = std::min(worker_count(options), total);
    const std::size_t chunk = (total + workers - 1) / workers;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            const std::size_t end = std::min(total, (w + 1) * chunk);
            for (std::size_t x = w * chunk; x < end; ++x) {
                sweep.next[x] = static_cast<std::uint32_t>(map_word(x));
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }

    // 0 = unseen, 1 = on the current walk, 2 = finished.
    std::vector<std::uint8_t> mark(total, 0);
    sweep.periodic.assign(total, false);
    std::vector<std::uint32_t> walk;
    for (std::size_t start = 0; start < total; ++start) {
        if (mark[start] != 0) {
            continue;
        }
        walk.clear();
        std::uint32_t x = static_cast<std::uint32_t>(start);
        while (mark[x] == 0) {
            mark[x] = 1;
            walk.push_back(x);
            x = sweep.next[x];
        }
        if (mark[x] == 1) {
            Orbit orbit;
            std::uint32_t y = x;
            do {
                sweep.periodic[y] = true;
                orbit.states.push_back(State::from_word(n, y));
                y = sweep.next[y];
            } while (y != x);
            orbit.period = orbit.states.size();
            std::rotate(orbit.states.begin(),
                        std::min_element(orbit.states.begin(), orbit.states.end()),
                        orbit.states.end());
            sweep.orbits.push_back(std::move(orbit));
        }
        for (std::uint32_t v : walk) {
            mark[v] = 2;
        }
    }
    std::sort(sweep.orbits.begin(), sweep.orbits.end(),
              [](const Orbit& a, const Orbit& b) { return a.representative() < b.representative(); });
    return sweep;
}

struct FlipOutcome {
    const Orbit* source;
    const State* state;
    Vertex flip;
    Necklace source_label;
    Necklace target_label;
};

// Perturbs every entry of every orbit state and reports the orbit reached.
void for_each_flip(const Digraph& g, const Decomposition& dec, const std::vector<Orbit>& orbits,
                   const Options& options, const std::function<void(const FlipOutcome&)>& visit) {
    for (const Orbit& orbit : orbits) {
        const Necklace source = orbit_to_necklace(dec, orbit.representative());
        for (const State& x : orbit.states) {
            for (Vertex i = 0; i < g.size(); ++i) {
                const Orbit reached = orbit_from(g, flipped(x, i), options);
                visit(FlipOutcome{&orbit, &x, i, source,
                                  orbit_to_necklace(dec, reached.representative())});
            }
        }
    }
}

std::vector<Transition> tally(const Digraph& g, const Decomposition& dec,
                              const std::vector<Orbit>& orbits, const Options& options) {
    std::map<std::pair<Necklace, Necklace>, Transition> counts;
    for_each_flip(g, dec, orbits, options, [&](const FlipOutcome& f) {
        auto [it, inserted] = counts.try_emplace({f.source_label, f.target_label},
                                                 Transition{f.source_label, f.target_label, 0,
                                                            f.source->period});
        ++it->second.mu;
    });
    std::vector<Transition> result;
    for (auto& [key, t] : counts) {
        result.push_back(t);
    }
    return result;
}

std::vector<State> probe_states(const Digraph& g, const Options& options) {
    const std::size_t n = g.size();
    std::vector<State> states;
    if (n <= options.exhaustive_max_n) {
        for (State::Word w = 0; w < (State::Word{1} << n); ++w) {
            states.push_back(State::from_word(n, w));
        }
        return states;
    }
    std::mt19937_64 rng(options.seed);
    for (std::size_t s = 0; s < options.samples; ++s) {
        State x(n);
        for (std::size_t i = 0; i < n; ++i) {
            x.set(i, (rng() >> 17) & 1U);
        }
        states.push_back(std::move(x));
    }
    return states;
}

std::string join_lengths(const std::set<std::size_t>& values) {
    std::string out = "{";
    for (auto v : values) {
        out += (out.size() > 1 ? "," : "") + std::to_string(v);
    }
    return out + "}";
}

// Each check returns a counterexample on failure, or nullopt on success;
// `detail` may be filled either way.
using Check = std::function<std::optional<std::string>(std::string& detail)>;

class ReportBuilder {
public:
    explicit ReportBuilder(ValidationReport& report) : report_(report) {}

    void run(const std::string& name, const Check& check) {
        CheckResult result{name, true, "", ""};
        try {
            if (auto counterexample = check(result.detail)) {
                result.passed = false;
                result.counterexample = *counterexample;
            }
        } catch (const std::exception& ex) {
            result.passed = false;
            result.detail = ex.what();
            result.counterexample = "exception: " + std::string(ex.what());
        }
        report_.checks.push_back(std::move(result));
    }

private:
    ValidationReport& report_;
};

} // namespace

std::vector<Orbit> enumerate_attractors(const Digraph& g, const Options& options) {
    return sweep_state_space(g, options).orbits;
}

std::vector<Transition> empirical_stability(const Digraph& g, const Options& options) {
    require_size(g, options);
    const Decomposition dec = irreducible_components(g);
    return tally(g, dec, enumerate_attractors(g, options), options);
}

bool ValidationReport::all_passed() const { return first_failure() == nullptr; }

const CheckResult* ValidationReport::first_failure() const {
    for (const auto& c : checks) {
        if (!c.passed) {
            return &c;
        }
    }
    return nullptr;
}

ValidationReport validate(const Digraph& g, const Options& options) {
    require_size(g, options);
    const std::size_t n = g.size();
    const Decomposition dec = irreducible_components(g);
    const Classification cls = classify(dec);
    const std::size_t p_star = dec.p_star;

    ValidationReport report;
    report.n = n;
    report.p_star = p_star;
    report.kind = cls.kind;
    report.alpha = cls.alpha;
    ReportBuilder checks(report);

    std::optional<CycleList> cycles;
    try {
        cycles = enumerate_cycles(g);
    } catch (const CapExceeded&) {
    }

    checks.run("loop_number_vs_cycles", [&](std::string& detail) -> std::optional<std::string> {
        if (!cycles) {
            detail = "skipped: cycle count above cap";
            return std::nullopt;
        }
        std::size_t gcd = 0;
        for (auto len : cycles->lengths) {
            gcd = std::gcd(gcd, len);
        }
        detail = std::to_string(cycles->cycles.size()) + " cycles, gcd " + std::to_string(gcd);
        if (gcd != p_star) {
            return "loop number " + std::to_string(p_star) + " != cycle gcd " + std::to_string(gcd);
        }
        return std::nullopt;
    });

    checks.run("partition_structure", [&](std::string&) -> std::optional<std::string> {
        std::vector<int> hits(n, 0);
        for (const auto& block : dec.blocks) {
            for (Vertex v : block) {
                ++hits[v];
            }
        }
        for (Vertex v = 0; v < n; ++v) {
            if (hits[v] != 1) {
                return "vertex " + std::to_string(v) + " lies in " + std::to_string(hits[v]) +
                       " blocks";
            }
        }
        for (std::size_t k = 0; k < p_star; ++k) {
            if (n_out_p(g, dec.blocks[k], 1) != dec.blocks[(k + 1) % p_star]) {
                return "N_out(U_" + std::to_string(k) + ") != U_" +
                       std::to_string((k + 1) % p_star);
            }
        }
        return std::nullopt;
    });

    checks.run("components_irreducible", [&](std::string&) -> std::optional<std::string> {
        for (std::size_t k = 0; k < p_star; ++k) {
            const Digraph& c = dec.components[k].graph;
            if (!is_strongly_connected(c) || loop_number(c) != 1) {
                return "component " + std::to_string(k) + " is not strongly connected with loop number 1";
            }
        }
        return std::nullopt;
    });

    checks.run("cycles_project_to_components", [&](std::string& detail) -> std::optional<std::string> {
        if (!cycles) {
            detail = "skipped: cycle count above cap";
            return std::nullopt;
        }
        for (std::size_t k = 0; k < p_star; ++k) {
            const auto local = enumerate_cycles(dec.components[k].graph);
            const std::set<std::size_t> lengths(local.lengths.begin(), local.lengths.end());
            for (auto len : cycles->lengths) {
                if (!lengths.contains(len / p_star)) {
                    return "component " + std::to_string(k) + " has no cycle of length " +
                           std::to_string(len / p_star) + " (cycle lengths " +
                           join_lengths(lengths) + ")";
                }
            }
        }
        return std::nullopt;
    });

    checks.run("classification_vs_cycles", [&](std::string& detail) -> std::optional<std::string> {
        if (!cycles) {
            detail = "skipped: cycle count above cap";
            return std::nullopt;
        }
        const auto& lengths = cycles->lengths;
        const bool equal_lengths =
            std::all_of(lengths.begin(), lengths.end(), [&](auto l) { return l == lengths.front(); });
        std::vector<std::size_t> on_cycles(n, 0);
        for (const auto& c : cycles->cycles) {
            for (Vertex v : c) {
                ++on_cycles[v];
            }
        }
        const auto common = static_cast<std::size_t>(std::count(
            on_cycles.begin(), on_cycles.end(), cycles->cycles.size()));
        const bool is_rose = equal_lengths && common > 0;
        const bool is_cycle = cycles->cycles.size() == 1;
        const GraphKind expected =
            is_cycle ? GraphKind::cycle_digraph : (is_rose ? GraphKind::rose : GraphKind::general);
        const std::size_t expected_alpha = is_rose ? common : 0;
        detail = std::string(to_string(expected)) + ", alpha " + std::to_string(expected_alpha);
        if (expected != cls.kind || expected_alpha != cls.alpha) {
            return "classified " + std::string(to_string(cls.kind)) + " alpha " +
                   std::to_string(cls.alpha) + ", cycles say " + detail;
        }
        return std::nullopt;
    });

    const Sweep sweep = sweep_state_space(g, options);
    const auto& orbits = sweep.orbits;

    checks.run("fixed_points_constant", [&](std::string&) -> std::optional<std::string> {
        const State zeros(n, false);
        const State ones(n, true);
        for (const auto& o : orbits) {
            if (o.period == 1 && o.representative() != zeros && o.representative() != ones) {
                return "non-constant fixed point " + o.representative().to_string();
            }
        }
        for (const State& c : {zeros, ones}) {
            if (apply_step(g, c, options) != c) {
                return "constant state " + c.to_string() + " is not fixed";
            }
        }
        return std::nullopt;
    });

    checks.run("periods_divide_loop_number", [&](std::string&) -> std::optional<std::string> {
        for (const auto& o : orbits) {
            if (p_star % o.period != 0) {
                return "orbit of " + o.representative().to_string() + " has period " +
                       std::to_string(o.period);
            }
        }
        return std::nullopt;
    });

    checks.run("realized_periods_are_divisors", [&](std::string& detail) -> std::optional<std::string> {
        std::set<std::size_t> realized;
        for (const auto& o : orbits) {
            realized.insert(o.period);
        }
        std::set<std::size_t> divisors;
        for (std::size_t d = 1; d <= p_star; ++d) {
            if (p_star % d == 0) {
                divisors.insert(d);
            }
        }
        detail = "periods " + join_lengths(realized);
        if (realized != divisors) {
            return "realized " + join_lengths(realized) + " vs divisors " + join_lengths(divisors);
        }
        return std::nullopt;
    });

    const std::vector<State> probes = probe_states(g, options);

    checks.run("iterated_map_product_form", [&](std::string& detail) -> std::optional<std::string> {
        // sources[p][j] = N_in^p(j), computed once per p.
        std::vector<std::vector<VertexSet>> sources(2 * p_star + 1,
                                                    std::vector<VertexSet>(n));
        for (std::size_t p = 0; p <= 2 * p_star; ++p) {
            for (Vertex j = 0; j < n; ++j) {
                sources[p][j] = n_in_p(g, std::span(&j, 1), p);
            }
        }
        for (const State& x : probes) {
            State composed = x;
            for (std::size_t p = 0; p <= 2 * p_star; ++p) {
                for (Vertex j = 0; j < n; ++j) {
                    const auto& src = sources[p][j];
                    const bool product =
                        std::all_of(src.begin(), src.end(), [&](Vertex i) { return x.test(i); });
                    if (product != composed.test(j)) {
                        return "x=" + x.to_string() + " p=" + std::to_string(p) + " vertex " +
                               std::to_string(j);
                    }
                }
                composed = apply_step(g, composed, options);
            }
        }
        detail = std::to_string(probes.size()) + " states";
        return std::nullopt;
    });

    checks.run("induced_dynamics", [&](std::string&) -> std::optional<std::string> {
        for (const State& x : probes) {
            State image = x;
            for (std::size_t t = 0; t < p_star; ++t) {
                image = apply_step(g, image, options);
            }
            for (std::size_t k = 0; k < p_star; ++k) {
                const auto& block = dec.blocks[k];
                if (induced_step(dec, k, restrict_to(x, block)) != restrict_to(image, block)) {
                    return "x=" + x.to_string() + " component " + std::to_string(k);
                }
            }
        }
        return std::nullopt;
    });

    checks.run("periodic_iff_block_constant", [&](std::string&) -> std::optional<std::string> {
        for (std::size_t w = 0; w < sweep.periodic.size(); ++w) {
            const State x = State::from_word(n, w);
            if (sweep.periodic[w] != is_periodic_state(dec, x)) {
                return "x=" + x.to_string() + (sweep.periodic[w] ? " periodic but not block-constant"
                                                                 : " block-constant but transient");
            }
        }
        return std::nullopt;
    });

    checks.run("block_value_shift", [&](std::string&) -> std::optional<std::string> {
        for (const auto& o : orbits) {
            for (std::size_t t = 0; t < o.period; ++t) {
                const State& x = o.states[t];
                const State& y = o.states[(t + 1) % o.period];
                for (std::size_t k = 0; k < p_star; ++k) {
                    if (y.test(dec.blocks[(k + 1) % p_star].front()) != x.test(dec.blocks[k].front())) {
                        return "x=" + x.to_string() + " block " + std::to_string(k);
                    }
                }
            }
        }
        return std::nullopt;
    });

    checks.run("orbit_necklace_bijection", [&](std::string& detail) -> std::optional<std::string> {
        const auto necklaces = enumerate_necklaces(p_star);
        std::set<Necklace> labels;
        for (const auto& o : orbits) {
            const Necklace s = orbit_to_necklace(dec, o.representative());
            for (const State& x : o.states) {
                if (orbit_to_necklace(dec, x) != s) {
                    return "orbit states of " + o.representative().to_string() +
                           " map to different necklaces";
                }
            }
            if (order(s) != o.period) {
                return "orbit " + o.representative().to_string() + " period " +
                       std::to_string(o.period) + " but necklace " + s.rep() + " order " +
                       std::to_string(order(s));
            }
            if (!labels.insert(s).second) {
                return "two orbits map to necklace " + s.rep();
            }
        }
        detail = std::to_string(orbits.size()) + " orbits, " + std::to_string(necklaces.size()) +
                 " necklaces";
        if (labels.size() != necklaces.size()) {
            return detail;
        }
        for (const auto& s : necklaces) {
            const Orbit o = orbit_from(g, necklace_to_state(dec, s), options);
            if (o.transient != 0 || o.period != order(s) ||
                orbit_to_necklace(dec, o.representative()) != s) {
                return "necklace " + s.rep() + " does not round-trip";
            }
        }
        return std::nullopt;
    });

    checks.run("orbit_counting_formulas", [&](std::string&) -> std::optional<std::string> {
        std::map<std::size_t, std::uint64_t> by_period;
        std::map<std::size_t, std::uint64_t> by_density;
        for (const auto& o : orbits) {
            ++by_period[o.period];
            ++by_density[sigma(orbit_to_necklace(dec, o.representative()))];
        }
        for (std::size_t p = 1; p <= p_star; ++p) {
            if (p_star % p == 0 && by_period[p] != count_orbits_of_period(p_star, p)) {
                return "period " + std::to_string(p) + ": " + std::to_string(by_period[p]) +
                       " orbits vs formula " + std::to_string(count_orbits_of_period(p_star, p));
            }
        }
        for (std::size_t d = 0; d <= p_star; ++d) {
            if (by_density[d] != count_fixed_density(p_star, d)) {
                return "density " + std::to_string(d) + ": " + std::to_string(by_density[d]) +
                       " orbits vs formula " + std::to_string(count_fixed_density(p_star, d));
            }
        }
        return std::nullopt;
    });

    checks.run("successor_closed_form", [&](std::string& detail) -> std::optional<std::string> {
        std::optional<std::string> failure;
        std::size_t flips = 0;
        for_each_flip(g, dec, orbits, options, [&](const FlipOutcome& f) {
            ++flips;
            if (!failure && successor_after_flip(g, dec, *f.state, f.flip) != f.target_label) {
                failure = "x=" + f.state->to_string() + " flip " + std::to_string(f.flip) +
                          ": simulated " + f.target_label.rep() + ", closed form " +
                          successor_after_flip(g, dec, *f.state, f.flip).rep();
            }
        });
        detail = std::to_string(flips) + " perturbations";
        return failure;
    });

    const StabilityStructure analytic = transition_weights(g);
    std::optional<std::vector<Transition>> empirical;
    try {
        empirical = tally(g, dec, orbits, options);
    } catch (const std::exception&) {
    }

    checks.run("stability_edges", [&](std::string& detail) -> std::optional<std::string> {
        if (!empirical) {
            return "perturbation outcomes could not be labelled by necklaces";
        }
        std::set<std::pair<Necklace, Necklace>> predicted;
        std::set<std::pair<Necklace, Necklace>> observed;
        for (const auto& e : analytic.edges) {
            predicted.emplace(e.from, e.to);
        }
        for (const auto& t : *empirical) {
            observed.emplace(t.from, t.to);
        }
        detail = std::to_string(predicted.size()) + " edges";
        for (const auto& [a, b] : predicted) {
            if (!observed.contains({a, b})) {
                return "predicted edge " + a.rep() + " -> " + b.rep() + " never observed";
            }
        }
        for (const auto& [a, b] : observed) {
            if (!predicted.contains({a, b})) {
                return "observed edge " + a.rep() + " -> " + b.rep() + " not predicted";
            }
        }
        return std::nullopt;
    });

    checks.run("transition_weights", [&](std::string&) -> std::optional<std::string> {
        if (!empirical) {
            return "perturbation outcomes could not be labelled by necklaces";
        }
        std::map<std::pair<Necklace, Necklace>, Rational> measured;
        for (const auto& t : *empirical) {
            measured[{t.from, t.to}] = Rational(static_cast<long long>(t.mu),
                                                static_cast<long long>(n * t.source_period));
        }
        for (const auto& e : analytic.edges) {
            const auto it = measured.find({e.from, e.to});
            if (it == measured.end() || *e.weight != it->second) {
                return e.from.rep() + " -> " + e.to.rep() + ": formula " + e.weight->str() +
                       ", measured " + (it == measured.end() ? std::string("none") : it->second.str());
            }
        }
        return std::nullopt;
    });

    checks.run("row_stochastic", [&](std::string&) -> std::optional<std::string> {
        const auto sums = outgoing_weight_sums(analytic);
        for (std::size_t i = 0; i < sums.size(); ++i) {
            if (sums[i] != 1) {
                return analytic.nodes[i].rep() + " row sums to " + sums[i].str();
            }
        }
        return std::nullopt;
    });

    return report;
}

std::string report_to_json(const ValidationReport& report) {
    nlohmann::ordered_json j;
    j["n"] = report.n;
    j["p_star"] = report.p_star;
    j["kind"] = std::string(to_string(report.kind));
    j["alpha"] = report.alpha;
    j["passed"] = report.all_passed();
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : report.checks) {
        j["checks"].push_back({{"name", c.name},
                               {"passed", c.passed},
                               {"detail", c.detail},
                               {"counterexample", c.counterexample}});
    }
    return j.dump(2) + "\n";
}

std::string report_to_table(const ValidationReport& report) {
    std::ostringstream out;
    out << "n " << report.n << "  p_star " << report.p_star << "  kind " << to_string(report.kind)
        << "  alpha " << report.alpha << "\n";
    for (const auto& c : report.checks) {
        out << (c.passed ? "PASS  " : "FAIL  ") << c.name;
        if (!c.detail.empty()) {
            out << "  (" << c.detail << ")";
        }
        if (!c.passed) {
            out << "  counterexample: " << c.counterexample;
        }
        out << "\n";
    }
    out << (report.all_passed() ? "all checks passed\n" : "validation FAILED\n");
    return out.str();
}

} // namespace cbn::oracle
