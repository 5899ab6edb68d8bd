#include <doctest.h>

#include <random>
#include <set>

#include "cbn/dynamics.hpp"
#include "cbn/graphgen.hpp"
#include "fixtures.hpp"

using namespace cbn;

namespace {

State bits(const char* s) { return State::from_string(s); }

std::vector<Digraph> small_corpus() {
    std::vector<Digraph> graphs{fixtures::c1(), fixtures::c2(), fixtures::c4(), fixtures::r2x4(),
                                fixtures::r3x4(), graphgen::cycle_digraph(6)};
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        auto g = graphgen::random_strongly_connected(3 + seed % 3, seed % 3, seed);
        graphs.push_back(seed % 2 ? graphgen::subdivide(g, 2) : g);
    }
    return graphs;
}

std::vector<State> all_states(std::size_t n) {
    std::vector<State> states;
    for (State::Word w = 0; w < (State::Word{1} << n); ++w) {
        states.push_back(State::from_word(n, w));
    }
    return states;
}

} // namespace

TEST_CASE("state basics") {
    const State x = bits("1000");
    CHECK(x.test(0));
    CHECK_FALSE(x.test(1));
    CHECK(x.to_string() == "1000");
    CHECK(bits("0111") < bits("1000"));
    CHECK(bits("0011") < bits("0101"));
    CHECK(State(70, true).count() == 70);
    CHECK(State(70, true).all());
    State big(130);
    big.set(129, true);
    CHECK(big.to_string().back() == '1');
    CHECK(flipped(big, 129).none());
    CHECK_THROWS_AS(State::from_string("01x"), Error);
}

TEST_CASE("single conjunctive step") {
    const auto c4 = fixtures::c4();
    CHECK(step(c4, bits("1111")) == bits("1111"));
    CHECK(step(c4, bits("1000")) == bits("0100"));

    const auto b = fixtures::b4_8_12();
    State x(b.size(), true);
    x.set(0, false);
    const State y = step(b, x);
    for (Vertex v = 0; v < b.size(); ++v) {
        CHECK(y.test(v) == !(v == 1 || v == 4 || v == 11));
    }
}

TEST_CASE("step errors") {
    const Edge one_way[] = {{0, 1}};
    const auto g = Digraph::from_edge_list(one_way, 2);
    CHECK_THROWS_AS((void)step(g, bits("11")), PreconditionError);
    CHECK_THROWS_AS((void)step(fixtures::c4(), bits("111")), PreconditionError);
}

TEST_CASE("iterated map") {
    const auto c4 = fixtures::c4();
    CHECK(step_k(c4, bits("1000"), 4) == bits("1000"));
    CHECK(step_k(c4, bits("1000"), 0) == bits("1000"));
    CHECK(step_k_product(c4, bits("1000"), 3) == bits("0001"));

    const auto rose = fixtures::r3x4();
    State x(rose.size(), true);
    x.set(0, false);
    const Vertex hub[] = {0};
    const auto reached = n_out_p(rose, hub, 4);
    const State expected_word = step_k(rose, x, 4);
    for (Vertex v = 0; v < rose.size(); ++v) {
        const bool zero = std::binary_search(reached.begin(), reached.end(), v);
        CHECK(expected_word.test(v) == !zero);
    }
    CHECK(step_k_product(rose, x, 4) == expected_word);
}

TEST_CASE("orbit detection") {
    const auto c4 = fixtures::c4();
    const Orbit o = find_orbit(c4, bits("0111"));
    CHECK(o.period == 4);
    CHECK(o.transient == 0);
    CHECK(o.states == std::vector<State>{bits("0111"), bits("1011"), bits("1101"), bits("1110")});
    CHECK(find_orbit(c4, bits("1110")).states == o.states);

    const Orbit z = find_orbit(c4, bits("0000"));
    CHECK(z.period == 1);
    CHECK(z.transient == 0);

    const auto b = fixtures::b4_8_12();
    const auto dec = irreducible_components(b);
    State x(b.size(), true);
    x.set(dec.blocks[1].front(), false);
    const Orbit settled = find_orbit(b, x);
    CHECK(4 % settled.period == 0);
    CHECK(settled.transient > 0);
    CHECK(is_periodic_state(dec, settled.representative()));
    CHECK_FALSE(is_periodic_state(dec, x));
}

TEST_CASE("induced dynamics") {
    const auto c4 = irreducible_components(fixtures::c4());
    CHECK(induced_step(c4, 0, bits("1")) == bits("1"));
    CHECK_THROWS_AS((void)induced_step(c4, 0, bits("11")), PreconditionError);

    const auto b = irreducible_components(fixtures::b4_8_12());
    CHECK(induced_step(b, 0, bits("1111")) == bits("1111"));
}

TEST_CASE("periodic states") {
    const auto b = fixtures::b4_8_12();
    const auto dec = irreducible_components(b);
    CHECK(is_periodic_state(dec, State(b.size())));
    CHECK(is_periodic_state(irreducible_components(fixtures::c4()), bits("1000")));

    State mixed(b.size());
    for (std::size_t k = 0; k < 3; ++k) {
        for (Vertex v : dec.blocks[k]) {
            mixed.set(v, k % 2 == 0);
        }
    }
    mixed.set(dec.blocks[3].front(), true);
    CHECK_FALSE(is_periodic_state(dec, mixed));
    CHECK(find_orbit(b, mixed).transient > 0);
}

TEST_CASE("packed stepper matches step") {
    for (const auto& g : small_corpus()) {
        const PackedStepper fast(g);
        for (const auto& x : all_states(g.size())) {
            CHECK(fast(x.word()) == step(g, x).word());
        }
    }
}

TEST_CASE("property: exhaustive dynamics identities") {
    for (const auto& g : small_corpus()) {
        const auto dec = irreducible_components(g);
        const std::size_t p_star = dec.p_star;
        std::set<std::size_t> periods;
        std::set<State> periodic;
        std::set<State> fixed;
        for (const auto& x : all_states(g.size())) {
            State composed = x;
            for (std::size_t p = 0; p <= 2 * p_star; ++p) {
                CHECK(composed == step_k_product(g, x, p));
                composed = step(g, composed);
            }
            const State image = step_k(g, x, p_star);
            for (std::size_t k = 0; k < p_star; ++k) {
                CHECK(induced_step(dec, k, restrict_to(x, dec.blocks[k])) ==
                      restrict_to(image, dec.blocks[k]));
            }
            const Orbit o = find_orbit(g, x);
            CHECK(p_star % o.period == 0);
            periods.insert(o.period);
            periodic.insert(o.states.begin(), o.states.end());
            if (o.period == 1) {
                fixed.insert(o.representative());
            }
            // Transient length is exact: the state before entry is off-orbit.
            const State entry = step_k(g, x, o.transient);
            CHECK(std::find(o.states.begin(), o.states.end(), entry) != o.states.end());
            if (o.transient > 0) {
                const State before = step_k(g, x, o.transient - 1);
                CHECK(std::find(o.states.begin(), o.states.end(), before) == o.states.end());
            }
        }
        std::set<std::size_t> divisors;
        for (std::size_t d = 1; d <= p_star; ++d) {
            if (p_star % d == 0) {
                divisors.insert(d);
            }
        }
        CHECK(periods == divisors);
        CHECK(fixed == std::set<State>{State(g.size(), false), State(g.size(), true)});
        for (const auto& x : all_states(g.size())) {
            CHECK(periodic.contains(x) == is_periodic_state(dec, x));
        }
        // One step moves the value of block k onto block k+1.
        for (const auto& x : periodic) {
            const State y = step(g, x);
            for (std::size_t k = 0; k < p_star; ++k) {
                CHECK(y.test(dec.blocks[(k + 1) % p_star].front()) == x.test(dec.blocks[k].front()));
            }
        }
    }
}

TEST_CASE("property: product form on sampled states of larger graphs") {
    const auto g = fixtures::b4_8_12();
    std::mt19937_64 rng(7);
    for (int sample = 0; sample < 10000; ++sample) {
        const State x = State::from_word(g.size(), rng());
        const std::size_t p = sample % 9;
        CHECK(step_k(g, x, p) == step_k_product(g, x, p));
    }
}
