#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "cbn/digraph.hpp"
#include "cbn/graphgen.hpp"
#include "fixtures.hpp"

using namespace cbn;

namespace {

// Reference: every simple cycle by DFS from each start over larger vertices,
// counted by length.
std::multiset<std::size_t> brute_cycle_lengths(const Digraph& g) {
    std::multiset<std::size_t> lengths;
    std::vector<Vertex> path;
    std::vector<bool> on_path(g.size(), false);
    auto dfs = [&](auto&& self, Vertex start, Vertex v) -> void {
        for (Vertex w : g.out_neighbors(v)) {
            if (w == start) {
                lengths.insert(path.size());
            } else if (w > start && !on_path[w]) {
                on_path[w] = true;
                path.push_back(w);
                self(self, start, w);
                path.pop_back();
                on_path[w] = false;
            }
        }
    };
    for (Vertex s = 0; s < g.size(); ++s) {
        path = {s};
        on_path.assign(g.size(), false);
        on_path[s] = true;
        dfs(dfs, s, s);
    }
    return lengths;
}

} // namespace

TEST_CASE("construction from an edge list") {
    const Edge two_cycle[] = {{0, 1}, {1, 0}};
    const auto g = Digraph::from_edge_list(two_cycle, 2);
    CHECK(g.size() == 2);
    CHECK(g.edge_count() == 2);

    const Edge loop[] = {{0, 0}};
    const auto l = Digraph::from_edge_list(loop, 1);
    CHECK(l.has_edge(0, 0));

    const Edge duplicated[] = {{0, 1}, {0, 1}, {1, 0}};
    CHECK(Digraph::from_edge_list(duplicated, 2).edge_count() == 2);

    const Edge c4[] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    CHECK(Digraph::from_edge_list(c4, 4) == fixtures::c4());
}

TEST_CASE("construction errors name the offending edge") {
    const Edge bad[] = {{0, 1}, {1, 5}};
    try {
        (void)Digraph::from_edge_list(bad, 3);
        FAIL("expected GraphError");
    } catch (const GraphError& ex) {
        CHECK(std::string(ex.what()).find("(1, 5)") != std::string::npos);
    }
    CHECK_THROWS_AS((void)Digraph::from_edge_list({}, 0), GraphError);
}

TEST_CASE("strong connectivity") {
    CHECK(is_strongly_connected(fixtures::c4()));
    CHECK(is_strongly_connected(fixtures::b4_8_12()));
    const Edge one_way[] = {{0, 1}};
    CHECK_FALSE(is_strongly_connected(Digraph::from_edge_list(one_way, 2)));
    CHECK_THROWS_AS((void)loop_number(Digraph::from_edge_list(one_way, 2)), PreconditionError);
}

TEST_CASE("cycle enumeration on the named fixtures") {
    auto lengths_of = [](const Digraph& g) {
        auto l = enumerate_cycles(g).lengths;
        std::sort(l.begin(), l.end());
        return l;
    };
    CHECK(lengths_of(fixtures::c4()) == std::vector<std::size_t>{4});
    CHECK(lengths_of(fixtures::b4_8_12()) == std::vector<std::size_t>{4, 8, 12});
    CHECK(lengths_of(fixtures::r3x4()) == std::vector<std::size_t>{4, 4, 4});
    CHECK(lengths_of(fixtures::c1()) == std::vector<std::size_t>{1});

    const auto cycles = enumerate_cycles(fixtures::c4());
    CHECK(cycles.cycles.front() == std::vector<Vertex>{0, 1, 2, 3});
}

TEST_CASE("cycle enumeration cap") {
    // The complete digraph with loops on 6 vertices has far more than 50 cycles.
    std::vector<Edge> edges;
    for (Vertex u = 0; u < 6; ++u) {
        for (Vertex v = 0; v < 6; ++v) {
            edges.emplace_back(u, v);
        }
    }
    const auto k6 = Digraph::from_edge_list(edges, 6);
    CHECK(enumerate_cycles(k6).cycles.size() == brute_cycle_lengths(k6).size());
    CHECK_THROWS_AS((void)enumerate_cycles(k6, 50), CapExceeded);
}

TEST_CASE("loop number") {
    CHECK(loop_number(fixtures::c4()) == 4);
    CHECK(loop_number(fixtures::b4_8_12()) == 4);
    CHECK(loop_number(fixtures::c1()) == 1);
    CHECK(loop_number(fixtures::r3x4()) == 4);
    const std::vector<std::size_t> six_nine{6, 9};
    CHECK(loop_number(graphgen::bouquet(six_nine)) == 3);
}

TEST_CASE("iterated neighbourhoods") {
    const auto c4 = fixtures::c4();
    const Vertex zero[] = {0};
    CHECK(n_out_p(c4, zero, 0) == VertexSet{0});
    CHECK(n_out_p(c4, zero, 2) == VertexSet{2});
    CHECK(n_in_p(c4, zero, 1) == VertexSet{3});

    // B4-8-12: vertex 0 closes the 4-cycle (1,2,3), the 8-cycle (4..10) and
    // the 12-cycle (11..21); the vertices four steps back are 0, 7 and 18.
    const auto b = fixtures::b4_8_12();
    CHECK(n_in_p(b, zero, 4) == VertexSet{0, 7, 18});
    CHECK(n_out_p(b, zero, 4) == VertexSet{0, 7, 14});
}

TEST_CASE("property: loop number equals the gcd of enumerated cycle lengths") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const std::size_t n = 2 + seed % 9;
        auto g = graphgen::random_strongly_connected(n, seed % 4, seed);
        if (seed % 3 == 1) {
            g = graphgen::subdivide(g, 2 + seed % 3);
        }
        const auto cycles = enumerate_cycles(g);
        const auto brute = brute_cycle_lengths(g);
        CHECK(std::multiset<std::size_t>(cycles.lengths.begin(), cycles.lengths.end()) == brute);
        std::size_t gcd = 0;
        for (auto l : cycles.lengths) {
            gcd = std::gcd(gcd, l);
        }
        const std::size_t p = loop_number(g);
        CHECK(p == gcd);
        for (auto l : cycles.lengths) {
            CHECK(l % p == 0);
        }
    }
}

TEST_CASE("property: neighbourhood composition") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto g = graphgen::random_strongly_connected(7, 3, seed);
        const Vertex seed_set[] = {static_cast<Vertex>(seed % 7), static_cast<Vertex>((seed + 3) % 7)};
        VertexSet s(std::begin(seed_set), std::end(seed_set));
        std::sort(s.begin(), s.end());
        for (std::size_t a = 0; a < 5; ++a) {
            for (std::size_t b = 0; b < 5; ++b) {
                CHECK(n_out_p(g, s, a + b) == n_out_p(g, n_out_p(g, s, a), b));
                CHECK(n_in_p(g, s, a + b) == n_in_p(g, n_in_p(g, s, a), b));
            }
        }
    }
}

TEST_CASE("property: a cycle digraph has one cycle and loop number L") {
    for (std::size_t L = 1; L <= 12; ++L) {
        const auto g = graphgen::cycle_digraph(L);
        CHECK(loop_number(g) == L);
        CHECK(enumerate_cycles(g).cycles.size() == 1);
    }
}
