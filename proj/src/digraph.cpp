#include "cbn/digraph.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <queue>
#include <string>

namespace cbn {

Digraph Digraph::from_edge_list(std::span<const Edge> edges, std::size_t n) {
    if (n == 0) {
        throw GraphError("digraph must have at least one vertex");
    }
    Digraph g;
    g.out_.resize(n);
    g.in_.resize(n);
    for (const auto& [u, v] : edges) {
        if (u >= n || v >= n) {
            throw GraphError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                             ") references a vertex outside [0, " + std::to_string(n) + ")");
        }
        g.out_[u].push_back(v);
        g.in_[v].push_back(u);
    }
    auto normalize = [](std::vector<Vertex>& adj) {
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    };
    for (std::size_t v = 0; v < n; ++v) {
        normalize(g.out_[v]);
        normalize(g.in_[v]);
        g.edge_count_ += g.out_[v].size();
    }
    return g;
}

bool Digraph::has_edge(Vertex u, Vertex v) const {
    const auto& adj = out_[u];
    return std::binary_search(adj.begin(), adj.end(), v);
}

std::vector<Edge> Digraph::edges() const {
    std::vector<Edge> result;
    result.reserve(edge_count_);
    for (Vertex u = 0; u < out_.size(); ++u) {
        for (Vertex v : out_[u]) {
            result.emplace_back(u, v);
        }
    }
    return result;
}

namespace {

template <typename Neighbors>
std::vector<bool> reachable_from(std::size_t n, Vertex root, Neighbors&& neighbors) {
    std::vector<bool> seen(n, false);
    std::vector<Vertex> stack{root};
    seen[root] = true;
    while (!stack.empty()) {
        Vertex u = stack.back();
        stack.pop_back();
        for (Vertex v : neighbors(u)) {
            if (!seen[v]) {
                seen[v] = true;
                stack.push_back(v);
            }
        }
    }
    return seen;
}

bool all_true(const std::vector<bool>& flags) {
    return std::all_of(flags.begin(), flags.end(), [](bool b) { return b; });
}

// Johnson's elementary circuit search rooted at `start`, restricted to
// vertices >= start so that each circuit is found exactly once (from its
// smallest vertex).
class CircuitSearch {
public:
    CircuitSearch(const Digraph& g, std::size_t cap, CycleList& out)
        : g_(g), cap_(cap), out_(out), blocked_(g.size(), false), blocked_by_(g.size()) {}

    void run_from(Vertex start) {
        start_ = start;
        for (Vertex v = start; v < g_.size(); ++v) {
            blocked_[v] = false;
            blocked_by_[v].clear();
        }
        circuit(start);
    }

private:
    bool circuit(Vertex v) {
        bool found = false;
        path_.push_back(v);
        blocked_[v] = true;
        for (Vertex w : g_.out_neighbors(v)) {
            if (w < start_) {
                continue;
            }
            if (w == start_) {
                if (out_.cycles.size() >= cap_) {
                    throw CapExceeded("too many cycles: more than " + std::to_string(cap_) +
                                      " elementary cycles");
                }
                out_.cycles.push_back(path_);
                out_.lengths.push_back(path_.size());
                found = true;
            } else if (!blocked_[w] && circuit(w)) {
                found = true;
            }
        }
        if (found) {
            unblock(v);
        } else {
            for (Vertex w : g_.out_neighbors(v)) {
                if (w < start_) {
                    continue;
                }
                auto& list = blocked_by_[w];
                if (std::find(list.begin(), list.end(), v) == list.end()) {
                    list.push_back(v);
                }
            }
        }
        path_.pop_back();
        return found;
    }

    void unblock(Vertex u) {
        blocked_[u] = false;
        auto pending = std::move(blocked_by_[u]);
        blocked_by_[u].clear();
        for (Vertex w : pending) {
            if (blocked_[w]) {
                unblock(w);
            }
        }
    }

    const Digraph& g_;
    std::size_t cap_;
    CycleList& out_;
    Vertex start_ = 0;
    std::vector<Vertex> path_;
    std::vector<bool> blocked_;
    std::vector<std::vector<Vertex>> blocked_by_;
};

template <typename Neighbors>
VertexSet iterate_neighborhood(const Digraph& g, std::span<const Vertex> seed, std::size_t p,
                               Neighbors&& neighbors) {
    std::vector<bool> current(g.size(), false);
    for (Vertex v : seed) {
        current[v] = true;
    }
    for (std::size_t step = 0; step < p; ++step) {
        std::vector<bool> next(g.size(), false);
        for (Vertex u = 0; u < g.size(); ++u) {
            if (current[u]) {
                for (Vertex w : neighbors(u)) {
                    next[w] = true;
                }
            }
        }
        current = std::move(next);
    }
    VertexSet result;
    for (Vertex v = 0; v < g.size(); ++v) {
        if (current[v]) {
            result.push_back(v);
        }
    }
    return result;
}

} // namespace

bool is_strongly_connected(const Digraph& g) {
    const std::size_t n = g.size();
    if (!all_true(reachable_from(n, 0, [&](Vertex u) { return g.out_neighbors(u); }))) {
        return false;
    }
    return all_true(reachable_from(n, 0, [&](Vertex u) { return g.in_neighbors(u); }));
}

CycleList enumerate_cycles(const Digraph& g, std::size_t cap) {
    CycleList result;
    CircuitSearch search(g, cap, result);
    for (Vertex s = 0; s < g.size(); ++s) {
        search.run_from(s);
    }
    return result;
}

std::vector<std::int64_t> depth_labels(const Digraph& g) {
    std::vector<std::int64_t> depth(g.size(), -1);
    std::queue<Vertex> frontier;
    depth[0] = 0;
    frontier.push(0);
    while (!frontier.empty()) {
        Vertex u = frontier.front();
        frontier.pop();
        for (Vertex v : g.out_neighbors(u)) {
            if (depth[v] < 0) {
                depth[v] = depth[u] + 1;
                frontier.push(v);
            }
        }
    }
    return depth;
}

std::size_t loop_number(const Digraph& g) {
    if (!is_strongly_connected(g)) {
        throw PreconditionError("loop number requires a strongly connected digraph");
    }
    const auto depth = depth_labels(g);
    std::int64_t period = 0;
    for (const auto& [u, v] : g.edges()) {
        period = std::gcd(period, std::abs(depth[u] + 1 - depth[v]));
    }
    // Around any cycle the terms sum to its length, so some term is non-zero.
    return static_cast<std::size_t>(period);
}

VertexSet n_out_p(const Digraph& g, std::span<const Vertex> seed, std::size_t p) {
    return iterate_neighborhood(g, seed, p, [&](Vertex u) { return g.out_neighbors(u); });
}

VertexSet n_in_p(const Digraph& g, std::span<const Vertex> seed, std::size_t p) {
    return iterate_neighborhood(g, seed, p, [&](Vertex u) { return g.in_neighbors(u); });
}

} // namespace cbn
