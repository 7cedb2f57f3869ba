#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "dtn/certificate.hpp"
#include "dtn/error.hpp"

namespace dtn {

/// Clause (a or b) over signed 1-based literals; b == 0 marks a unary clause.
struct Clause2 {
    long a = 0;
    long b = 0;

    bool unary() const noexcept { return b == 0; }
    friend bool operator==(const Clause2&, const Clause2&) = default;
};

struct CnfFormula2 {
    std::size_t var_count = 0;
    std::vector<Clause2> clauses;

    CnfFormula2() = default;
    explicit CnfFormula2(std::size_t vars) : var_count(vars) {}

    void add(long a, long b = 0) {
        check(a);
        if (b != 0) check(b);
        clauses.push_back({a, b});
    }

private:
    void check(long lit) const {
        if (lit == 0 || static_cast<std::size_t>(std::labs(lit)) > var_count)
            throw ModelError("2-SAT literal " + std::to_string(lit) + " out of range");
    }
};

inline bool literal_value(const std::vector<bool>& assignment, long lit) {
    const bool v = assignment.at(static_cast<std::size_t>(std::labs(lit)) - 1);
    return lit > 0 ? v : !v;
}

inline bool satisfies(const std::vector<bool>& assignment, const CnfFormula2& f) {
    if (assignment.size() != f.var_count) return false;
    for (const auto& c : f.clauses)
        if (!literal_value(assignment, c.a) && (c.unary() || !literal_value(assignment, c.b))) return false;
    return true;
}

struct TwoSatResult {
    std::optional<std::vector<bool>> assignment;
    std::optional<TwoSatCore> core;

    bool satisfiable() const noexcept { return assignment.has_value(); }
};

namespace detail {

inline std::size_t lit_node(long lit) {
    const std::size_t v = static_cast<std::size_t>(std::labs(lit)) - 1;
    return lit > 0 ? 2 * v : 2 * v + 1;
}

inline long node_lit(std::size_t node) {
    const long v = static_cast<long>(node / 2) + 1;
    return node % 2 == 0 ? v : -v;
}

/// Implication graph: (a or b) gives !a -> b and !b -> a; (a) gives !a -> a.
inline std::vector<std::vector<std::size_t>> implication_graph(const CnfFormula2& f) {
    std::vector<std::vector<std::size_t>> adj(2 * f.var_count);
    for (const auto& c : f.clauses) {
        if (c.unary()) {
            adj[lit_node(-c.a)].push_back(lit_node(c.a));
        } else {
            adj[lit_node(-c.a)].push_back(lit_node(c.b));
            adj[lit_node(-c.b)].push_back(lit_node(c.a));
        }
    }
    return adj;
}

/// Tarjan's algorithm without recursion. Component ids follow completion
/// order, so they form a reverse topological order of the condensation.
/// Roots are tried odd node first (the negative literal), so unconstrained
/// variables come out false.
inline std::vector<std::size_t> scc_ids(const std::vector<std::vector<std::size_t>>& adj) {
    const std::size_t n = adj.size();
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, unvisited), low(n, 0), comp(n, unvisited);
    std::vector<char> on_stack(n, 0);
    std::vector<std::size_t> stack;
    std::vector<std::pair<std::size_t, std::size_t>> call;  // (node, next edge)
    std::size_t counter = 0, comps = 0;

    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t root = k ^ 1;
        if (index[root] != unvisited) continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            auto& [v, e] = call.back();
            if (e < adj[v].size()) {
                const std::size_t w = adj[v][e++];
                if (index[w] == unvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            const std::size_t done = v;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
            if (low[done] == index[done]) {
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = comps;
                } while (w != done);
                ++comps;
            }
        }
    }
    return comp;
}

/// Literal path from `from` to `to` by BFS; both ends included.
inline std::vector<long> implication_path(const std::vector<std::vector<std::size_t>>& adj, std::size_t from,
                                          std::size_t to) {
    constexpr std::size_t unseen = static_cast<std::size_t>(-1);
    std::vector<std::size_t> parent(adj.size(), unseen);
    std::queue<std::size_t> q;
    parent[from] = from;
    q.push(from);
    while (!q.empty() && parent[to] == unseen) {
        const std::size_t v = q.front();
        q.pop();
        for (std::size_t w : adj[v])
            if (parent[w] == unseen) {
                parent[w] = v;
                q.push(w);
            }
    }
    if (parent[to] == unseen) throw Error("implication_path: target unreachable");
    std::vector<long> path;
    for (std::size_t v = to;; v = parent[v]) {
        path.push_back(node_lit(v));
        if (v == from) break;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace detail

/// Satisfying assignment, or an unsatisfiable core for the lowest-indexed
/// variable sharing a component with its negation.
inline TwoSatResult solve_2sat(const CnfFormula2& f) {
    const auto adj = detail::implication_graph(f);
    const auto comp = detail::scc_ids(adj);
    TwoSatResult r;
    for (std::size_t v = 0; v < f.var_count; ++v) {
        if (comp[2 * v] != comp[2 * v + 1]) continue;
        r.core = TwoSatCore{v, detail::implication_path(adj, 2 * v, 2 * v + 1),
                            detail::implication_path(adj, 2 * v + 1, 2 * v)};
        return r;
    }
    std::vector<bool> a(f.var_count);
    for (std::size_t v = 0; v < f.var_count; ++v) a[v] = comp[2 * v] < comp[2 * v + 1];
    r.assignment = std::move(a);
    return r;
}

}  // namespace dtn
