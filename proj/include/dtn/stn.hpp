#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <queue>
#include <utility>
#include <vector>

#include "dtn/certificate.hpp"
#include "dtn/graph.hpp"
#include "dtn/model.hpp"

namespace dtn {

struct StnStats {
    std::size_t relaxations = 0;
};

/// Shortest distances from every node to `target`; +inf when unreachable.
struct DistanceRow {
    TimePointId target = 0;
    std::vector<Distance> dist;
};

namespace detail {

/// Arc indices grouped by head, each group in arc order.
inline std::vector<std::vector<std::size_t>> arcs_by_head(const StnGraph& g) {
    std::vector<std::vector<std::size_t>> in(g.n);
    for (std::size_t i = 0; i < g.arcs.size(); ++i) in[g.arcs[i].head].push_back(i);
    return in;
}

// Value iteration on the lifted form: arc (x, y, w) requires s(x) >= s(y) - w.
// Values only increase. len[x] is the length of the arc walk that produced the
// current s(x); since every update is a strict increase, a walk of n arcs
// repeats a node with a larger value the second time, so its cycle is negative.
inline bool value_iteration(const StnGraph& g, std::vector<Weight>& s, StnStats* stats) {
    const std::size_t n = g.n;
    const auto in = arcs_by_head(g);
    std::vector<std::size_t> len(n, 0);
    std::vector<char> queued(n, 1);
    std::vector<TimePointId> stack;
    stack.reserve(n);
    for (TimePointId t = 0; t < n; ++t) stack.push_back(t);
    std::vector<TimePointId> touched;
    std::size_t relaxations = 0;
    bool ok = true;

    while (!stack.empty() && ok) {
        const TimePointId y = stack.back();
        stack.pop_back();
        queued[y] = 0;
        touched.clear();
        for (std::size_t idx : in[y]) {
            const Arc& a = g.arcs[idx];
            const Weight need = checked::sub(s[y], a.w);
            if (need <= s[a.tail]) continue;
            s[a.tail] = need;
            ++relaxations;
            len[a.tail] = len[y] + 1;
            if (len[a.tail] >= n || a.tail == y) {
                ok = false;
                break;
            }
            touched.push_back(a.tail);
        }
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (TimePointId t : touched)
            if (!queued[t]) {
                queued[t] = 1;
                stack.push_back(t);
            }
    }
    if (stats) stats->relaxations += relaxations;
    return ok;
}

}  // namespace detail

/// Returns a closed arc sequence of negative weight. Runs pass-based
/// Bellman-Ford from the all-zero start; throws PreconditionError when the
/// graph has no negative cycle.
inline NegativeCycle extract_negative_cycle(const StnGraph& g) {
    const std::size_t n = g.n;
    std::vector<Weight> s(n, 0);
    std::vector<std::size_t> pred(n, g.arcs.size());
    TimePointId last = n;
    // n + 1 passes: the implicit origin makes n + 1 nodes.
    for (std::size_t pass = 0; pass <= n; ++pass) {
        last = n;
        for (std::size_t i = 0; i < g.arcs.size(); ++i) {
            const Arc& a = g.arcs[i];
            const Weight need = checked::sub(s[a.head], a.w);
            if (need > s[a.tail]) {
                s[a.tail] = need;
                pred[a.tail] = i;
                last = a.tail;
            }
        }
        if (last == n) throw PreconditionError("extract_negative_cycle: graph has no negative cycle");
    }
    // Walking back from a node still relaxed in the last pass lands on the
    // cycle of the predecessor graph.
    TimePointId v = last;
    for (std::size_t i = 0; i <= n; ++i) {
        if (pred[v] == g.arcs.size()) throw Error("extract_negative_cycle: broken predecessor chain");
        v = g.arcs[pred[v]].head;
    }
    NegativeCycle cyc;
    TimePointId u = v;
    do {
        const Arc& a = g.arcs[pred[u]];
        cyc.arcs.push_back(a);
        u = a.head;
    } while (u != v);
    return cyc;
}

/// Least schedule >= start satisfying every arc, or a negative cycle.
inline Verdict solve_stn_warm(const StnGraph& g, const Schedule& start, StnStats* stats = nullptr) {
    if (start.size() != g.n) throw PreconditionError("solve_stn_warm: start has wrong size");
    std::vector<Weight> s(start.values().begin(), start.values().end());
    if (detail::value_iteration(g, s, stats)) return Verdict::consistent(Schedule(std::move(s)));
    return Verdict::inconsistent(extract_negative_cycle(g));
}

/// Least non-negative feasible schedule, or a negative cycle.
inline Verdict solve_stn(const StnGraph& g, StnStats* stats = nullptr) {
    return solve_stn_warm(g, Schedule(g.n, 0), stats);
}

/// Arc weights replaced by w - phi(head) + phi(tail).
inline StnGraph reduced_costs(const StnGraph& g, const Schedule& phi) {
    if (phi.size() < g.n) throw PreconditionError("reduced_costs: schedule shorter than graph");
    StnGraph out = g;
    for (auto& a : out.arcs) a.w = checked::add(checked::sub(a.w, phi[a.head]), phi[a.tail]);
    return out;
}

/// Dijkstra over reversed arcs; every weight must be non-negative.
inline DistanceRow dijkstra_to_target(const StnGraph& g, TimePointId target) {
    if (target >= g.n) throw PreconditionError("dijkstra_to_target: target out of range");
    for (const auto& a : g.arcs)
        if (a.w < 0) throw PreconditionError("dijkstra_to_target: negative arc weight");
    const auto in = detail::arcs_by_head(g);
    DistanceRow row{target, std::vector<Distance>(g.n)};
    std::vector<char> done(g.n, 0);
    using Item = std::pair<Weight, TimePointId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    row.dist[target] = Distance(0);
    pq.push({0, target});
    while (!pq.empty()) {
        const auto [d, v] = pq.top();
        pq.pop();
        if (done[v]) continue;
        done[v] = 1;
        for (std::size_t idx : in[v]) {
            const Arc& a = g.arcs[idx];
            const Distance cand(checked::add(d, a.w));
            if (cand < row.dist[a.tail]) {
                row.dist[a.tail] = cand;
                pq.push({cand.value(), a.tail});
            }
        }
    }
    return row;
}

}  // namespace dtn
