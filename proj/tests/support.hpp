#pragma once

// Reference implementations used only by the tests. They share nothing with
// the solvers beyond the model types.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "dtn/dtn.hpp"

namespace ref {

using dtn::Weight;

inline constexpr Weight inf = INT64_MAX / 4;

/// All-pairs shortest distances by Floyd-Warshall; dist[a][b] = inf when b is
/// unreachable from a. Returns nullopt on a negative cycle.
inline std::optional<std::vector<std::vector<Weight>>> floyd(std::size_t n, const std::vector<dtn::Arc>& arcs) {
    std::vector<std::vector<Weight>> d(n, std::vector<Weight>(n, inf));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
    for (const auto& a : arcs) d[a.tail][a.head] = std::min(d[a.tail][a.head], a.w);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            if (d[i][k] == inf) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (d[k][j] != inf) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
        }
    for (std::size_t i = 0; i < n; ++i)
        if (d[i][i] < 0) return std::nullopt;
    return d;
}

/// Least non-negative solution of the arcs (x, y, w): s(y) <= s(x) + w.
/// A path v -> u of length d forces s(v) >= s(u) - d >= -d, so the least
/// schedule is s(v) = max(0, max_u -dist(v, u)).
inline std::optional<std::vector<Weight>> least_schedule(std::size_t n, const std::vector<dtn::Arc>& arcs) {
    auto d = floyd(n, arcs);
    if (!d) return std::nullopt;
    std::vector<Weight> s(n, 0);
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t u = 0; u < n; ++u)
            if ((*d)[v][u] != inf) s[v] = std::max(s[v], -(*d)[v][u]);
    return s;
}

/// Every integer schedule in [0, hi]^n satisfying all arcs.
template <class F>
void for_each_schedule(std::size_t n, Weight hi, F&& f) {
    std::vector<Weight> s(n, 0);
    for (;;) {
        f(s);
        std::size_t i = 0;
        while (i < n && s[i] == hi) s[i++] = 0;
        if (i == n) return;
        ++s[i];
    }
}

inline bool arcs_hold(const std::vector<Weight>& s, const std::vector<dtn::Arc>& arcs) {
    for (const auto& a : arcs)
        if (s[a.head] - s[a.tail] > a.w) return false;
    return true;
}

/// Random STN: n nodes, m arcs with distinct endpoints, weights in [-wmax, wmax].
inline dtn::StnGraph random_stn(std::uint64_t seed, std::size_t n, std::size_t m, Weight wmax) {
    dtn::Rng rng(seed);
    dtn::StnGraph g(n, {});
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t x = rng.index(n);
        std::size_t y = rng.index(n - 1);
        if (y >= x) ++y;
        g.add(x, y, rng.uniform(-wmax, wmax));
    }
    return g;
}

/// Random feasible schedule: least schedule of the graph plus random
/// non-negative shifts pushed through the arcs (a fixpoint of raising).
inline std::vector<Weight> random_feasible(dtn::Rng& rng, const dtn::StnGraph& g, const std::vector<Weight>& least) {
    std::vector<Weight> s = least;
    for (auto& v : s) v += rng.uniform(0, 6);
    // Raise tails until every arc holds: s(x) >= s(y) - w.
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& a : g.arcs)
            if (s[a.head] - s[a.tail] > a.w) {
                s[a.tail] = s[a.head] - a.w;
                changed = true;
            }
    }
    return s;
}

/// Smallest integer >= v inside one of the intervals, if any.
inline std::optional<Weight> scan_up(const std::vector<dtn::Interval>& ivs, Weight v, Weight limit) {
    for (Weight p = v; p <= limit; ++p)
        for (const auto& iv : ivs)
            if (iv.lo <= p && p <= iv.hi) return p;
    return std::nullopt;
}

}  // namespace ref
