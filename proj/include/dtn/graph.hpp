#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dtn/model.hpp"

namespace dtn {

/// Directed weighted arc (tail, head, w) standing for (head - tail <= w).
struct Arc {
    TimePointId tail = 0;
    TimePointId head = 0;
    Weight w = 0;

    friend bool operator==(const Arc&, const Arc&) = default;
};

/// Distance graph of a simple temporal network.
struct StnGraph {
    std::size_t n = 0;
    std::vector<Arc> arcs;

    StnGraph() = default;
    StnGraph(std::size_t nodes, std::vector<Arc> a) : n(nodes), arcs(std::move(a)) {
        for (const auto& arc : arcs)
            if (arc.tail >= n || arc.head >= n) throw ModelError("arc endpoint out of range");
    }

    /// One arc (x, y, w) per t1 constraint (y - x <= w).
    static StnGraph from_t1(std::size_t n, const std::vector<T1Constraint>& c1) {
        std::vector<Arc> arcs;
        arcs.reserve(c1.size());
        for (const auto& c : c1) arcs.push_back({c.x, c.y, c.w});
        return StnGraph(n, std::move(arcs));
    }

    void add(TimePointId tail, TimePointId head, Weight w) {
        if (tail >= n || head >= n) throw ModelError("arc endpoint out of range");
        arcs.push_back({tail, head, w});
    }

    friend bool operator==(const StnGraph&, const StnGraph&) = default;
};

/// Closed arc sequence of negative total weight.
struct NegativeCycle {
    std::vector<Arc> arcs;

    friend bool operator==(const NegativeCycle&, const NegativeCycle&) = default;
};

/// Bound on a single time-point, lower or upper depending on context.
struct Bound {
    TimePointId x = 0;
    Weight value = 0;

    friend bool operator==(const Bound&, const Bound&) = default;
};

/// Builds the auxiliary STN with an explicit origin node z = n: the given arcs,
/// (z - T <= 0) for every T, (z - X <= -lo) for each lower bound and
/// (X - z <= hi) for each upper bound.
inline StnGraph with_origin(std::size_t n, const std::vector<Arc>& arcs, const std::vector<Bound>& lower,
                            const std::vector<Bound>& upper) {
    StnGraph g(n + 1, arcs);
    const TimePointId z = n;
    for (TimePointId t = 0; t < n; ++t) g.add(t, z, 0);
    for (const auto& b : lower) g.add(b.x, z, checked::neg(b.value));
    for (const auto& b : upper) g.add(z, b.x, b.value);
    return g;
}

}  // namespace dtn
