#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dtn/certificate.hpp"
#include "dtn/hypergraph.hpp"
#include "dtn/model.hpp"

namespace dtn {

struct HytnStats {
    std::size_t relaxations = 0;  // node-value raises
    std::size_t vi_runs = 0;
    std::size_t iterations = 0;   // t2 lifts
};

struct HytnOptions {
    /// Compute CLFS families, needed for t2 inconsistency certificates and
    /// for certified schedules.
    bool certify = false;
    HytnStats* stats = nullptr;
};

/// Flips every hyperarc and the time axis: multi-head <-> multi-tail,
/// intervals [l, u] -> [-u, -l]. s is feasible for net iff -s is feasible for
/// the result.
inline Hytn reduce_orientation(const Hytn& net) {
    const Orientation o = opposite(net.orientation());
    std::vector<Hyperarc> arcs;
    arcs.reserve(net.arcs().size());
    for (const auto& a : net.arcs()) arcs.emplace_back(o, a.pivot, a.others);
    auto flip = [](Interval iv) { return Interval{checked::neg(iv.hi), checked::neg(iv.lo)}; };
    std::vector<T2Constraint> c2;
    for (const auto& c : net.c2()) {
        std::vector<Interval> ivs;
        for (const auto& iv : c.intervals) ivs.push_back(flip(iv));
        c2.emplace_back(c.x, std::move(ivs));
    }
    // Empty domains survive the flip as a pair of disjoint constraints.
    for (TimePointId x : net.empty_domains()) {
        c2.emplace_back(x, std::vector<Interval>{{0, 0}});
        c2.emplace_back(x, std::vector<Interval>{{1, 1}});
    }
    std::vector<T3Constraint> c3;
    for (const auto& c : net.c3())
        c3.emplace_back(Disjunct{c.first.x, flip(c.first.range)}, Disjunct{c.second.x, flip(c.second.range)});
    return Hytn(net.size(), o, std::move(arcs), std::move(c2), std::move(c3));
}

/// Offset used to bring a multi-tail network to the multi-head side. If the
/// tail network has a non-negative feasible schedule, it has one with values
/// in [0, B], B = K + n (W + 1), with K the largest t2 bound magnitude and W
/// the largest arc weight magnitude: any gap wider than W + 1 between sorted
/// values below -K on the flipped side can be closed without breaking an arc.
inline Weight tail_offset(const Hytn& net) {
    Weight k = 0;
    for (const auto& c : net.c2())
        for (const auto& iv : c.intervals) k = std::max({k, checked::abs(iv.lo), checked::abs(iv.hi)});
    const Weight w1 = checked::add(net.max_abs_weight(), 1);
    return checked::add(k, checked::mul(static_cast<Weight>(net.size()), w1));
}

/// Multi-head network equivalent to a multi-tail one: flipped, every interval
/// shifted by B and every time-point confined to [0, B]. A schedule s' of the
/// result maps back to s = B - s'. Certificates for multi-tail inputs refer
/// to this network.
inline Hytn head_form(const Hytn& net, Weight* offset = nullptr) {
    if (net.orientation() != Orientation::multi_tail) throw PreconditionError("head_form: network is not multi-tail");
    if (!net.c3().empty()) throw PreconditionError("head_form: t3 constraints are not supported");
    const Weight b = tail_offset(net);
    if (offset) *offset = b;
    const Hytn flipped = reduce_orientation(net);
    std::vector<T2Constraint> c2;
    for (const auto& c : flipped.c2()) {
        std::vector<Interval> ivs;
        for (const auto& iv : c.intervals) ivs.push_back({checked::add(iv.lo, b), checked::add(iv.hi, b)});
        c2.emplace_back(c.x, std::move(ivs));
    }
    for (TimePointId x : flipped.empty_domains()) {
        c2.emplace_back(x, std::vector<Interval>{{0, 0}});
        c2.emplace_back(x, std::vector<Interval>{{1, 1}});
    }
    for (TimePointId x = 0; x < net.size(); ++x) c2.emplace_back(x, std::vector<Interval>{{0, b}});
    return Hytn(net.size(), Orientation::multi_head, flipped.arcs(), std::move(c2));
}

namespace detail {

struct ViOutcome {
    bool consistent = true;
    TimePointId breach = 0;
    std::vector<std::size_t> responsible;  // arc index of each node's last raise, or npos
};

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

inline std::vector<std::vector<std::size_t>> arcs_by_other(const std::vector<Hyperarc>& arcs, std::size_t n) {
    std::vector<std::vector<std::size_t>> dep(n);
    for (std::size_t i = 0; i < arcs.size(); ++i)
        for (const auto& e : arcs[i].others) dep[e.node].push_back(i);
    return dep;
}

// Value iteration for multi-head arcs: a violated arc raises its pivot to
// min_v (s(v) - w(v)). Finite least values never exceed max(start) + sum|w|,
// so going past that bound proves a negative hypercycle.
inline ViOutcome value_iteration(std::size_t n, const std::vector<Hyperarc>& arcs, std::vector<Weight>& s,
                                 HytnStats* stats) {
    ViOutcome out;
    out.responsible.assign(n, npos);
    Weight cap = 0;
    for (Weight v : s) cap = std::max(cap, v);
    for (const auto& a : arcs)
        for (const auto& e : a.others) cap = checked::add(cap, checked::abs(e.w));

    const auto dep = arcs_by_other(arcs, n);
    std::vector<char> queued(n, 1);
    std::vector<TimePointId> stack;
    for (TimePointId t = 0; t < n; ++t) stack.push_back(t);
    std::size_t raises = 0;

    auto check = [&](std::size_t idx) -> bool {
        const Hyperarc& a = arcs[idx];
        Weight m = checked::sub(s[a.others.front().node], a.others.front().w);
        for (const auto& e : a.others) m = std::min(m, checked::sub(s[e.node], e.w));
        if (s[a.pivot] >= m) return true;
        s[a.pivot] = m;
        out.responsible[a.pivot] = idx;
        ++raises;
        if (m > cap) {
            out.consistent = false;
            out.breach = a.pivot;
            return false;
        }
        if (!queued[a.pivot]) {
            queued[a.pivot] = 1;
            stack.push_back(a.pivot);
        }
        return true;
    };

    bool ok = true;
    while (ok && !stack.empty()) {
        const TimePointId v = stack.back();
        stack.pop_back();
        queued[v] = 0;
        for (std::size_t idx : dep[v])
            if (!(ok = check(idx))) break;
    }
    if (stats) {
        stats->relaxations += raises;
        ++stats->vi_runs;
    }
    return out;
}

/// Nodes reachable from the breach through responsible arcs, with those arcs.
/// Every node reached was raised in this run; each cycle through the arcs is
/// negative because its most recently raised node is strictly higher than the
/// value its predecessor saw.
inline NegativeHypercycle extract_hypercycle(const std::vector<Hyperarc>& arcs, const ViOutcome& vi) {
    const std::size_t n = vi.responsible.size();
    std::vector<char> seen(n, 0);
    std::vector<TimePointId> todo{vi.breach};
    seen[vi.breach] = 1;
    NegativeHypercycle h;
    while (!todo.empty()) {
        const TimePointId v = todo.back();
        todo.pop_back();
        const std::size_t idx = vi.responsible[v];
        if (idx == npos) throw Error("extract_hypercycle: reached a node that was never raised");
        h.nodes.push_back(v);
        h.arcs.push_back(arcs[idx]);
        for (const auto& e : arcs[idx].others)
            if (!seen[e.node]) {
                seen[e.node] = 1;
                todo.push_back(e.node);
            }
    }
    std::vector<std::size_t> order(h.nodes.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return h.nodes[a] < h.nodes[b]; });
    NegativeHypercycle sorted;
    for (std::size_t i : order) {
        sorted.nodes.push_back(h.nodes[i]);
        sorted.arcs.push_back(h.arcs[i]);
    }
    return sorted;
}

inline void require_head(const Hytn& net, const char* who) {
    if (net.orientation() != Orientation::multi_head) throw PreconditionError(std::string(who) + ": network is not multi-head");
}

}  // namespace detail

/// Multi-head network with the origin z = n, (z - T <= 0) for all T, the
/// lower bounds (z - X <= -l) and (X - z <= value - 1). Consistent iff X can
/// be scheduled strictly below `value` under those lower bounds.
inline Hytn clfs_network(const Hytn& net, std::span<const Bound> lower, TimePointId x, Weight value) {
    const std::size_t n = net.size();
    const TimePointId z = n;
    std::vector<Hyperarc> arcs = net.arcs();
    for (TimePointId t = 0; t < n; ++t) arcs.push_back(Hyperarc::standard(Orientation::multi_head, t, z, 0));
    for (const auto& b : lower) arcs.push_back(Hyperarc::standard(Orientation::multi_head, b.x, z, checked::neg(b.value)));
    arcs.push_back(Hyperarc::standard(Orientation::multi_head, z, x, checked::sub(value, 1)));
    return Hytn(n + 1, Orientation::multi_head, std::move(arcs));
}

/// Negative hypercycle proving X cannot go below schedule[X], for every X.
inline std::vector<NegativeHypercycle> clfs_family(const Hytn& net, std::span<const Bound> lower,
                                                   const Schedule& schedule, HytnStats* stats = nullptr) {
    std::vector<NegativeHypercycle> family;
    family.reserve(net.size());
    for (TimePointId x = 0; x < net.size(); ++x) {
        const Hytn aux = clfs_network(net, lower, x, schedule[x]);
        std::vector<Weight> s(aux.size(), 0);
        const auto vi = detail::value_iteration(aux.size(), aux.arcs(), s, stats);
        if (vi.consistent) throw Error("clfs_family: schedule is not least");
        family.push_back(detail::extract_hypercycle(aux.arcs(), vi));
    }
    return family;
}

/// Least feasible schedule >= warm (>= 0 when warm is absent) of a multi-head
/// network without t2/t3 constraints, or a negative hypercycle.
inline Verdict solve_head_hytp(const Hytn& net, const Schedule* warm = nullptr, HytnStats* stats = nullptr) {
    detail::require_head(net, "solve_head_hytp");
    if (!net.c2().empty() || !net.c3().empty() || !net.empty_domains().empty())
        throw PreconditionError("solve_head_hytp: network has t2/t3 constraints");
    std::vector<Weight> s(net.size(), 0);
    if (warm) {
        if (warm->size() != net.size()) throw PreconditionError("solve_head_hytp: warm start has wrong size");
        s.assign(warm->values().begin(), warm->values().end());
    }
    const auto vi = detail::value_iteration(net.size(), net.arcs(), s, stats);
    if (!vi.consistent) return Verdict::inconsistent(detail::extract_hypercycle(net.arcs(), vi));
    return Verdict::consistent(Schedule(std::move(s)));
}

/// Lifting loop over a multi-head network with t2 constraints: repair the
/// first violated t2 constraint (ascending time-point) by raising it to the
/// next interval, then rerun value iteration from the current values.
/// With opt.certify, every step of an inconsistency sequence carries its CLFS
/// family, and `clfs` (if given) receives the certified final schedule.
inline Verdict solve_t2hytp(const Hytn& net, const HytnOptions& opt = {}, ClfsCertificate* clfs = nullptr) {
    detail::require_head(net, "solve_t2hytp");
    if (!net.c3().empty()) throw PreconditionError("solve_t2hytp: network has t3 constraints");
    if (!net.empty_domains().empty()) return Verdict::inconsistent(EmptyDomain{net.empty_domains().front()});
    std::vector<Weight> s(net.size(), 0);
    auto vi = detail::value_iteration(net.size(), net.arcs(), s, opt.stats);
    if (!vi.consistent) return Verdict::inconsistent(detail::extract_hypercycle(net.arcs(), vi));

    std::vector<Bound> lower;
    T2HytpSequence seq;
    auto certified = [&](const Schedule& phi) {
        ClfsCertificate c;
        c.schedule = phi;
        c.lower = lower;
        if (opt.certify) c.family = clfs_family(net, lower, phi);
        return c;
    };
    for (;;) {
        const Schedule phi(s);
        const T2Constraint* bad = nullptr;
        for (const auto& c : net.c2())
            if (!c.satisfied_by(phi[c.x])) {
                bad = &c;
                break;
            }
        if (!bad) {
            if (clfs) *clfs = certified(phi);
            return Verdict::consistent(phi);
        }
        seq.steps.push_back({certified(phi), bad->x});
        const Interval* next = bad->next_above(phi[bad->x]);
        if (!next) return Verdict::inconsistent(std::move(seq));
        s[bad->x] = next->lo;
        lower.push_back({bad->x, next->lo});
        if (opt.stats) ++opt.stats->iterations;
        vi = detail::value_iteration(net.size(), net.arcs(), s, opt.stats);
        // The hyperarcs alone are consistent, so lower bounds cannot break them.
        if (!vi.consistent) throw Error("solve_t2hytp: value iteration diverged after a lift");
    }
}

/// Solves any single-orientation network without t3 constraints. Multi-tail
/// inputs go through head_form; their schedules are mapped back and their
/// certificates refer to head_form(net).
inline Verdict solve_hytn(const Hytn& net, const HytnOptions& opt = {}) {
    if (!net.c3().empty()) throw PreconditionError("solve_hytn: t3 constraints make the problem NP-hard");
    if (net.orientation() == Orientation::multi_head) {
        if (net.c2().empty() && net.empty_domains().empty()) return solve_head_hytp(net, nullptr, opt.stats);
        return solve_t2hytp(net, opt);
    }
    Weight b = 0;
    const Hytn head = head_form(net, &b);
    Verdict v = solve_t2hytp(head, opt);
    if (!v.is_consistent()) return v;
    std::vector<Weight> s(net.size());
    for (TimePointId t = 0; t < net.size(); ++t) s[t] = checked::sub(b, v.schedule()[t]);
    return Verdict::consistent(Schedule(std::move(s)));
}

}  // namespace dtn
