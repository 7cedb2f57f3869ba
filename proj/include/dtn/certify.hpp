#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <span>
#include <vector>

#include "dtn/certificate.hpp"
#include "dtn/graph.hpp"
#include "dtn/hypergraph.hpp"
#include "dtn/hytn.hpp"
#include "dtn/model.hpp"
#include "dtn/rdtp.hpp"
#include "dtn/stn.hpp"
#include "dtn/t2dtp.hpp"
#include "dtn/twosat.hpp"

namespace dtn {

/// Every constraint holds and every value is non-negative.
inline bool verify_schedule(const Rdtn& net, const Schedule& s) { return satisfies(s, net) && s.non_negative(); }

inline bool verify_schedule(const Hytn& net, const Schedule& s) { return satisfies(s, net) && s.non_negative(); }

/// Arcs of g, each head equal to the next tail (cyclically), total weight < 0.
inline bool verify_negative_cycle(const StnGraph& g, const NegativeCycle& cyc) {
    if (cyc.arcs.empty()) return false;
    Weight total = 0;
    for (std::size_t i = 0; i < cyc.arcs.size(); ++i) {
        const Arc& a = cyc.arcs[i];
        if (a.head != cyc.arcs[(i + 1) % cyc.arcs.size()].tail) return false;
        if (std::find(g.arcs.begin(), g.arcs.end(), a) == g.arcs.end()) return false;
        total = checked::add(total, a.w);
    }
    return total < 0;
}

/// Structural conditions of a negative hypercycle plus negativity of every
/// cyclic node sequence, for a multi-head network.
///
/// Cycle check: with k = |S| + 1, a simple cycle has sum(w) < 0 iff its sum
/// of (k w + 1) is negative, and the latter is never zero; so all cycles are
/// negative iff the graph weighted by -(k w + 1) has no negative cycle.
inline bool verify_negative_hypercycle(const Hytn& net, const NegativeHypercycle& h) {
    if (net.orientation() != Orientation::multi_head) return false;
    const auto& S = h.nodes;
    if (S.empty() || h.arcs.size() != S.size()) return false;
    if (!std::is_sorted(S.begin(), S.end()) || std::adjacent_find(S.begin(), S.end()) != S.end()) return false;
    if (S.back() >= net.size()) return false;
    auto index_of = [&](TimePointId v) -> std::size_t {
        auto it = std::lower_bound(S.begin(), S.end(), v);
        return it != S.end() && *it == v ? static_cast<std::size_t>(it - S.begin()) : S.size();
    };
    std::vector<char> owned(S.size(), 0);
    for (const auto& a : h.arcs) {
        if (a.orientation != Orientation::multi_head) return false;
        if (std::find(net.arcs().begin(), net.arcs().end(), a) == net.arcs().end()) return false;
        const std::size_t p = index_of(a.pivot);
        if (p == S.size() || owned[p]) return false;
        owned[p] = 1;
        for (const auto& e : a.others)
            if (index_of(e.node) == S.size()) return false;
    }
    const Weight k = static_cast<Weight>(S.size()) + 1;
    StnGraph g(S.size(), {});
    for (const auto& a : h.arcs)
        for (const auto& e : a.others)
            g.add(index_of(a.pivot), index_of(e.node), checked::neg(checked::add(checked::mul(k, e.w), 1)));
    return solve_stn(g).is_consistent();
}

/// The schedule satisfies every hyperarc and lower bound, is non-negative,
/// and family[X] shows X cannot be scheduled below schedule[X].
inline bool verify_clfs(const Hytn& net, const ClfsCertificate& cert) {
    if (net.orientation() != Orientation::multi_head) return false;
    const Schedule& s = cert.schedule;
    if (s.size() != net.size() || !s.non_negative()) return false;
    for (const auto& a : net.arcs())
        if (!hyperarc_satisfied(a, s)) return false;
    for (const auto& b : cert.lower)
        if (b.x >= net.size() || s[b.x] < b.value) return false;
    if (cert.family.size() != net.size()) return false;
    for (TimePointId x = 0; x < net.size(); ++x)
        if (!verify_negative_hypercycle(clfs_network(net, cert.lower, x, s[x]), cert.family[x])) return false;
    return true;
}

namespace detail {

inline const T2Constraint* t2_on(const std::vector<T2Constraint>& c2, TimePointId x) {
    auto it = std::lower_bound(c2.begin(), c2.end(), x, [](const T2Constraint& c, TimePointId v) { return c.x < v; });
    return it != c2.end() && it->x == x ? &*it : nullptr;
}

}  // namespace detail

/// Each step is a verified CLFS under the lower bounds implied by the earlier
/// steps, its witness constraint is violated, and the last witness lies above
/// every interval of its constraint.
inline bool verify_t2hytp_inconsistency(const Hytn& net, const T2HytpSequence& seq) {
    if (seq.steps.empty() || net.orientation() != Orientation::multi_head) return false;
    std::vector<Bound> lower;
    for (std::size_t i = 0; i < seq.steps.size(); ++i) {
        const auto& step = seq.steps[i];
        if (step.clfs.lower != lower || !verify_clfs(net, step.clfs)) return false;
        const T2Constraint* c = detail::t2_on(net.c2(), step.witness);
        if (!c) return false;
        const Weight v = step.clfs.schedule[step.witness];
        if (c->satisfied_by(v)) return false;
        const Interval* next = c->next_above(v);
        if (i + 1 == seq.steps.size()) return next == nullptr;
        if (!next) return false;
        lower.push_back({step.witness, next->lo});
    }
    return false;
}

/// Replays the lifts against cold STN solves: each one must raise a violated
/// t2 constraint to its next interval, and the final least schedule must
/// overshoot every interval of the witness time-point.
inline bool verify_t2_witness(const Rdtn& net, const T2Witness& w) {
    const std::size_t n = net.size();
    if (w.witness >= n || w.schedule.size() != n) return false;
    std::vector<Arc> arcs;
    for (const auto& c : net.c1()) arcs.push_back({c.x, c.y, c.w});
    std::vector<Bound> lower;
    auto least = [&](Schedule& out) {
        Verdict v = solve_stn(with_origin(n, arcs, lower, {}));
        if (!v.is_consistent()) return false;
        out = Schedule(std::vector<Weight>(v.schedule().values().begin(), v.schedule().values().begin() + n));
        return true;
    };
    Schedule f;
    if (!least(f)) return false;
    for (const auto& b : w.lifts) {
        const T2Constraint* c = net.t2_on(b.x);
        if (!c || c->satisfied_by(f[b.x])) return false;
        const Interval* next = c->next_above(f[b.x]);
        if (!next || next->lo != b.value) return false;
        lower.push_back(b);
        if (!least(f)) return false;
    }
    if (!(f == w.schedule)) return false;
    const T2Constraint* c = net.t2_on(w.witness);
    return c && f[w.witness] > c->max_upper();
}

/// Implication chains v => ... => !v and !v => ... => v, each step backed by
/// a clause of f.
inline bool verify_twosat_core(const CnfFormula2& f, const TwoSatCore& core) {
    if (core.variable >= f.var_count) return false;
    const long v = static_cast<long>(core.variable) + 1;
    auto implies = [&](long p, long q) {
        for (const auto& c : f.clauses) {
            if (c.unary()) {
                if (c.a == q && p == -q) return true;
            } else if ((c.a == -p && c.b == q) || (c.b == -p && c.a == q)) {
                return true;
            }
        }
        return false;
    };
    auto chain = [&](const std::vector<long>& path, long from, long to) {
        if (path.size() < 2 || path.front() != from || path.back() != to) return false;
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
            if (!implies(path[i], path[i + 1])) return false;
        return true;
    };
    return chain(core.forward, v, -v) && chain(core.backward, -v, v);
}

/// Clause set of the network, rebuilt from scratch; nullopt when the t1/t2
/// part alone is inconsistent.
inline std::optional<ClauseSet> rebuild_clause_set(const Rdtn& net) {
    if (!net.empty_domains().empty()) return std::nullopt;
    const StnGraph g = StnGraph::from_t1(net.size(), net.c1());
    auto base = LiftState::create(g, detail::rdtp_targets(net));
    if (!base || run_lifting(*base, net.c2())) return std::nullopt;
    return build_clause_set(net, disjunct_contexts(*base, net));
}

inline bool verify_certificate(const Rdtn& net, const Certificate& cert) {
    if (const auto* c = std::get_if<NegativeCycle>(&cert))
        return verify_negative_cycle(StnGraph::from_t1(net.size(), net.c1()), *c);
    if (const auto* c = std::get_if<T2Witness>(&cert)) return verify_t2_witness(net, *c);
    if (const auto* c = std::get_if<EmptyDomain>(&cert))
        return std::find(net.empty_domains().begin(), net.empty_domains().end(), c->x) != net.empty_domains().end();
    if (const auto* c = std::get_if<TwoSatCore>(&cert)) {
        const auto clauses = rebuild_clause_set(net);
        return clauses && verify_twosat_core(clauses->formula, *c);
    }
    return false;
}

/// Multi-tail networks are checked through head_form(net).
inline bool verify_certificate(const Hytn& input, const Certificate& cert) {
    if (!input.c3().empty()) return false;
    const Hytn net = input.orientation() == Orientation::multi_tail ? head_form(input) : input;
    if (const auto* c = std::get_if<NegativeHypercycle>(&cert)) return verify_negative_hypercycle(net, *c);
    if (const auto* c = std::get_if<T2HytpSequence>(&cert)) return verify_t2hytp_inconsistency(net, *c);
    if (const auto* c = std::get_if<EmptyDomain>(&cert))
        return std::find(net.empty_domains().begin(), net.empty_domains().end(), c->x) != net.empty_domains().end();
    return false;
}

}  // namespace dtn
