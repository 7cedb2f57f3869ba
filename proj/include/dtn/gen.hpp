#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "dtn/hypergraph.hpp"
#include "dtn/model.hpp"

namespace dtn {

/// CNF over variables 1..vars; literals are signed 1-based integers.
struct CnfFormula {
    std::size_t vars = 0;
    std::vector<std::vector<long>> clauses;

    friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

/// Deterministic 64-bit stream: std::mt19937_64 seeded with the seed as is.
/// Integers come from rejection sampling on raw 64-bit outputs, never from
/// std::uniform_int_distribution, whose algorithm varies between libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        if (lo > hi) throw PreconditionError("Rng::uniform: empty range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
        if (span == UINT64_MAX) return static_cast<std::int64_t>(next());
        const std::uint64_t range = span + 1;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
        std::uint64_t x;
        do x = next();
        while (x >= limit);
        return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + x % range);
    }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(n) - 1)); }

    bool coin() { return uniform(0, 1) == 1; }

private:
    std::mt19937_64 engine_;
};

/// Multi-tail network with t3 constraints, satisfiable iff the formula is.
/// Layout: z = 0, x_i = i, !x_i = n + i, C_j = 2n + j (1-based i, j).
inline Hytn gadget_from_3sat(const CnfFormula& f) {
    const std::size_t n = f.vars, m = f.clauses.size();
    const Orientation mt = Orientation::multi_tail;
    const TimePointId z = 0;
    auto pos = [&](std::size_t i) { return static_cast<TimePointId>(i); };
    auto neg = [&](std::size_t i) { return static_cast<TimePointId>(n + i); };
    auto lit_node = [&](long lit) {
        const std::size_t v = static_cast<std::size_t>(std::labs(lit));
        if (lit == 0 || v > n) throw ModelError("gadget: literal " + std::to_string(lit) + " out of range");
        return lit > 0 ? pos(v) : neg(v);
    };
    std::vector<Hyperarc> arcs;
    std::vector<T3Constraint> c3;
    for (std::size_t i = 1; i <= n; ++i) {
        arcs.push_back(Hyperarc::standard(mt, z, pos(i), 1));
        arcs.push_back(Hyperarc::standard(mt, pos(i), z, 0));
        arcs.push_back(Hyperarc::standard(mt, z, neg(i), 1));
        arcs.push_back(Hyperarc::standard(mt, neg(i), z, 0));
        arcs.emplace_back(mt, z, std::vector<Endpoint>{{pos(i), -1}, {neg(i), -1}});
        c3.emplace_back(Disjunct{pos(i), {0, 0}}, Disjunct{neg(i), {0, 0}});
    }
    for (std::size_t j = 1; j <= m; ++j) {
        const auto& clause = f.clauses[j - 1];
        if (clause.size() != 3) throw ModelError("gadget: clause " + std::to_string(j) + " does not have 3 literals");
        const TimePointId cj = 2 * n + j;
        arcs.push_back(Hyperarc::standard(mt, z, cj, 1));
        arcs.push_back(Hyperarc::standard(mt, cj, z, -1));
        std::vector<Endpoint> tails;
        for (long lit : clause) tails.push_back({lit_node(lit), 0});
        arcs.emplace_back(mt, cj, std::move(tails));
    }
    return Hytn(1 + 2 * n + m, mt, std::move(arcs), {}, std::move(c3));
}

/// Pads clauses shorter than 3 by repeating their last literal.
inline CnfFormula pad_to_3(CnfFormula f) {
    for (auto& c : f.clauses) {
        if (c.empty() || c.size() > 3) throw ModelError("pad_to_3: clause must have 1 to 3 literals");
        while (c.size() < 3) c.push_back(c.back());
    }
    return f;
}

/// Schedule of the gadget encoding a truth assignment: z = 0, C_j = 1, the
/// true literal of each variable at 1 and the false one at 0.
inline Schedule gadget_schedule(const CnfFormula& f, const std::vector<bool>& assignment) {
    const std::size_t n = f.vars, m = f.clauses.size();
    Schedule s(1 + 2 * n + m, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        s[i] = assignment.at(i - 1) ? 1 : 0;
        s[n + i] = assignment.at(i - 1) ? 0 : 1;
    }
    for (std::size_t j = 1; j <= m; ++j) s[2 * n + j] = 1;
    return s;
}

/// x_i is true iff s(x_i) = s(z) + 1.
inline std::vector<bool> gadget_assignment(const CnfFormula& f, const Schedule& s) {
    std::vector<bool> a(f.vars);
    for (std::size_t i = 1; i <= f.vars; ++i) a[i - 1] = s[i] == s[0] + 1;
    return a;
}

struct RandomRdtnParams {
    std::size_t n = 4;
    std::size_t t1 = 5;
    std::size_t t2 = 2;   // capped at n; distinct time-points
    std::size_t t3 = 0;
    Weight w_min = -8;
    Weight w_max = 8;
    std::size_t max_intervals = 3;
    Weight bound_max = 12;  // interval endpoints drawn from [0, bound_max + 3]
};

namespace detail {

inline Interval random_interval(Rng& rng, Weight bound_max) {
    const Weight lo = rng.uniform(0, bound_max);
    return {lo, lo + rng.uniform(0, 3)};
}

inline std::vector<TimePointId> distinct_points(Rng& rng, std::size_t n, std::size_t k) {
    std::vector<TimePointId> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    for (std::size_t i = 0; i < k && i < n; ++i) std::swap(all[i], all[i + rng.index(n - i)]);
    all.resize(std::min(k, n));
    std::sort(all.begin(), all.end());
    return all;
}

inline std::vector<T2Constraint> random_t2(Rng& rng, std::size_t n, std::size_t count, std::size_t max_intervals,
                                           Weight bound_max) {
    std::vector<T2Constraint> c2;
    for (TimePointId x : distinct_points(rng, n, count)) {
        const std::size_t k = 1 + rng.index(std::max<std::size_t>(max_intervals, 1));
        std::vector<Interval> ivs;
        for (std::size_t i = 0; i < k; ++i) ivs.push_back(random_interval(rng, bound_max));
        c2.emplace_back(x, std::move(ivs));
    }
    return c2;
}

inline T3Constraint random_t3(Rng& rng, std::size_t n, Weight bound_max) {
    const TimePointId a = rng.index(n);
    TimePointId b = rng.index(n - 1);
    if (b >= a) ++b;
    return T3Constraint(Disjunct{a, random_interval(rng, bound_max)}, Disjunct{b, random_interval(rng, bound_max)});
}

}  // namespace detail

/// Draw order: t1 constraints, then t2, then t3.
inline Rdtn random_rdtn(std::uint64_t seed, const RandomRdtnParams& p) {
    if (p.n == 0) throw PreconditionError("random_rdtn: n must be positive");
    if (p.n < 2 && (p.t1 > 0 || p.t3 > 0)) throw PreconditionError("random_rdtn: t1/t3 need two time-points");
    Rng rng(seed);
    std::vector<T1Constraint> c1;
    for (std::size_t i = 0; i < p.t1; ++i) {
        const TimePointId x = rng.index(p.n);
        TimePointId y = rng.index(p.n - 1);
        if (y >= x) ++y;
        c1.push_back({x, y, rng.uniform(p.w_min, p.w_max)});
    }
    auto c2 = detail::random_t2(rng, p.n, p.t2, p.max_intervals, p.bound_max);
    std::vector<T3Constraint> c3;
    for (std::size_t i = 0; i < p.t3; ++i) c3.push_back(detail::random_t3(rng, p.n, p.bound_max));
    return Rdtn(p.n, std::move(c1), std::move(c2), std::move(c3));
}

struct RandomHytnParams {
    std::size_t n = 4;
    std::size_t arcs = 4;
    std::size_t max_others = 2;
    Weight w_min = -4;
    Weight w_max = 4;
    Orientation orientation = Orientation::multi_head;
    std::size_t t2 = 0;
    std::size_t max_intervals = 3;
    Weight bound_max = 8;
};

/// Draw order: hyperarcs (pivot, endpoint count, endpoints), then t2.
inline Hytn random_hytn(std::uint64_t seed, const RandomHytnParams& p) {
    if (p.n < 2) throw PreconditionError("random_hytn: need at least two time-points");
    Rng rng(seed);
    std::vector<Hyperarc> arcs;
    for (std::size_t i = 0; i < p.arcs; ++i) {
        const TimePointId pivot = rng.index(p.n);
        const std::size_t k = 1 + rng.index(std::min(std::max<std::size_t>(p.max_others, 1), p.n - 1));
        std::vector<Endpoint> ends;
        while (ends.size() < k) {
            TimePointId v = rng.index(p.n - 1);
            if (v >= pivot) ++v;
            if (std::any_of(ends.begin(), ends.end(), [&](const Endpoint& e) { return e.node == v; })) continue;
            ends.push_back({v, rng.uniform(p.w_min, p.w_max)});
        }
        arcs.emplace_back(p.orientation, pivot, std::move(ends));
    }
    auto c2 = detail::random_t2(rng, p.n, p.t2, p.max_intervals, p.bound_max);
    return Hytn(p.n, p.orientation, std::move(arcs), std::move(c2));
}

/// Uniform random 3-CNF; each slot draws a variable and a sign.
inline CnfFormula random_3cnf(std::uint64_t seed, std::size_t vars, std::size_t clauses) {
    if (vars == 0) throw PreconditionError("random_3cnf: need at least one variable");
    Rng rng(seed);
    CnfFormula f{vars, {}};
    for (std::size_t j = 0; j < clauses; ++j) {
        std::vector<long> c;
        for (int k = 0; k < 3; ++k) {
            const long v = static_cast<long>(rng.index(vars)) + 1;
            c.push_back(rng.coin() ? v : -v);
        }
        f.clauses.push_back(std::move(c));
    }
    return f;
}

/// Every weight and bound multiplied by k.
inline Hytn scale_weights(const Hytn& net, Weight k) {
    if (k < 1) throw PreconditionError("scale_weights: multiplier must be >= 1");
    std::vector<Hyperarc> arcs;
    for (const auto& a : net.arcs()) {
        std::vector<Endpoint> ends;
        for (const auto& e : a.others) ends.push_back({e.node, checked::mul(e.w, k)});
        arcs.emplace_back(a.orientation, a.pivot, std::move(ends));
    }
    auto scale_iv = [&](Interval iv) { return Interval{checked::mul(iv.lo, k), checked::mul(iv.hi, k)}; };
    std::vector<T2Constraint> c2;
    for (const auto& c : net.c2()) {
        std::vector<Interval> ivs;
        for (const auto& iv : c.intervals) ivs.push_back(scale_iv(iv));
        c2.emplace_back(c.x, std::move(ivs));
    }
    std::vector<T3Constraint> c3;
    for (const auto& c : net.c3())
        c3.emplace_back(Disjunct{c.first.x, scale_iv(c.first.range)}, Disjunct{c.second.x, scale_iv(c.second.range)});
    return Hytn(net.size(), net.orientation(), std::move(arcs), std::move(c2), std::move(c3));
}

inline Rdtn scale_weights(const Rdtn& net, Weight k) {
    if (k < 1) throw PreconditionError("scale_weights: multiplier must be >= 1");
    std::vector<T1Constraint> c1;
    for (const auto& c : net.c1()) c1.push_back({c.x, c.y, checked::mul(c.w, k)});
    auto scale_iv = [&](Interval iv) { return Interval{checked::mul(iv.lo, k), checked::mul(iv.hi, k)}; };
    std::vector<T2Constraint> c2;
    for (const auto& c : net.c2()) {
        std::vector<Interval> ivs;
        for (const auto& iv : c.intervals) ivs.push_back(scale_iv(iv));
        c2.emplace_back(c.x, std::move(ivs));
    }
    std::vector<T3Constraint> c3;
    for (const auto& c : net.c3())
        c3.emplace_back(Disjunct{c.first.x, scale_iv(c.first.range)}, Disjunct{c.second.x, scale_iv(c.second.range)});
    return Rdtn(net.size(), std::move(c1), std::move(c2), std::move(c3));
}

/// Random multi-head base network scaled by 1, 2, 4, ... up to `multiplier`
/// (and `multiplier` itself).
inline std::vector<Hytn> scaling_family(std::uint64_t seed, Weight multiplier, const RandomHytnParams& p = {}) {
    if (multiplier < 1) throw PreconditionError("scaling_family: multiplier must be >= 1");
    const Hytn base = random_hytn(seed, p);
    std::vector<Hytn> out;
    for (Weight k = 1; k < multiplier; k *= 2) out.push_back(scale_weights(base, k));
    out.push_back(scale_weights(base, multiplier));
    return out;
}

/// t2 lifting workload, consistent by construction: 2n t1 constraints with
/// weights in [0, 8] and n/2 t2 constraints whose last interval is open-ended
/// (upper bound 10^6), so raising everything into it satisfies all of them.
inline Rdtn lifting_rdtn(std::uint64_t seed, std::size_t n) {
    if (n < 2) throw PreconditionError("lifting_rdtn: need at least two time-points");
    Rng rng(seed);
    std::vector<T1Constraint> c1;
    for (std::size_t i = 0; i < 2 * n; ++i) {
        const std::size_t x = rng.index(n);
        std::size_t y = rng.index(n - 1);
        if (y >= x) ++y;
        c1.push_back({x, y, rng.uniform(0, 8)});
    }
    std::vector<T2Constraint> c2;
    const Weight span = static_cast<Weight>(4 * n);
    for (TimePointId x : detail::distinct_points(rng, n, n / 2)) {
        const Weight a = rng.uniform(1, span), b = a + rng.uniform(2, span), c = b + rng.uniform(2, span);
        c2.emplace_back(x, std::vector<Interval>{{a, a + 1}, {b, b + 1}, {c, 1'000'000}});
    }
    return Rdtn(n, std::move(c1), std::move(c2));
}

/// Three-node ladder whose least schedule is (k + 1, k): a >= b + 1 and
/// b >= min(a, c + k) with c pinned at 0. Value iteration climbs one unit per
/// round, so its work grows linearly with k at fixed topology.
inline Hytn ladder(Weight k) {
    if (k < 1) throw PreconditionError("ladder: k must be >= 1");
    const Orientation mh = Orientation::multi_head;
    std::vector<Hyperarc> arcs;
    arcs.push_back(Hyperarc::standard(mh, 0, 1, -1));
    arcs.emplace_back(mh, 1, std::vector<Endpoint>{{0, 0}, {2, checked::neg(k)}});
    return Hytn(3, mh, std::move(arcs));
}

}  // namespace dtn
