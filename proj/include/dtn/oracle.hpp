#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "dtn/graph.hpp"
#include "dtn/hypergraph.hpp"
#include "dtn/model.hpp"
#include "dtn/stn.hpp"

namespace dtn {

struct OracleOptions {
    std::size_t budget = 1'000'000;  // STN solves
    bool keep_all = false;           // disable early exit and collect every least schedule
};

struct OracleResult {
    /// Least schedule of the first consistent selection, in enumeration order.
    std::optional<Schedule> schedule;
    /// With keep_all: least schedule of every consistent selection and their
    /// pointwise minimum.
    std::vector<Schedule> all;
    std::optional<Schedule> pointwise_min;
    std::size_t solves = 0;

    bool consistent() const noexcept { return schedule.has_value(); }
};

namespace detail {

inline std::size_t selection_count(const std::vector<std::size_t>& radix, std::size_t budget) {
    std::size_t total = 1;
    for (std::size_t r : radix) {
        if (r == 0) return 0;
        if (total > budget / r) throw BudgetExceeded("oracle: more than " + std::to_string(budget) + " selections");
        total *= r;
    }
    if (total > budget) throw BudgetExceeded("oracle: more than " + std::to_string(budget) + " selections");
    return total;
}

/// Enumerates every mixed-radix selection (last digit fastest) and solves the
/// STN built by `build`.
template <class Build>
OracleResult enumerate(std::size_t n, const std::vector<std::size_t>& radix, const OracleOptions& opt, Build build) {
    OracleResult r;
    const std::size_t total = selection_count(radix, opt.budget);
    std::vector<std::size_t> pick(radix.size(), 0);
    for (std::size_t k = 0; k < total; ++k) {
        std::vector<Arc> arcs;
        std::vector<Bound> lower, upper;
        build(pick, arcs, lower, upper);
        ++r.solves;
        Verdict v = solve_stn(with_origin(n, arcs, lower, upper));
        if (v.is_consistent()) {
            const auto vals = v.schedule().values();
            const Weight z = vals[n];
            std::vector<Weight> s(n);
            for (std::size_t i = 0; i < n; ++i) s[i] = checked::sub(vals[i], z);
            Schedule sched(std::move(s));
            if (!r.schedule) r.schedule = sched;
            if (!opt.keep_all) return r;
            if (!r.pointwise_min) {
                r.pointwise_min = sched;
            } else {
                for (std::size_t i = 0; i < n; ++i) (*r.pointwise_min)[i] = std::min((*r.pointwise_min)[i], sched[i]);
            }
            r.all.push_back(std::move(sched));
        }
        for (std::size_t d = radix.size(); d-- > 0;) {
            if (++pick[d] < radix[d]) break;
            pick[d] = 0;
        }
    }
    return r;
}

}  // namespace detail

/// Brute force over every t2 interval and t3 side: consistent iff some
/// selection yields a consistent STN with non-negative times.
inline OracleResult oracle_rdtp(const Rdtn& net, const OracleOptions& opt = {}) {
    if (!net.empty_domains().empty()) return {};
    std::vector<Arc> base;
    for (const auto& c : net.c1()) base.push_back({c.x, c.y, c.w});
    std::vector<std::size_t> radix;
    for (const auto& c : net.c2()) radix.push_back(c.intervals.size());
    for (std::size_t i = 0; i < net.c3().size(); ++i) radix.push_back(2);
    const std::size_t k2 = net.c2().size();
    return detail::enumerate(net.size(), radix, opt,
                             [&](const std::vector<std::size_t>& pick, std::vector<Arc>& arcs, std::vector<Bound>& lo,
                                 std::vector<Bound>& hi) {
                                 arcs = base;
                                 for (std::size_t i = 0; i < k2; ++i) {
                                     const auto& c = net.c2()[i];
                                     lo.push_back({c.x, c.intervals[pick[i]].lo});
                                     hi.push_back({c.x, c.intervals[pick[i]].hi});
                                 }
                                 for (std::size_t i = 0; i < net.c3().size(); ++i) {
                                     const Disjunct& d = net.c3()[i].side(pick[k2 + i] == 1);
                                     lo.push_back({d.x, d.range.lo});
                                     hi.push_back({d.x, d.range.hi});
                                 }
                             });
}

/// Brute force over one endpoint per hyperarc, one interval per t2 and one
/// side per t3 constraint. Works for either orientation.
inline OracleResult oracle_hytn(const Hytn& net, const OracleOptions& opt = {}) {
    if (!net.empty_domains().empty()) return {};
    std::vector<std::size_t> radix;
    for (const auto& a : net.arcs()) radix.push_back(a.others.size());
    for (const auto& c : net.c2()) radix.push_back(c.intervals.size());
    for (std::size_t i = 0; i < net.c3().size(); ++i) radix.push_back(2);
    const std::size_t ka = net.arcs().size(), k2 = net.c2().size();
    const bool head = net.orientation() == Orientation::multi_head;
    return detail::enumerate(net.size(), radix, opt,
                             [&](const std::vector<std::size_t>& pick, std::vector<Arc>& arcs, std::vector<Bound>& lo,
                                 std::vector<Bound>& hi) {
                                 for (std::size_t i = 0; i < ka; ++i) {
                                     const Hyperarc& a = net.arcs()[i];
                                     const Endpoint& e = a.others[pick[i]];
                                     // head: s(v) - s(p) <= w; tail: s(p) - s(v) <= w
                                     if (head)
                                         arcs.push_back({a.pivot, e.node, e.w});
                                     else
                                         arcs.push_back({e.node, a.pivot, e.w});
                                 }
                                 for (std::size_t i = 0; i < k2; ++i) {
                                     const auto& c = net.c2()[i];
                                     lo.push_back({c.x, c.intervals[pick[ka + i]].lo});
                                     hi.push_back({c.x, c.intervals[pick[ka + i]].hi});
                                 }
                                 for (std::size_t i = 0; i < net.c3().size(); ++i) {
                                     const Disjunct& d = net.c3()[i].side(pick[ka + k2 + i] == 1);
                                     lo.push_back({d.x, d.range.lo});
                                     hi.push_back({d.x, d.range.hi});
                                 }
                             });
}

/// Brute-force satisfiability over clauses of signed 1-based literals.
inline std::optional<std::vector<bool>> brute_force_sat(std::size_t vars, const std::vector<std::vector<long>>& clauses) {
    if (vars >= 8 * sizeof(unsigned long long)) throw BudgetExceeded("brute_force_sat: too many variables");
    for (unsigned long long mask = 0; mask < (1ULL << vars); ++mask) {
        bool ok = true;
        for (const auto& c : clauses) {
            bool sat = false;
            for (long lit : c) {
                const bool v = (mask >> (std::labs(lit) - 1)) & 1ULL;
                if ((lit > 0) == v) {
                    sat = true;
                    break;
                }
            }
            if (!sat) {
                ok = false;
                break;
            }
        }
        if (ok) {
            std::vector<bool> a(vars);
            for (std::size_t i = 0; i < vars; ++i) a[i] = (mask >> i) & 1ULL;
            return a;
        }
    }
    return std::nullopt;
}

}  // namespace dtn
