#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "dtn/certificate.hpp"
#include "dtn/model.hpp"
#include "dtn/t2dtp.hpp"
#include "dtn/twosat.hpp"

namespace dtn {

/// Least schedule of the t1/t2 network with one t3 disjunct added as bounds;
/// nullopt when that network is inconsistent.
struct DisjunctContext {
    std::size_t c = 0;
    bool second = false;
    std::optional<Schedule> schedule;
};

enum class ClauseRule {
    dead_disjunct,  // the context of (c, side) is inconsistent
    blocks_first,   // the context of (c, side) overshoots the first bound of `other`
    blocks_second,  // the context of (c, side) overshoots the second bound of `other`
};

struct ClauseProvenance {
    std::size_t c = 0;
    bool second = false;
    std::size_t other = 0;
    ClauseRule rule = ClauseRule::dead_disjunct;
};

/// Variable c is true iff the first disjunct of t3 constraint c is selected.
struct ClauseSet {
    CnfFormula2 formula;
    std::vector<ClauseProvenance> provenance;
};

struct RdtpStats {
    T2dtpStats t2;
    std::size_t contexts = 0;
    std::size_t clauses = 0;
};

struct RdtpOptions {
    RdtpStats* stats = nullptr;
    ClauseSet* clauses = nullptr;  // filled when the 2-SAT stage is reached
};

inline std::size_t max_clause_count(std::size_t t3) { return t3 == 0 ? 0 : 2 * t3 + 4 * t3 * (t3 - 1); }

/// contexts[2c + side] describes disjunct `side` of t3 constraint c.
inline ClauseSet build_clause_set(const Rdtn& net, const std::vector<DisjunctContext>& contexts) {
    const auto& c3 = net.c3();
    if (contexts.size() != 2 * c3.size()) throw PreconditionError("build_clause_set: contexts do not cover every disjunct");
    ClauseSet out{CnfFormula2(c3.size()), {}};
    auto emit = [&](long a, long b, ClauseProvenance p) {
        out.formula.add(a, b);
        out.provenance.push_back(p);
    };
    for (std::size_t c = 0; c < c3.size(); ++c) {
        const long xc = static_cast<long>(c) + 1;
        for (bool second : {false, true}) {
            const auto& ctx = contexts[2 * c + (second ? 1 : 0)];
            // Selecting this side makes x_c take the value `!second`.
            const long chosen = second ? xc : -xc;
            if (!ctx.schedule) {
                emit(chosen, 0, {c, second, c, ClauseRule::dead_disjunct});
                continue;
            }
            for (std::size_t o = 0; o < c3.size(); ++o) {
                if (o == c) continue;
                const long xo = static_cast<long>(o) + 1;
                const auto& other = c3[o];
                if ((*ctx.schedule)[other.first.x] > other.first.range.hi)
                    emit(chosen, -xo, {c, second, o, ClauseRule::blocks_first});
                if ((*ctx.schedule)[other.second.x] > other.second.range.hi)
                    emit(chosen, xo, {c, second, o, ClauseRule::blocks_second});
            }
        }
    }
    return out;
}

namespace detail {

inline std::vector<TimePointId> rdtp_targets(const Rdtn& net) {
    auto targets = t2_targets(net.c2());
    for (const auto& c : net.c3()) {
        targets.push_back(c.first.x);
        targets.push_back(c.second.x);
    }
    return targets;
}

inline DisjunctContext solve_context(const LiftState& base, const Rdtn& net, std::size_t c, bool second,
                                     const T2dtpOptions& opt) {
    const Disjunct& d = net.c3()[c].side(second);
    DisjunctContext ctx{c, second, std::nullopt};
    LiftState state = base;
    if (state.f()[d.x] < d.range.lo) state.lift(d.x, d.range.lo);
    bool broken = false;
    if (run_lifting(state, net.c2(), opt, Bound{d.x, d.range.hi}, &broken) || broken) return ctx;
    ctx.schedule = state.f();
    return ctx;
}

}  // namespace detail

/// Per-disjunct contexts computed from the base lifting state.
inline std::vector<DisjunctContext> disjunct_contexts(const LiftState& base, const Rdtn& net,
                                                      const T2dtpOptions& opt = {}) {
    std::vector<DisjunctContext> out;
    out.reserve(2 * net.c3().size());
    for (std::size_t c = 0; c < net.c3().size(); ++c) {
        out.push_back(detail::solve_context(base, net, c, false, opt));
        out.push_back(detail::solve_context(base, net, c, true, opt));
    }
    return out;
}

/// Full t1/t2/t3 solve. On success the schedule is the pointwise maximum of
/// the contexts selected by the 2-SAT assignment (the base t1/t2 schedule when
/// there are no t3 constraints). Failure carries the t1/t2 certificate or the
/// unsatisfiable 2-SAT core.
inline Verdict solve_rdtp(const Rdtn& net, const RdtpOptions& opt = {}) {
    if (!net.empty_domains().empty()) return Verdict::inconsistent(EmptyDomain{net.empty_domains().front()});
    T2dtpOptions t2opt;
    t2opt.stats = opt.stats ? &opt.stats->t2 : nullptr;
    const StnGraph g = StnGraph::from_t1(net.size(), net.c1());
    NegativeCycle cyc;
    auto base = LiftState::create(g, detail::rdtp_targets(net), &cyc, t2opt.stats);
    if (!base) return Verdict::inconsistent(std::move(cyc));
    if (auto bad = run_lifting(*base, net.c2(), t2opt))
        return Verdict::inconsistent(T2Witness{base->lifts(), *bad, base->f()});
    if (net.c3().empty()) return Verdict::consistent(base->f());

    // Contexts start after the base loop; their iterations are not the base's.
    T2dtpOptions ctx_opt;
    const auto contexts = disjunct_contexts(*base, net, ctx_opt);
    ClauseSet clauses = build_clause_set(net, contexts);
    if (opt.stats) {
        opt.stats->contexts += contexts.size();
        opt.stats->clauses += clauses.formula.clauses.size();
    }
    const TwoSatResult sat = solve_2sat(clauses.formula);
    if (opt.clauses) *opt.clauses = clauses;
    if (!sat.satisfiable()) return Verdict::inconsistent(*sat.core);

    std::vector<Weight> s(net.size(), 0);
    for (std::size_t c = 0; c < net.c3().size(); ++c) {
        const bool second = !(*sat.assignment)[c];
        const Schedule& part = *contexts[2 * c + (second ? 1 : 0)].schedule;
        for (TimePointId t = 0; t < net.size(); ++t) s[t] = std::max(s[t], part[t]);
    }
    return Verdict::consistent(Schedule(std::move(s)));
}

}  // namespace dtn
