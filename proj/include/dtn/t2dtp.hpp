#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "dtn/certificate.hpp"
#include "dtn/graph.hpp"
#include "dtn/model.hpp"
#include "dtn/stn.hpp"

namespace dtn {

struct T2dtpStats {
    std::size_t iterations = 0;  // rule-f applications
    std::size_t relaxations = 0;
    std::size_t dijkstra_runs = 0;
};

struct T2dtpOptions {
    /// Called after every rule-f application with the new candidate and all
    /// lower bounds imposed so far.
    std::function<void(const Schedule&, std::span<const Bound>)> on_lift;
    T2dtpStats* stats = nullptr;
};

/// Candidate schedule of the lifting loop over a fixed t1 graph.
///
/// Distance rows to the tracked time-points are computed once against the
/// initial least schedule phi0 and shared between copies; each copy carries its
/// own candidate f and lift history, so a state can be forked cheaply.
class LiftState {
public:
    /// Returns nullopt and stores the cycle in `cycle` when the t1 graph is
    /// inconsistent.
    static std::optional<LiftState> create(const StnGraph& t1, const std::vector<TimePointId>& targets,
                                           NegativeCycle* cycle = nullptr, T2dtpStats* stats = nullptr) {
        StnStats st;
        Verdict v = solve_stn(t1, &st);
        if (stats) stats->relaxations += st.relaxations;
        if (!v.is_consistent()) {
            if (cycle) *cycle = std::get<NegativeCycle>(v.certificate());
            return std::nullopt;
        }
        auto shared = std::make_shared<Shared>();
        shared->phi0 = v.schedule();
        shared->row_of.assign(t1.n, none);
        const StnGraph reduced = reduced_costs(t1, shared->phi0);
        for (TimePointId x : targets) {
            if (x >= t1.n) throw PreconditionError("LiftState: target out of range");
            if (shared->row_of[x] != none) continue;
            shared->row_of[x] = shared->rows.size();
            shared->rows.push_back(dijkstra_to_target(reduced, x));
            if (stats) ++stats->dijkstra_runs;
        }
        return LiftState(std::move(shared));
    }

    const Schedule& f() const noexcept { return f_; }
    const Schedule& phi0() const noexcept { return shared_->phi0; }
    const std::vector<Bound>& lifts() const noexcept { return lifts_; }
    bool tracks(TimePointId x) const noexcept { return x < shared_->row_of.size() && shared_->row_of[x] != none; }

    /// Reduced distance from T to X under the current candidate (rule-delta).
    Distance delta(TimePointId x, TimePointId t) const {
        const Distance d0 = row0(x).dist[t];
        if (d0.infinite()) return d0;
        const Weight shift_t = checked::sub(f_[t], shared_->phi0[t]);
        const Weight shift_x = checked::sub(f_[x], shared_->phi0[x]);
        return d0 + checked::sub(shift_t, shift_x);
    }

    /// Whole rule-delta row for X.
    DistanceRow delta_row(TimePointId x) const {
        DistanceRow row{x, std::vector<Distance>(f_.size())};
        for (TimePointId t = 0; t < f_.size(); ++t) row.dist[t] = delta(x, t);
        return row;
    }

    /// rule-f: least candidate with X >= l. Requires l > f(X).
    void lift(TimePointId x, Weight l) {
        if (l <= f_[x]) throw PreconditionError("lift: bound does not exceed the current value");
        const Weight fx = f_[x];
        std::vector<Weight> next(f_.values().begin(), f_.values().end());
        for (TimePointId t = 0; t < f_.size(); ++t) {
            const Distance d = delta(x, t);
            if (d.infinite()) continue;
            const Weight gain = checked::sub(checked::sub(l, fx), d.value());
            if (gain > 0) next[t] = checked::add(next[t], gain);
        }
        f_ = Schedule(std::move(next));
        lifts_.push_back({x, l});
    }

private:
    static constexpr std::size_t none = static_cast<std::size_t>(-1);

    struct Shared {
        Schedule phi0;
        std::vector<std::size_t> row_of;
        std::vector<DistanceRow> rows;
    };

    explicit LiftState(std::shared_ptr<const Shared> s) : shared_(std::move(s)), f_(shared_->phi0) {}

    const DistanceRow& row0(TimePointId x) const {
        if (!tracks(x)) throw PreconditionError("LiftState: no distance row for time-point");
        return shared_->rows[shared_->row_of[x]];
    }

    std::shared_ptr<const Shared> shared_;
    Schedule f_;
    std::vector<Bound> lifts_;
};

inline DistanceRow apply_rule_delta(const LiftState& state, TimePointId x) { return state.delta_row(x); }

inline const Schedule& apply_rule_f(LiftState& state, TimePointId x, Weight l_star) {
    state.lift(x, l_star);
    return state.f();
}

/// Time-points carrying a t2 constraint.
inline std::vector<TimePointId> t2_targets(const std::vector<T2Constraint>& c2) {
    std::vector<TimePointId> out;
    out.reserve(c2.size());
    for (const auto& c : c2) out.push_back(c.x);
    return out;
}

/// Lifts until every t2 constraint holds. Constraints are scanned in
/// ascending time-point order and the first violated one is repaired.
/// Returns the time-point overshooting all of its intervals, if any.
/// `cap`, when given, is an upper bound (x, u) checked after every lift.
inline std::optional<TimePointId> run_lifting(LiftState& state, const std::vector<T2Constraint>& c2,
                                              const T2dtpOptions& opt = {},
                                              const std::optional<Bound>& cap = std::nullopt,
                                              bool* cap_broken = nullptr) {
    if (cap_broken) *cap_broken = false;
    auto over_cap = [&] { return cap && state.f()[cap->x] > cap->value; };
    if (over_cap()) {
        if (cap_broken) *cap_broken = true;
        return std::nullopt;
    }
    for (;;) {
        const T2Constraint* bad = nullptr;
        for (const auto& c : c2)
            if (!c.satisfied_by(state.f()[c.x])) {
                bad = &c;
                break;
            }
        if (!bad) return std::nullopt;
        const Interval* next = bad->next_above(state.f()[bad->x]);
        if (!next) return bad->x;
        state.lift(bad->x, next->lo);
        if (opt.stats) ++opt.stats->iterations;
        if (opt.on_lift) opt.on_lift(state.f(), state.lifts());
        if (over_cap()) {
            if (cap_broken) *cap_broken = true;
            return std::nullopt;
        }
    }
}

/// Least non-negative feasible schedule of a t1/t2 network, or a certificate:
/// a negative cycle of the t1 part, an empty t2 domain, or a T2Witness.
inline Verdict solve_t2dtp(const Rdtn& net, const T2dtpOptions& opt = {}) {
    if (!net.c3().empty()) throw PreconditionError("solve_t2dtp: network has t3 constraints");
    if (!net.empty_domains().empty()) return Verdict::inconsistent(EmptyDomain{net.empty_domains().front()});
    const StnGraph g = StnGraph::from_t1(net.size(), net.c1());
    NegativeCycle cyc;
    auto state = LiftState::create(g, t2_targets(net.c2()), &cyc, opt.stats);
    if (!state) return Verdict::inconsistent(std::move(cyc));
    if (auto bad = run_lifting(*state, net.c2(), opt))
        return Verdict::inconsistent(T2Witness{state->lifts(), *bad, state->f()});
    return Verdict::consistent(state->f());
}

}  // namespace dtn
