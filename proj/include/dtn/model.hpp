#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dtn/error.hpp"
#include "dtn/weight.hpp"

namespace dtn {

/// Dense 0-based index into a network's time-point table. The index order is
/// the total order on time-points used to orient two-variable disjunctions.
using TimePointId = std::size_t;

/// (y - x <= w)
struct T1Constraint {
    TimePointId x = 0;
    TimePointId y = 0;
    Weight w = 0;

    friend bool operator==(const T1Constraint&, const T1Constraint&) = default;
};

/// Closed integer interval [lo, hi].
struct Interval {
    Weight lo = 0;
    Weight hi = 0;

    bool contains(Weight v) const noexcept { return lo <= v && v <= hi; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Sorts and merges intervals sharing at least one point. The result covers
/// the same point set and is strictly increasing in both endpoints; [0,1] and
/// [2,3] stay separate.
inline std::vector<Interval> canonicalize_t2(std::vector<Interval> raw) {
    if (raw.empty()) throw ModelError("t2 constraint with no intervals");
    for (const auto& iv : raw)
        if (iv.lo > iv.hi) throw ModelError("interval with lo > hi");
    std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) {
        return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi;
    });
    std::vector<Interval> out;
    out.reserve(raw.size());
    for (const auto& iv : raw) {
        if (!out.empty() && iv.lo <= out.back().hi)
            out.back().hi = std::max(out.back().hi, iv.hi);
        else
            out.push_back(iv);
    }
    return out;
}

/// Intersection of two canonical interval lists; may be empty.
inline std::vector<Interval> intersect_intervals(std::span<const Interval> a, std::span<const Interval> b) {
    std::vector<Interval> out;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const Weight lo = std::max(a[i].lo, b[j].lo);
        const Weight hi = std::min(a[i].hi, b[j].hi);
        if (lo <= hi) out.push_back({lo, hi});
        if (a[i].hi < b[j].hi)
            ++i;
        else
            ++j;
    }
    return out;
}

/// Disjunction of intervals over a single time-point, kept in canonical
/// (nominal) order.
struct T2Constraint {
    TimePointId x = 0;
    std::vector<Interval> intervals;

    T2Constraint() = default;
    T2Constraint(TimePointId tp, std::vector<Interval> ivs) : x(tp), intervals(canonicalize_t2(std::move(ivs))) {}

    bool satisfied_by(Weight v) const noexcept {
        auto it = std::upper_bound(intervals.begin(), intervals.end(), v,
                                   [](Weight value, const Interval& iv) { return value < iv.lo; });
        return it != intervals.begin() && std::prev(it)->contains(v);
    }

    Weight max_upper() const noexcept { return intervals.back().hi; }

    /// Smallest lower bound strictly above v, if any.
    const Interval* next_above(Weight v) const noexcept {
        auto it = std::upper_bound(intervals.begin(), intervals.end(), v,
                                   [](Weight value, const Interval& iv) { return value < iv.lo; });
        return it == intervals.end() ? nullptr : &*it;
    }

    friend bool operator==(const T2Constraint&, const T2Constraint&) = default;
};

/// One side of a two-variable disjunction: (range.lo <= x <= range.hi).
struct Disjunct {
    TimePointId x = 0;
    Interval range;

    friend bool operator==(const Disjunct&, const Disjunct&) = default;
};

/// (first) or (second); first.x < second.x always holds after construction.
struct T3Constraint {
    Disjunct first;
    Disjunct second;

    T3Constraint() = default;
    T3Constraint(Disjunct a, Disjunct b) : first(a), second(b) {
        if (a.x == b.x) throw ModelError("t3 constraint over a single time-point");
        if (a.range.lo > a.range.hi || b.range.lo > b.range.hi) throw ModelError("interval with lo > hi");
        if (first.x > second.x) std::swap(first, second);
    }

    const Disjunct& side(bool second_side) const noexcept { return second_side ? second : first; }

    friend bool operator==(const T3Constraint&, const T3Constraint&) = default;
};

/// Total assignment of integer times to the time-points of a network.
class Schedule {
public:
    Schedule() = default;
    explicit Schedule(std::size_t n, Weight fill = 0) : values_(n, fill) {}
    explicit Schedule(std::vector<Weight> values) : values_(std::move(values)) {}
    Schedule(std::initializer_list<Weight> values) : values_(values) {}

    std::size_t size() const noexcept { return values_.size(); }
    Weight operator[](TimePointId t) const { return values_.at(t); }
    Weight& operator[](TimePointId t) { return values_.at(t); }
    std::span<const Weight> values() const noexcept { return values_; }

    Weight max_value() const noexcept {
        return values_.empty() ? 0 : *std::max_element(values_.begin(), values_.end());
    }

    bool non_negative() const noexcept {
        return std::all_of(values_.begin(), values_.end(), [](Weight v) { return v >= 0; });
    }

    /// Pointwise a <= b.
    friend bool pointwise_leq(const Schedule& a, const Schedule& b) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a.values_[i] > b.values_[i]) return false;
        return true;
    }

    friend bool operator==(const Schedule&, const Schedule&) = default;

private:
    std::vector<Weight> values_;
};

/// Canonicalizes t2 constraints and intersects those sharing a time-point.
/// Constraints end up sorted by time-point; empty intersections are reported
/// in `empty` instead.
inline void merge_t2_constraints(std::size_t n, std::vector<T2Constraint> in, std::vector<T2Constraint>& out,
                                 std::vector<TimePointId>& empty) {
    std::vector<std::vector<Interval>> domain(n);
    std::vector<bool> present(n, false);
    for (auto& c : in) {
        if (c.x >= n) throw ModelError("time-point " + std::to_string(c.x) + " out of range");
        auto ivs = canonicalize_t2(std::move(c.intervals));
        if (!present[c.x]) {
            domain[c.x] = std::move(ivs);
            present[c.x] = true;
        } else {
            domain[c.x] = intersect_intervals(domain[c.x], ivs);
        }
    }
    out.clear();
    empty.clear();
    for (TimePointId x = 0; x < n; ++x) {
        if (!present[x]) continue;
        if (domain[x].empty()) {
            empty.push_back(x);
        } else {
            T2Constraint t;
            t.x = x;
            t.intervals = std::move(domain[x]);
            out.push_back(std::move(t));
        }
    }
}

/// Restricted disjunctive temporal network over time-points 0..n-1.
///
/// Construction validates every id, canonicalizes t2 interval lists and
/// intersects multiple t2 constraints on the same time-point. An empty
/// intersection is recorded in empty_domains() rather than rejected, since it
/// is a (trivial) inconsistency of an otherwise well-formed network.
class Rdtn {
public:
    Rdtn() = default;

    Rdtn(std::size_t n, std::vector<T1Constraint> c1, std::vector<T2Constraint> c2 = {},
         std::vector<T3Constraint> c3 = {})
        : n_(n), c1_(std::move(c1)), c3_(std::move(c3)) {
        for (const auto& c : c1_) {
            check_id(c.x);
            check_id(c.y);
            if (c.x == c.y && c.w < 0) throw ModelError("t1 self-loop with negative weight");
        }
        for (const auto& c : c3_) {
            check_id(c.first.x);
            check_id(c.second.x);
            if (c.first.x >= c.second.x) throw ModelError("t3 disjuncts must be over distinct, ordered time-points");
        }
        merge_t2_constraints(n_, std::move(c2), c2_, empty_domains_);
    }

    std::size_t size() const noexcept { return n_; }
    const std::vector<T1Constraint>& c1() const noexcept { return c1_; }
    /// At most one per time-point, sorted by time-point.
    const std::vector<T2Constraint>& c2() const noexcept { return c2_; }
    const std::vector<T3Constraint>& c3() const noexcept { return c3_; }
    /// Time-points whose t2 constraints have an empty intersection.
    const std::vector<TimePointId>& empty_domains() const noexcept { return empty_domains_; }

    /// Total number of t2 disjuncts.
    std::size_t t2_disjunct_count() const noexcept {
        std::size_t d = 0;
        for (const auto& c : c2_) d += c.intervals.size();
        return d;
    }

    const T2Constraint* t2_on(TimePointId x) const noexcept {
        auto it = std::lower_bound(c2_.begin(), c2_.end(), x,
                                   [](const T2Constraint& c, TimePointId v) { return c.x < v; });
        return it != c2_.end() && it->x == x ? &*it : nullptr;
    }

    friend bool operator==(const Rdtn&, const Rdtn&) = default;

private:
    void check_id(TimePointId t) const {
        if (t >= n_) throw ModelError("time-point " + std::to_string(t) + " out of range");
    }

    std::size_t n_ = 0;
    std::vector<T1Constraint> c1_;
    std::vector<T2Constraint> c2_;
    std::vector<T3Constraint> c3_;
    std::vector<TimePointId> empty_domains_;
};

inline bool satisfies(const Schedule& s, const T1Constraint& c) {
    return checked::sub(s[c.y], s[c.x]) <= c.w;
}

inline bool satisfies(const Schedule& s, const T3Constraint& c) {
    return c.first.range.contains(s[c.first.x]) || c.second.range.contains(s[c.second.x]);
}

/// True iff every t1, t2 and t3 constraint of the network holds. Sign of the
/// values is not checked here; see verify_schedule for the full feasibility test.
inline bool satisfies(const Schedule& s, const Rdtn& net) {
    if (s.size() != net.size()) return false;
    if (!net.empty_domains().empty()) return false;
    for (const auto& c : net.c1())
        if (!satisfies(s, c)) return false;
    for (const auto& c : net.c2())
        if (!c.satisfied_by(s[c.x])) return false;
    for (const auto& c : net.c3())
        if (!satisfies(s, c)) return false;
    return true;
}

}  // namespace dtn
