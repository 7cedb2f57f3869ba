#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "dtn/model.hpp"

namespace dtn {

enum class Orientation { multi_head, multi_tail };

inline Orientation opposite(Orientation o) noexcept {
    return o == Orientation::multi_head ? Orientation::multi_tail : Orientation::multi_head;
}

/// A weighted endpoint of a hyperarc: a head (multi-head) or a tail (multi-tail).
struct Endpoint {
    TimePointId node = 0;
    Weight w = 0;

    friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

/// Multi-head arc (pivot, {others}): s(pivot) >= min_v s(v) - w(v).
/// Multi-tail arc ({others}, pivot): s(pivot) <= max_v s(v) + w(v).
///
/// Endpoints are kept sorted by node; a node listed twice keeps its largest
/// weight, which is the disjunct that subsumes the other.
struct Hyperarc {
    Orientation orientation = Orientation::multi_head;
    TimePointId pivot = 0;
    std::vector<Endpoint> others;

    Hyperarc() = default;
    Hyperarc(Orientation o, TimePointId p, std::vector<Endpoint> ends) : orientation(o), pivot(p), others(std::move(ends)) {
        if (others.empty()) throw ModelError("hyperarc without heads/tails");
        std::sort(others.begin(), others.end(), [](const Endpoint& a, const Endpoint& b) {
            return a.node != b.node ? a.node < b.node : a.w > b.w;
        });
        others.erase(std::unique(others.begin(), others.end(),
                                 [](const Endpoint& a, const Endpoint& b) { return a.node == b.node; }),
                     others.end());
        for (const auto& e : others)
            if (e.node == pivot) throw ModelError("hyperarc pivot listed among its own endpoints");
    }

    static Hyperarc standard(Orientation o, TimePointId tail, TimePointId head, Weight w) {
        return o == Orientation::multi_head ? Hyperarc(o, tail, {{head, w}}) : Hyperarc(o, head, {{tail, w}});
    }

    std::size_t cardinality() const noexcept { return others.size() + 1; }

    friend bool operator==(const Hyperarc&, const Hyperarc&) = default;
};

inline bool hyperarc_satisfied(const Hyperarc& a, const Schedule& s) {
    const Weight p = s[a.pivot];
    for (const auto& e : a.others) {
        if (a.orientation == Orientation::multi_head) {
            if (checked::sub(s[e.node], p) <= e.w) return true;
        } else {
            if (checked::sub(p, s[e.node]) <= e.w) return true;
        }
    }
    return false;
}

/// Hyper temporal network of a single orientation, optionally blended with
/// t2 and t3 constraints.
class Hytn {
public:
    Hytn() = default;

    Hytn(std::size_t n, Orientation o, std::vector<Hyperarc> arcs, std::vector<T2Constraint> c2 = {},
         std::vector<T3Constraint> c3 = {})
        : n_(n), orientation_(o), arcs_(std::move(arcs)), c3_(std::move(c3)) {
        for (const auto& a : arcs_) {
            if (a.orientation != o) throw ModelError("hyperarc orientation differs from the network's");
            check_id(a.pivot);
            for (const auto& e : a.others) check_id(e.node);
        }
        for (const auto& c : c3_) {
            check_id(c.first.x);
            check_id(c.second.x);
            if (c.first.x >= c.second.x) throw ModelError("t3 disjuncts must be over distinct, ordered time-points");
        }
        merge_t2_constraints(n_, std::move(c2), c2_, empty_domains_);
    }

    std::size_t size() const noexcept { return n_; }
    Orientation orientation() const noexcept { return orientation_; }
    const std::vector<Hyperarc>& arcs() const noexcept { return arcs_; }
    const std::vector<T2Constraint>& c2() const noexcept { return c2_; }
    const std::vector<T3Constraint>& c3() const noexcept { return c3_; }
    const std::vector<TimePointId>& empty_domains() const noexcept { return empty_domains_; }

    /// Sum of hyperarc cardinalities.
    std::size_t arc_size() const noexcept {
        std::size_t m = 0;
        for (const auto& a : arcs_) m += a.cardinality();
        return m;
    }

    std::size_t t2_disjunct_count() const noexcept {
        std::size_t d = 0;
        for (const auto& c : c2_) d += c.intervals.size();
        return d;
    }

    /// Largest absolute hyperarc weight.
    Weight max_abs_weight() const {
        Weight m = 0;
        for (const auto& a : arcs_)
            for (const auto& e : a.others) m = std::max(m, checked::abs(e.w));
        return m;
    }

    /// Sum of absolute hyperarc weights.
    Weight total_abs_weight() const {
        Weight m = 0;
        for (const auto& a : arcs_)
            for (const auto& e : a.others) m = checked::add(m, checked::abs(e.w));
        return m;
    }

    friend bool operator==(const Hytn&, const Hytn&) = default;

private:
    void check_id(TimePointId t) const {
        if (t >= n_) throw ModelError("time-point " + std::to_string(t) + " out of range");
    }

    std::size_t n_ = 0;
    Orientation orientation_ = Orientation::multi_head;
    std::vector<Hyperarc> arcs_;
    std::vector<T2Constraint> c2_;
    std::vector<T3Constraint> c3_;
    std::vector<TimePointId> empty_domains_;
};

/// Every hyperarc, t2 and t3 constraint holds (sign of values unchecked).
inline bool satisfies(const Schedule& s, const Hytn& net) {
    if (s.size() != net.size()) return false;
    if (!net.empty_domains().empty()) return false;
    for (const auto& a : net.arcs())
        if (!hyperarc_satisfied(a, s)) return false;
    for (const auto& c : net.c2())
        if (!c.satisfied_by(s[c.x])) return false;
    for (const auto& c : net.c3())
        if (!satisfies(s, c)) return false;
    return true;
}

}  // namespace dtn
