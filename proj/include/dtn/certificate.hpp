#pragma once

#include <cstddef>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "dtn/graph.hpp"
#include "dtn/hypergraph.hpp"
#include "dtn/model.hpp"

namespace dtn {

/// Pair (S, C0) of a node set and multi-head hyperarcs such that every node of
/// S is the pivot of exactly one arc of C0, S is the union of the arcs' nodes,
/// and every cyclic node sequence through C0 has negative weight.
struct NegativeHypercycle {
    std::vector<TimePointId> nodes;
    std::vector<Hyperarc> arcs;

    friend bool operator==(const NegativeHypercycle&, const NegativeHypercycle&) = default;
};

/// Feasible schedule of a multi-head network under the lower bounds `lower`
/// plus, for each time-point X, a negative hypercycle of the network extended
/// with the origin z (index n), (z - T <= 0) for all T, (z - Y <= -l) for each
/// lower bound and (X - z <= schedule[X] - 1). It proves no X can be
/// scheduled any earlier.
struct ClfsCertificate {
    Schedule schedule;
    std::vector<Bound> lower;
    std::vector<NegativeHypercycle> family;

    friend bool operator==(const ClfsCertificate&, const ClfsCertificate&) = default;
};

/// One step of the co-NP certificate of a multi-head t2 HyTN: the certified
/// least schedule of the current auxiliary network and a t2-constrained
/// time-point it violates.
struct T2HytpStep {
    ClfsCertificate clfs;
    TimePointId witness = 0;

    friend bool operator==(const T2HytpStep&, const T2HytpStep&) = default;
};

struct T2HytpSequence {
    std::vector<T2HytpStep> steps;

    friend bool operator==(const T2HytpSequence&, const T2HytpSequence&) = default;
};

/// Inconsistency witness of the t1/t2 lifting loop: the lower bounds imposed
/// so far, and the resulting least schedule that overshoots every interval
/// of the witness time-point.
struct T2Witness {
    std::vector<Bound> lifts;
    TimePointId witness = 0;
    Schedule schedule;

    friend bool operator==(const T2Witness&, const T2Witness&) = default;
};

/// A 2-SAT variable v with implication paths v => ... => !v and !v => ... => v.
/// Literals are signed and 1-based: +k is x_{k-1}, -k its negation.
struct TwoSatCore {
    std::size_t variable = 0;
    std::vector<long> forward;
    std::vector<long> backward;

    friend bool operator==(const TwoSatCore&, const TwoSatCore&) = default;
};

/// Time-point whose t2 constraints intersect to the empty set.
struct EmptyDomain {
    TimePointId x = 0;

    friend bool operator==(const EmptyDomain&, const EmptyDomain&) = default;
};

using Certificate = std::variant<NegativeCycle, NegativeHypercycle, T2Witness, TwoSatCore, T2HytpSequence, EmptyDomain>;

inline std::string_view certificate_tag(const Certificate& c) {
    static constexpr std::string_view tags[] = {"negcycle", "neghyper", "t2witness", "twosat", "t2seq", "emptydomain"};
    return tags[c.index()];
}

/// Consistent(schedule) or Inconsistent(certificate).
class Verdict {
public:
    static Verdict consistent(Schedule s) { return Verdict(std::move(s)); }
    static Verdict inconsistent(Certificate c) { return Verdict(std::move(c)); }

    bool is_consistent() const noexcept { return std::holds_alternative<Schedule>(value_); }
    const Schedule& schedule() const { return std::get<Schedule>(value_); }
    const Certificate& certificate() const { return std::get<Certificate>(value_); }

private:
    explicit Verdict(Schedule s) : value_(std::move(s)) {}
    explicit Verdict(Certificate c) : value_(std::move(c)) {}

    std::variant<Schedule, Certificate> value_;
};

}  // namespace dtn
