#pragma once

// Single-field mutations of certificates: every id moved to the next index,
// every integer moved by one, every literal negated.

#include <functional>
#include <vector>

#include "dtn/dtn.hpp"

namespace mut {

using namespace dtn;

inline TimePointId next_id(TimePointId v, std::size_t n) { return n == 0 ? v + 1 : (v + 1) % n; }

inline void schedule_mutations(const Schedule& s, const std::function<void(Schedule)>& out) {
    for (std::size_t i = 0; i < s.size(); ++i)
        for (Weight d : {-1, 1}) {
            std::vector<Weight> v(s.values().begin(), s.values().end());
            v[i] += d;
            out(Schedule(v));
        }
}

inline void hyperarc_mutations(const Hyperarc& a, std::size_t n, const std::function<void(Hyperarc)>& out) {
    auto emit = [&](TimePointId pivot, std::vector<Endpoint> ends) {
        try {
            Hyperarc b(a.orientation, pivot, std::move(ends));
            if (!(b == a)) out(std::move(b));
        } catch (const ModelError&) {
        }
    };
    emit(next_id(a.pivot, n), a.others);
    for (std::size_t i = 0; i < a.others.size(); ++i) {
        auto ends = a.others;
        ends[i].node = next_id(ends[i].node, n);
        emit(a.pivot, ends);
        for (Weight d : {-1, 1}) {
            ends = a.others;
            ends[i].w += d;
            emit(a.pivot, ends);
        }
    }
}

inline void hypercycle_mutations(const NegativeHypercycle& h, std::size_t n,
                                 const std::function<void(NegativeHypercycle)>& out) {
    for (std::size_t i = 0; i < h.nodes.size(); ++i) {
        auto m = h;
        m.nodes[i] = next_id(m.nodes[i], n);
        out(m);
    }
    for (std::size_t i = 0; i < h.arcs.size(); ++i) {
        hyperarc_mutations(h.arcs[i], n, [&](Hyperarc a) {
            auto m = h;
            m.arcs[i] = std::move(a);
            out(m);
        });
        auto m = h;
        m.arcs.erase(m.arcs.begin() + static_cast<std::ptrdiff_t>(i));
        out(m);
    }
}

inline void clfs_mutations(const ClfsCertificate& c, std::size_t n, const std::function<void(ClfsCertificate)>& out) {
    schedule_mutations(c.schedule, [&](Schedule s) {
        auto m = c;
        m.schedule = std::move(s);
        out(m);
    });
    for (std::size_t i = 0; i < c.lower.size(); ++i)
        for (Weight d : {-1, 1}) {
            auto m = c;
            m.lower[i].value += d;
            out(m);
        }
    for (std::size_t x = 0; x < c.family.size(); ++x)
        hypercycle_mutations(c.family[x], n + 1, [&](NegativeHypercycle h) {
            auto m = c;
            m.family[x] = std::move(h);
            out(m);
        });
}

/// Every single-field mutation of a certificate over n time-points.
inline std::vector<Certificate> mutations(const Certificate& cert, std::size_t n) {
    std::vector<Certificate> out;
    if (const auto* c = std::get_if<NegativeCycle>(&cert)) {
        for (std::size_t i = 0; i < c->arcs.size(); ++i) {
            auto m = *c;
            m.arcs[i].tail = next_id(m.arcs[i].tail, n);
            out.push_back(m);
            m = *c;
            m.arcs[i].head = next_id(m.arcs[i].head, n);
            out.push_back(m);
            for (Weight d : {-1, 1}) {
                m = *c;
                m.arcs[i].w += d;
                out.push_back(m);
            }
        }
    } else if (const auto* c = std::get_if<NegativeHypercycle>(&cert)) {
        hypercycle_mutations(*c, n, [&](NegativeHypercycle h) { out.push_back(std::move(h)); });
    } else if (const auto* c = std::get_if<T2Witness>(&cert)) {
        for (std::size_t i = 0; i < c->lifts.size(); ++i) {
            auto m = *c;
            m.lifts[i].x = next_id(m.lifts[i].x, n);
            out.push_back(m);
            for (Weight d : {-1, 1}) {
                m = *c;
                m.lifts[i].value += d;
                out.push_back(m);
            }
        }
        auto m = *c;
        m.witness = next_id(m.witness, n);
        out.push_back(m);
        schedule_mutations(c->schedule, [&](Schedule s) {
            auto w = *c;
            w.schedule = std::move(s);
            out.push_back(std::move(w));
        });
    } else if (const auto* c = std::get_if<TwoSatCore>(&cert)) {
        auto m = *c;
        m.variable += 1;
        out.push_back(m);
        for (bool fwd : {true, false}) {
            const auto& path = fwd ? c->forward : c->backward;
            for (std::size_t i = 0; i < path.size(); ++i) {
                m = *c;
                auto& p = fwd ? m.forward : m.backward;
                p[i] = -p[i];
                out.push_back(m);
            }
        }
    } else if (const auto* c = std::get_if<T2HytpSequence>(&cert)) {
        for (std::size_t k = 0; k < c->steps.size(); ++k) {
            auto m = *c;
            m.steps[k].witness = next_id(m.steps[k].witness, n);
            out.push_back(m);
            clfs_mutations(c->steps[k].clfs, n, [&](ClfsCertificate f) {
                auto s = *c;
                s.steps[k].clfs = std::move(f);
                out.push_back(std::move(s));
            });
        }
    } else if (const auto* c = std::get_if<EmptyDomain>(&cert)) {
        out.push_back(EmptyDomain{next_id(c->x, n)});
    }
    return out;
}

}  // namespace mut
