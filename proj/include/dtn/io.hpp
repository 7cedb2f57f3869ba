#pragma once

#include <charconv>
#include <cstddef>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "dtn/certificate.hpp"
#include "dtn/error.hpp"
#include "dtn/gen.hpp"
#include "dtn/hypergraph.hpp"
#include "dtn/model.hpp"

namespace dtn {

enum class DocumentKind { rdtn, hytn_head, hytn_tail, hytn_blend };

inline std::string_view kind_name(DocumentKind k) {
    switch (k) {
        case DocumentKind::rdtn: return "rdtn";
        case DocumentKind::hytn_head: return "hytn-head";
        case DocumentKind::hytn_tail: return "hytn-tail";
        case DocumentKind::hytn_blend: return "hytn-blend";
    }
    return "?";
}

inline DocumentKind kind_of(const Hytn& net) {
    if (!net.c2().empty() || !net.c3().empty() || !net.empty_domains().empty()) return DocumentKind::hytn_blend;
    return net.orientation() == Orientation::multi_head ? DocumentKind::hytn_head : DocumentKind::hytn_tail;
}

/// Parsed network plus free-form `#@ key value` metadata. The keys `kind` and
/// `orientation` are reserved: they are derived from the body.
struct InstanceDocument {
    DocumentKind kind = DocumentKind::rdtn;
    std::variant<Rdtn, Hytn> body;
    std::vector<std::pair<std::string, std::string>> metadata;

    bool is_rdtn() const noexcept { return std::holds_alternative<Rdtn>(body); }
    const Rdtn& rdtn() const { return std::get<Rdtn>(body); }
    const Hytn& hytn() const { return std::get<Hytn>(body); }

    static InstanceDocument of(Rdtn net) { return {DocumentKind::rdtn, std::move(net), {}}; }
    static InstanceDocument of(Hytn net) {
        const DocumentKind k = kind_of(net);
        return {k, std::move(net), {}};
    }

    friend bool operator==(const InstanceDocument&, const InstanceDocument&) = default;
};

namespace detail {

struct Token {
    std::string_view text;
    std::size_t column = 0;  // 1-based
};

struct Line {
    std::size_t number = 0;
    std::string_view raw;
    std::vector<Token> tokens;
};

inline std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i >= line.size()) break;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

inline std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0, pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = text.find('\n', pos);
        const std::string_view raw = text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
        ++number;
        out.push_back({number, raw, tokenize(raw)});
        if (end == std::string_view::npos) break;
        pos = end + 1;
    }
    return out;
}

class Cursor {
public:
    Cursor(const Line& line, std::size_t first) : line_(line), i_(first) {}

    bool done() const noexcept { return i_ >= line_.tokens.size(); }
    std::size_t remaining() const noexcept { return line_.tokens.size() - i_; }

    Weight integer(const char* what) {
        const Token& t = next(what);
        Weight v = 0;
        const auto* end = t.text.data() + t.text.size();
        auto [p, ec] = std::from_chars(t.text.data(), end, v);
        if (ec == std::errc::result_out_of_range) throw ParseError(line_.number, t.column, std::string(what) + " out of 64-bit range");
        if (ec != std::errc() || p != end)
            throw ParseError(line_.number, t.column, "expected integer " + std::string(what) + ", got '" + std::string(t.text) + "'");
        return v;
    }

    TimePointId id(std::size_t n, const char* what) {
        const std::size_t col = column();
        const Weight v = integer(what);
        if (v < 0 || static_cast<std::size_t>(v) >= n)
            throw ParseError(line_.number, col, "time-point " + std::to_string(v) + " out of range");
        return static_cast<TimePointId>(v);
    }

    std::size_t column() const { return done() ? line_.raw.size() + 1 : line_.tokens[i_].column; }

    void finish() const {
        if (!done()) throw ParseError(line_.number, line_.tokens[i_].column, "unexpected trailing token");
    }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_.number, column(), what); }

private:
    const Token& next(const char* what) {
        if (done()) throw ParseError(line_.number, line_.raw.size() + 1, std::string("missing ") + what);
        return line_.tokens[i_++];
    }

    const Line& line_;
    std::size_t i_;
};

inline Interval parse_interval(Cursor& c) {
    const std::size_t col = c.column();
    const Weight lo = c.integer("lower bound");
    const Weight hi = c.integer("upper bound");
    if (lo > hi) throw ParseError(0, col, "interval with lo > hi");
    return {lo, hi};
}

}  // namespace detail

/// Parses the line-oriented instance format; see README for the records.
inline InstanceDocument parse_instance(std::string_view text) {
    using detail::Cursor;
    std::optional<std::size_t> n;
    std::optional<std::string> declared_kind, declared_orientation;
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<T1Constraint> c1;
    std::vector<T2Constraint> c2;
    std::vector<T3Constraint> c3;
    std::vector<Hyperarc> arcs;
    std::optional<Orientation> orientation;
    std::size_t orientation_line = 0;

    for (const auto& line : detail::split_lines(text)) {
        if (line.tokens.empty()) continue;
        const std::string_view head = line.tokens[0].text;
        if (head == "#@") {
            if (line.tokens.size() < 2) throw ParseError(line.number, line.tokens[0].column, "metadata without key");
            std::string key(line.tokens[1].text);
            std::string value;
            if (line.tokens.size() > 2) {
                const std::size_t start = line.tokens[2].column - 1;
                value = std::string(line.raw.substr(start));
                while (!value.empty() && (value.back() == ' ' || value.back() == '\t' || value.back() == '\r')) value.pop_back();
            }
            if (key == "kind")
                declared_kind = value;
            else if (key == "orientation")
                declared_orientation = value;
            else
                metadata.emplace_back(std::move(key), std::move(value));
            continue;
        }
        if (head.front() == '#') continue;
        Cursor c(line, 1);
        try {
            if (head == "tp") {
                if (n) throw ParseError(line.number, line.tokens[0].column, "duplicate tp record");
                const Weight v = c.integer("time-point count");
                if (v < 1) throw ParseError(line.number, line.tokens[1].column, "time-point count must be positive");
                n = static_cast<std::size_t>(v);
                c.finish();
                continue;
            }
            if (!n) throw ParseError(line.number, line.tokens[0].column, "record before tp");
            if (head == "t1") {
                const TimePointId x = c.id(*n, "x");
                const TimePointId y = c.id(*n, "y");
                const Weight w = c.integer("weight");
                c.finish();
                if (x == y && w < 0) throw ParseError(line.number, line.tokens[0].column, "t1 self-loop with negative weight");
                c1.push_back({x, y, w});
            } else if (head == "t2") {
                const TimePointId x = c.id(*n, "x");
                std::vector<Interval> ivs;
                while (!c.done()) ivs.push_back(detail::parse_interval(c));
                if (ivs.empty()) c.fail("t2 record without intervals");
                c2.emplace_back(x, std::move(ivs));
            } else if (head == "t3") {
                const TimePointId x = c.id(*n, "x");
                const Interval a = detail::parse_interval(c);
                const TimePointId y = c.id(*n, "y");
                const Interval b = detail::parse_interval(c);
                c.finish();
                if (x == y) throw ParseError(line.number, line.tokens[0].column, "t3 over a single time-point");
                c3.emplace_back(Disjunct{x, a}, Disjunct{y, b});
            } else if (head == "mh" || head == "mt") {
                const Orientation o = head == "mh" ? Orientation::multi_head : Orientation::multi_tail;
                if (orientation && *orientation != o)
                    throw ParseError(line.number, line.tokens[0].column,
                                     "mixed mh and mt records (first at line " + std::to_string(orientation_line) + ")");
                orientation = o;
                orientation_line = line.number;
                const TimePointId pivot = c.id(*n, "pivot");
                std::vector<Endpoint> ends;
                while (!c.done()) {
                    const Weight w = c.integer("weight");
                    const TimePointId v = c.id(*n, "endpoint");
                    if (v == pivot) c.fail("hyperarc pivot listed among its endpoints");
                    ends.push_back({v, w});
                }
                if (ends.empty()) c.fail("hyperarc without endpoints");
                arcs.emplace_back(o, pivot, std::move(ends));
            } else {
                throw ParseError(line.number, line.tokens[0].column, "unknown record '" + std::string(head) + "'");
            }
        } catch (const ParseError& e) {
            if (e.line() != 0) throw;
            throw ParseError(line.number, e.column(), std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
        } catch (const ModelError& e) {
            throw ParseError(line.number, line.tokens[0].column, e.what());
        }
    }
    if (!n) throw ParseError(1, 1, "missing tp record");

    if (declared_orientation) {
        Orientation o;
        if (*declared_orientation == "head")
            o = Orientation::multi_head;
        else if (*declared_orientation == "tail")
            o = Orientation::multi_tail;
        else
            throw ParseError(0, 0, "unknown orientation '" + *declared_orientation + "'");
        if (orientation && *orientation != o) throw ParseError(orientation_line, 1, "record contradicts declared orientation");
        orientation = o;
    }
    bool hyper = orientation.has_value();
    if (declared_kind) {
        const std::string& k = *declared_kind;
        if (k == "rdtn") {
            if (hyper) throw ParseError(orientation_line, 1, "hyperarc record in an rdtn document");
        } else if (k == "hytn-head" || k == "hytn-tail" || k == "hytn-blend") {
            hyper = true;
            if (k != "hytn-blend" && (!c2.empty() || !c3.empty()))
                throw ParseError(0, 0, "t2/t3 records in a " + k + " document");
            const Orientation want = k == "hytn-tail" ? Orientation::multi_tail : Orientation::multi_head;
            if (k != "hytn-blend") {
                if (orientation && *orientation != want) throw ParseError(orientation_line, 1, "record contradicts kind " + k);
                orientation = want;
            }
        } else {
            throw ParseError(0, 0, "unknown kind '" + k + "'");
        }
    }

    InstanceDocument doc;
    doc.metadata = std::move(metadata);
    if (!hyper) {
        doc.body = Rdtn(*n, std::move(c1), std::move(c2), std::move(c3));
        doc.kind = DocumentKind::rdtn;
        return doc;
    }
    const Orientation o = orientation.value_or(Orientation::multi_head);
    // t1 records in a hyper document become standard arcs.
    for (const auto& c : c1) {
        if (c.x == c.y) continue;
        arcs.push_back(Hyperarc::standard(o, c.x, c.y, c.w));
    }
    Hytn net(*n, o, std::move(arcs), std::move(c2), std::move(c3));
    doc.kind = kind_of(net);
    doc.body = std::move(net);
    return doc;
}

inline InstanceDocument parse_instance(std::istream& in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_instance(ss.str());
}

namespace detail {

inline void emit_t2(std::ostream& os, const std::vector<T2Constraint>& c2, const std::vector<TimePointId>& empty) {
    for (const auto& c : c2) {
        os << "t2 " << c.x;
        for (const auto& iv : c.intervals) os << ' ' << iv.lo << ' ' << iv.hi;
        os << '\n';
    }
    for (TimePointId x : empty) os << "t2 " << x << " 0 0\nt2 " << x << " 1 1\n";
}

inline void emit_t3(std::ostream& os, const std::vector<T3Constraint>& c3) {
    for (const auto& c : c3)
        os << "t3 " << c.first.x << ' ' << c.first.range.lo << ' ' << c.first.range.hi << ' ' << c.second.x << ' '
           << c.second.range.lo << ' ' << c.second.range.hi << '\n';
}

inline void emit_arc(std::ostream& os, const Hyperarc& a, const char* tag) {
    os << tag << ' ' << a.pivot;
    for (const auto& e : a.others) os << ' ' << e.w << ' ' << e.node;
    os << '\n';
}

}  // namespace detail

inline void emit_instance(std::ostream& os, const InstanceDocument& doc) {
    os << "#@ kind " << kind_name(doc.kind) << '\n';
    if (!doc.is_rdtn())
        os << "#@ orientation " << (doc.hytn().orientation() == Orientation::multi_head ? "head" : "tail") << '\n';
    for (const auto& [k, v] : doc.metadata) os << "#@ " << k << (v.empty() ? "" : " ") << v << '\n';
    if (doc.is_rdtn()) {
        const Rdtn& net = doc.rdtn();
        os << "tp " << net.size() << '\n';
        for (const auto& c : net.c1()) os << "t1 " << c.x << ' ' << c.y << ' ' << c.w << '\n';
        detail::emit_t2(os, net.c2(), net.empty_domains());
        detail::emit_t3(os, net.c3());
    } else {
        const Hytn& net = doc.hytn();
        os << "tp " << net.size() << '\n';
        const char* tag = net.orientation() == Orientation::multi_head ? "mh" : "mt";
        for (const auto& a : net.arcs()) detail::emit_arc(os, a, tag);
        detail::emit_t2(os, net.c2(), net.empty_domains());
        detail::emit_t3(os, net.c3());
    }
}

inline std::string emit_instance(const InstanceDocument& doc) {
    std::ostringstream os;
    emit_instance(os, doc);
    return os.str();
}

// ---------------------------------------------------------------- schedules

inline void emit_schedule(std::ostream& os, const Schedule& s) {
    for (TimePointId t = 0; t < s.size(); ++t) os << "s " << t << ' ' << s[t] << '\n';
}

namespace detail {

/// Collects `s idx value` records into a dense schedule.
class ScheduleBuilder {
public:
    void add(const Line& line) {
        Cursor c(line, 1);
        const std::size_t col = c.column();
        const Weight idx = c.integer("index");
        const Weight v = c.integer("value");
        c.finish();
        if (idx < 0) throw ParseError(line.number, col, "negative schedule index");
        const auto i = static_cast<std::size_t>(idx);
        if (i >= values_.size()) {
            values_.resize(i + 1, 0);
            seen_.resize(i + 1, 0);
        }
        if (seen_[i]) throw ParseError(line.number, col, "duplicate schedule entry for " + std::to_string(i));
        seen_[i] = 1;
        values_[i] = v;
        last_line_ = line.number;
    }

    bool empty() const noexcept { return values_.empty(); }

    Schedule build() const {
        for (std::size_t i = 0; i < seen_.size(); ++i)
            if (!seen_[i]) throw ParseError(last_line_, 1, "schedule misses time-point " + std::to_string(i));
        return Schedule(values_);
    }

private:
    std::vector<Weight> values_;
    std::vector<char> seen_;
    std::size_t last_line_ = 0;
};

}  // namespace detail

/// Reads `s idx value` lines; other records (comments, blank lines) are
/// skipped, certificate blocks are rejected.
inline Schedule parse_schedule(std::string_view text) {
    detail::ScheduleBuilder b;
    for (const auto& line : detail::split_lines(text)) {
        if (line.tokens.empty() || line.tokens[0].text.front() == '#') continue;
        if (line.tokens[0].text != "s") throw ParseError(line.number, line.tokens[0].column, "expected an s record");
        b.add(line);
    }
    return b.build();
}

// ------------------------------------------------------------- certificates

namespace detail {

inline void emit_hyper_arcs(std::ostream& os, const NegativeHypercycle& h) {
    for (const auto& a : h.arcs) detail::emit_arc(os, a, "h");
}

inline void emit_clfs_body(std::ostream& os, const ClfsCertificate& c) {
    emit_schedule(os, c.schedule);
    for (const auto& b : c.lower) os << "lb " << b.x << ' ' << b.value << '\n';
    for (std::size_t x = 0; x < c.family.size(); ++x) {
        os << "for " << x << '\n';
        emit_hyper_arcs(os, c.family[x]);
    }
}

}  // namespace detail

inline void emit_certificate(std::ostream& os, const Certificate& cert) {
    os << "cert " << certificate_tag(cert);
    if (const auto* c = std::get_if<EmptyDomain>(&cert)) {
        os << ' ' << c->x << "\nend\n";
        return;
    }
    os << '\n';
    std::visit(
        [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, NegativeCycle>) {
                for (const auto& a : c.arcs) os << "a " << a.tail << ' ' << a.head << ' ' << a.w << '\n';
            } else if constexpr (std::is_same_v<T, NegativeHypercycle>) {
                detail::emit_hyper_arcs(os, c);
            } else if constexpr (std::is_same_v<T, T2Witness>) {
                for (const auto& b : c.lifts) os << "lift " << b.x << ' ' << b.value << '\n';
                os << "witness " << c.witness << '\n';
                emit_schedule(os, c.schedule);
            } else if constexpr (std::is_same_v<T, TwoSatCore>) {
                os << "var " << c.variable << "\nfwd";
                for (long l : c.forward) os << ' ' << l;
                os << "\nbwd";
                for (long l : c.backward) os << ' ' << l;
                os << '\n';
            } else if constexpr (std::is_same_v<T, T2HytpSequence>) {
                for (const auto& step : c.steps) {
                    os << "step " << step.witness << '\n';
                    detail::emit_clfs_body(os, step.clfs);
                }
            }
        },
        cert);
    os << "end\n";
}

inline void emit_clfs(std::ostream& os, const ClfsCertificate& c) {
    os << "cert clfs\n";
    detail::emit_clfs_body(os, c);
    os << "end\n";
}

/// One certificate block read back from text.
struct CertificateDocument {
    std::variant<Certificate, ClfsCertificate> value;
};

namespace detail {

inline Hyperarc parse_h(const Line& line, Cursor& c) {
    const TimePointId pivot = c.id(static_cast<std::size_t>(-1), "pivot");
    std::vector<Endpoint> ends;
    while (!c.done()) {
        const Weight w = c.integer("weight");
        ends.push_back({c.id(static_cast<std::size_t>(-1), "endpoint"), w});
    }
    if (ends.empty()) throw ParseError(line.number, 1, "hyperarc without endpoints");
    try {
        return Hyperarc(Orientation::multi_head, pivot, std::move(ends));
    } catch (const ModelError& e) {
        throw ParseError(line.number, 1, e.what());
    }
}

inline NegativeHypercycle make_hypercycle(std::vector<Hyperarc> arcs) {
    std::sort(arcs.begin(), arcs.end(), [](const Hyperarc& a, const Hyperarc& b) { return a.pivot < b.pivot; });
    NegativeHypercycle h;
    for (auto& a : arcs) {
        h.nodes.push_back(a.pivot);
        h.arcs.push_back(std::move(a));
    }
    return h;
}

/// Accumulates the records of a clfs body (s, lb, for, h).
struct ClfsBuilder {
    ScheduleBuilder schedule;
    std::vector<Bound> lower;
    std::vector<std::vector<Hyperarc>> family;
    bool any = false;

    bool accept(const Line& line) {
        const std::string_view k = line.tokens[0].text;
        Cursor c(line, 1);
        if (k == "s") {
            schedule.add(line);
        } else if (k == "lb") {
            const TimePointId x = c.id(static_cast<std::size_t>(-1), "time-point");
            lower.push_back({x, c.integer("bound")});
            c.finish();
        } else if (k == "for") {
            const std::size_t col = c.column();
            const TimePointId x = c.id(static_cast<std::size_t>(-1), "time-point");
            c.finish();
            if (x != family.size()) throw ParseError(line.number, col, "for records must be consecutive from 0");
            family.emplace_back();
        } else if (k == "h") {
            if (family.empty()) throw ParseError(line.number, 1, "h record before any for record");
            family.back().push_back(parse_h(line, c));
        } else {
            return false;
        }
        any = true;
        return true;
    }

    ClfsCertificate build() const {
        ClfsCertificate out;
        out.schedule = schedule.empty() ? Schedule() : schedule.build();
        out.lower = lower;
        for (const auto& arcs : family) out.family.push_back(make_hypercycle(arcs));
        return out;
    }
};

}  // namespace detail

/// Parses the first `cert ...` block of the text.
inline CertificateDocument parse_certificate(std::string_view text) {
    using detail::Cursor;
    const auto lines = detail::split_lines(text);
    std::size_t i = 0;
    while (i < lines.size() && (lines[i].tokens.empty() || lines[i].tokens[0].text.front() == '#' ||
                                lines[i].tokens[0].text == "s"))
        ++i;
    if (i == lines.size()) throw ParseError(lines.empty() ? 1 : lines.back().number, 1, "no cert block");
    const auto& open = lines[i];
    if (open.tokens[0].text != "cert" || open.tokens.size() < 2)
        throw ParseError(open.number, open.tokens[0].column, "expected 'cert <tag>'");
    const std::string tag(open.tokens[1].text);
    ++i;

    auto body = [&](auto&& on_line) {
        for (; i < lines.size(); ++i) {
            const auto& line = lines[i];
            if (line.tokens.empty() || line.tokens[0].text.front() == '#') continue;
            if (line.tokens[0].text == "end") return;
            on_line(line);
        }
        throw ParseError(lines.back().number, 1, "cert block without end");
    };
    auto unknown = [](const detail::Line& line) {
        throw ParseError(line.number, line.tokens[0].column, "unexpected record '" + std::string(line.tokens[0].text) + "'");
    };

    CertificateDocument doc;
    if (tag == "emptydomain") {
        Cursor c(open, 2);
        const TimePointId x = c.id(static_cast<std::size_t>(-1), "time-point");
        c.finish();
        body(unknown);
        doc.value = Certificate(EmptyDomain{x});
    } else if (tag == "negcycle") {
        NegativeCycle cyc;
        body([&](const detail::Line& line) {
            if (line.tokens[0].text != "a") unknown(line);
            Cursor c(line, 1);
            const TimePointId t = c.id(static_cast<std::size_t>(-1), "tail");
            const TimePointId h = c.id(static_cast<std::size_t>(-1), "head");
            cyc.arcs.push_back({t, h, c.integer("weight")});
            c.finish();
        });
        doc.value = Certificate(std::move(cyc));
    } else if (tag == "neghyper") {
        std::vector<Hyperarc> arcs;
        body([&](const detail::Line& line) {
            if (line.tokens[0].text != "h") unknown(line);
            Cursor c(line, 1);
            arcs.push_back(detail::parse_h(line, c));
        });
        doc.value = Certificate(detail::make_hypercycle(std::move(arcs)));
    } else if (tag == "t2witness") {
        T2Witness w;
        detail::ScheduleBuilder s;
        bool has_witness = false;
        body([&](const detail::Line& line) {
            const std::string_view k = line.tokens[0].text;
            Cursor c(line, 1);
            if (k == "lift") {
                const TimePointId x = c.id(static_cast<std::size_t>(-1), "time-point");
                w.lifts.push_back({x, c.integer("bound")});
                c.finish();
            } else if (k == "witness") {
                w.witness = c.id(static_cast<std::size_t>(-1), "time-point");
                c.finish();
                has_witness = true;
            } else if (k == "s") {
                s.add(line);
            } else {
                unknown(line);
            }
        });
        if (!has_witness) throw ParseError(open.number, 1, "t2witness without witness record");
        w.schedule = s.build();
        doc.value = Certificate(std::move(w));
    } else if (tag == "twosat") {
        TwoSatCore core;
        body([&](const detail::Line& line) {
            const std::string_view k = line.tokens[0].text;
            Cursor c(line, 1);
            if (k == "var") {
                core.variable = c.id(static_cast<std::size_t>(-1), "variable");
                c.finish();
            } else if (k == "fwd" || k == "bwd") {
                auto& path = k == "fwd" ? core.forward : core.backward;
                while (!c.done()) path.push_back(static_cast<long>(c.integer("literal")));
            } else {
                unknown(line);
            }
        });
        doc.value = Certificate(std::move(core));
    } else if (tag == "clfs") {
        detail::ClfsBuilder b;
        body([&](const detail::Line& line) {
            if (!b.accept(line)) unknown(line);
        });
        doc.value = b.build();
    } else if (tag == "t2seq") {
        T2HytpSequence seq;
        std::vector<TimePointId> witnesses;
        std::vector<detail::ClfsBuilder> builders;
        body([&](const detail::Line& line) {
            if (line.tokens[0].text == "step") {
                Cursor c(line, 1);
                witnesses.push_back(c.id(static_cast<std::size_t>(-1), "time-point"));
                c.finish();
                builders.emplace_back();
                return;
            }
            if (builders.empty() || !builders.back().accept(line)) unknown(line);
        });
        for (std::size_t k = 0; k < builders.size(); ++k) seq.steps.push_back({builders[k].build(), witnesses[k]});
        doc.value = Certificate(std::move(seq));
    } else {
        throw ParseError(open.number, open.tokens[1].column, "unknown certificate tag '" + tag + "'");
    }
    return doc;
}

// -------------------------------------------------------------------- DIMACS

/// Standard DIMACS CNF. Clauses end with 0 and may span lines; literals must
/// not exceed the declared variable count.
inline CnfFormula parse_dimacs_cnf(std::string_view text) {
    using detail::Cursor;
    std::optional<std::size_t> vars, declared_clauses;
    CnfFormula f;
    std::vector<long> current;
    std::size_t last_line = 1;
    for (const auto& line : detail::split_lines(text)) {
        if (line.tokens.empty()) continue;
        last_line = line.number;
        const std::string_view head = line.tokens[0].text;
        if (head == "c" || head.front() == 'c') continue;
        if (head == "%") break;  // SATLIB trailer
        if (head == "p") {
            if (vars) throw ParseError(line.number, 1, "duplicate problem line");
            if (line.tokens.size() != 4 || line.tokens[1].text != "cnf")
                throw ParseError(line.number, 1, "malformed header, expected 'p cnf <vars> <clauses>'");
            Cursor c(line, 2);
            const Weight v = c.integer("variable count");
            const Weight k = c.integer("clause count");
            if (v < 0 || k < 0) throw ParseError(line.number, line.tokens[2].column, "negative count in header");
            vars = static_cast<std::size_t>(v);
            declared_clauses = static_cast<std::size_t>(k);
            f.vars = *vars;
            continue;
        }
        if (!vars) throw ParseError(line.number, 1, "clause before the problem line");
        Cursor c(line, 0);
        while (!c.done()) {
            const std::size_t col = c.column();
            const Weight lit = c.integer("literal");
            if (lit == 0) {
                f.clauses.push_back(std::move(current));
                current.clear();
                continue;
            }
            const Weight mag = lit < 0 ? -lit : lit;
            if (static_cast<std::size_t>(mag) > *vars)
                throw ParseError(line.number, col,
                                 "variable " + std::to_string(mag) + " > declared " + std::to_string(*vars));
            current.push_back(static_cast<long>(lit));
        }
    }
    if (!vars) throw ParseError(last_line, 1, "missing problem line");
    if (!current.empty()) f.clauses.push_back(std::move(current));
    if (f.clauses.size() != *declared_clauses)
        throw ParseError(last_line, 1,
                         "header declares " + std::to_string(*declared_clauses) + " clauses, found " +
                             std::to_string(f.clauses.size()));
    return f;
}

inline void emit_dimacs_cnf(std::ostream& os, const CnfFormula& f) {
    os << "p cnf " << f.vars << ' ' << f.clauses.size() << '\n';
    for (const auto& c : f.clauses) {
        for (long l : c) os << l << ' ';
        os << "0\n";
    }
}

}  // namespace dtn
