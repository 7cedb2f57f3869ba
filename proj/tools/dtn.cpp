// Command-line front end: solve, oracle, verify, gen, reduce, bench.
//
// Exit codes: 0 consistent / accepted, 1 inconsistent / rejected, 2 input
// error, 3 refused (budget, or t3 hyper networks without --oracle), 4 internal.

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "dtn/dtn.hpp"

using namespace dtn;

namespace {

enum Exit { kConsistent = 0, kInconsistent = 1, kInputError = 2, kRefused = 3, kInternal = 4 };

struct Refused : Error {
    using Error::Error;
};

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

InstanceDocument load_instance(const std::string& path) {
    try {
        return parse_instance(read_file(path));
    } catch (const ParseError&) {
        std::cerr << "in " << path << '\n';
        throw;
    }
}

std::string_view rule_name(ClauseRule r) {
    switch (r) {
        case ClauseRule::dead_disjunct: return "dead";
        case ClauseRule::blocks_first: return "blocks-first";
        case ClauseRule::blocks_second: return "blocks-second";
    }
    return "?";
}

struct SolveFlags {
    bool certificate = false;
    bool clfs = false;
    bool clauses = false;
    bool oracle = false;
    std::size_t budget = 1'000'000;
    std::string format = "text";
};

int report(const Verdict& v, const SolveFlags& f) {
    if (v.is_consistent()) {
        emit_schedule(std::cout, v.schedule());
        return kConsistent;
    }
    std::cerr << "inconsistent (" << certificate_tag(v.certificate()) << ")\n";
    if (f.certificate) emit_certificate(std::cout, v.certificate());
    return kInconsistent;
}

int run_oracle(const InstanceDocument& doc, const SolveFlags& f) {
    std::cerr << "warning: exhaustive search, exponential in the number of disjunctions\n";
    OracleOptions opt;
    opt.budget = f.budget;
    const OracleResult r = doc.is_rdtn() ? oracle_rdtp(doc.rdtn(), opt) : oracle_hytn(doc.hytn(), opt);
    std::cerr << r.solves << " STN solves\n";
    if (r.consistent()) {
        emit_schedule(std::cout, *r.schedule);
        return kConsistent;
    }
    if (f.certificate) std::cerr << "the oracle produces no certificate\n";
    return kInconsistent;
}

int run_solve(const std::string& path, const SolveFlags& f) {
    const InstanceDocument doc = load_instance(path);
    if (f.oracle) return run_oracle(doc, f);
    if (doc.is_rdtn()) {
        ClauseSet cs;
        RdtpOptions opt;
        if (f.clauses) opt.clauses = &cs;
        const Verdict v = solve_rdtp(doc.rdtn(), opt);
        if (f.clauses)
            for (std::size_t i = 0; i < cs.formula.clauses.size(); ++i) {
                const auto& c = cs.formula.clauses[i];
                const auto& p = cs.provenance[i];
                std::cout << "# clause " << c.a << ' ' << c.b << ' ' << rule_name(p.rule) << ' ' << p.c << ' '
                          << (p.second ? 2 : 1) << ' ' << p.other << '\n';
            }
        return report(v, f);
    }
    const Hytn& net = doc.hytn();
    if (!net.c3().empty())
        throw Refused("t3 constraints on a hyper network make consistency NP-complete; rerun with --oracle");
    if (!f.clfs) {
        HytnOptions opt;
        opt.certify = f.certificate;
        return report(solve_hytn(net, opt), f);
    }
    // CLFS of multi-tail networks refer to head_form(net).
    Weight b = 0;
    const bool tail = net.orientation() == Orientation::multi_tail;
    const Hytn head = tail ? head_form(net, &b) : net;
    if (tail) std::cerr << "multi-tail input: CLFS refers to the head form with offset " << b << '\n';
    HytnOptions opt;
    opt.certify = true;
    ClfsCertificate clfs;
    const Verdict v = solve_t2hytp(head, opt, &clfs);
    if (!v.is_consistent()) return report(v, f);
    if (!tail) {
        emit_schedule(std::cout, v.schedule());
    } else {
        std::vector<Weight> s(net.size());
        for (TimePointId t = 0; t < net.size(); ++t) s[t] = checked::sub(b, v.schedule()[t]);
        emit_schedule(std::cout, Schedule(std::move(s)));
    }
    emit_clfs(std::cout, clfs);
    return kConsistent;
}

bool has_cert_block(std::string_view text) {
    for (const auto& line : detail::split_lines(text))
        if (!line.tokens.empty() && line.tokens[0].text == "cert") return true;
    return false;
}

int run_verify(const std::string& inst, const std::string& object) {
    const InstanceDocument doc = load_instance(inst);
    const std::string text = read_file(object);
    bool ok = false;
    std::string what;
    if (!has_cert_block(text)) {
        const Schedule s = parse_schedule(text);
        what = "schedule";
        ok = s.size() == (doc.is_rdtn() ? doc.rdtn().size() : doc.hytn().size()) &&
             (doc.is_rdtn() ? verify_schedule(doc.rdtn(), s) : verify_schedule(doc.hytn(), s));
    } else {
        const CertificateDocument cd = parse_certificate(text);
        if (const auto* clfs = std::get_if<ClfsCertificate>(&cd.value)) {
            what = "clfs";
            if (!doc.is_rdtn()) {
                const Hytn& net = doc.hytn();
                ok = verify_clfs(net.orientation() == Orientation::multi_tail ? head_form(net) : net, *clfs);
            }
        } else {
            const Certificate& c = std::get<Certificate>(cd.value);
            what = certificate_tag(c);
            ok = doc.is_rdtn() ? verify_certificate(doc.rdtn(), c) : verify_certificate(doc.hytn(), c);
        }
    }
    std::cerr << what << (ok ? " accepted\n" : " rejected\n");
    return ok ? kConsistent : kInconsistent;
}

int run_reduce(const std::string& path) {
    InstanceDocument doc = load_instance(path);
    if (doc.is_rdtn()) throw ModelError("reduce: expects a hyper network");
    if (!doc.hytn().c2().empty() || !doc.hytn().c3().empty())
        std::cerr << "note: intervals are negated; under non-negative time-points the flipped network "
                     "is not consistency-equivalent\n";
    InstanceDocument out = InstanceDocument::of(reduce_orientation(doc.hytn()));
    out.metadata = doc.metadata;
    emit_instance(std::cout, out);
    return kConsistent;
}

// ---------------------------------------------------------------- gen

struct GenFlags {
    std::uint64_t seed = 1;
    std::string kind = "rdtn";
    std::size_t n = 4, t1 = 5, t2 = 2, t3 = 0, arcs = 4, max_others = 2, max_intervals = 3;
    Weight w_min = -8, w_max = 8, bound_max = 12;
};

int run_gen_sat3(const std::string& cnf) {
    const CnfFormula f = pad_to_3(parse_dimacs_cnf(read_file(cnf)));
    InstanceDocument doc = InstanceDocument::of(gadget_from_3sat(f));
    doc.metadata.push_back({"source", "sat3"});
    doc.metadata.push_back({"vars", std::to_string(f.vars)});
    doc.metadata.push_back({"clauses", std::to_string(f.clauses.size())});
    emit_instance(std::cout, doc);
    return kConsistent;
}

InstanceDocument generate(const GenFlags& g) {
    InstanceDocument doc;
    if (g.kind == "rdtn") {
        RandomRdtnParams p;
        p.n = g.n;
        p.t1 = g.t1;
        p.t2 = g.t2;
        p.t3 = g.t3;
        p.w_min = g.w_min;
        p.w_max = g.w_max;
        p.max_intervals = g.max_intervals;
        p.bound_max = g.bound_max;
        doc = InstanceDocument::of(random_rdtn(g.seed, p));
    } else if (g.kind == "head" || g.kind == "tail") {
        RandomHytnParams p;
        p.n = g.n;
        p.arcs = g.arcs;
        p.max_others = g.max_others;
        p.w_min = g.w_min;
        p.w_max = g.w_max;
        p.orientation = g.kind == "head" ? Orientation::multi_head : Orientation::multi_tail;
        p.t2 = g.t2;
        p.max_intervals = g.max_intervals;
        p.bound_max = g.bound_max;
        doc = InstanceDocument::of(random_hytn(g.seed, p));
    } else {
        throw PreconditionError("gen random: unknown kind '" + g.kind + "'");
    }
    doc.metadata.push_back({"source", "random"});
    doc.metadata.push_back({"seed", std::to_string(g.seed)});
    return doc;
}

int run_gen_scale(const std::string& base, Weight k) {
    const InstanceDocument doc = load_instance(base);
    InstanceDocument out = doc.is_rdtn() ? InstanceDocument::of(scale_weights(doc.rdtn(), k))
                                         : InstanceDocument::of(scale_weights(doc.hytn(), k));
    out.metadata = doc.metadata;
    out.metadata.push_back({"scale", std::to_string(k)});
    emit_instance(std::cout, out);
    return kConsistent;
}

// ---------------------------------------------------------------- bench

// Suite lines: `<generator> key=value ...` with generators
//   rdtn  n t1 t2 t3 w intervals bound seeds=a..b
//   lifting n seeds=a..b  (consistent t2 workload, see lifting_rdtn)
//   head  n arcs others t2 w seeds=a..b
//   scale seed k       (scaling family of a random head network, multipliers 1, 2, 4, ..., k)
//   ladder k           (k = 1, 10, ..., k)
// Blank lines and `#` comments are ignored.
struct BenchCase {
    std::string generator;
    std::string params;
    std::uint64_t seed = 0;
    std::variant<Rdtn, Hytn> net;
};

struct BenchRow {
    std::string verdict;
    double micros = 0;
    std::size_t iterations = 0, relaxations = 0;
};

std::vector<BenchCase> expand_suite(const std::string& text) {
    std::vector<BenchCase> out;
    for (const auto& line : detail::split_lines(text)) {
        if (line.tokens.empty() || line.tokens[0].text.front() == '#') continue;
        const std::string gen(line.tokens[0].text);
        std::map<std::string, std::string> kv;
        std::string params;
        for (std::size_t i = 1; i < line.tokens.size(); ++i) {
            const std::string tok(line.tokens[i].text);
            const auto eq = tok.find('=');
            if (eq == std::string::npos) throw ParseError(line.number, line.tokens[i].column, "expected key=value");
            kv[tok.substr(0, eq)] = tok.substr(eq + 1);
            params += (params.empty() ? "" : " ") + tok;
        }
        auto num = [&](const std::string& key, long long def) -> long long {
            const auto it = kv.find(key);
            if (it == kv.end()) return def;
            try {
                std::size_t used = 0;
                const long long v = std::stoll(it->second, &used);
                if (used == it->second.size()) return v;
            } catch (const std::exception&) {
            }
            throw ParseError(line.number, 1, "bad value for " + key);
        };
        std::uint64_t lo = 1, hi = 1;
        if (const auto it = kv.find("seeds"); it != kv.end()) {
            const auto dots = it->second.find("..");
            try {
                lo = std::stoull(it->second.substr(0, dots));
                hi = dots == std::string::npos ? lo : std::stoull(it->second.substr(dots + 2));
            } catch (const std::exception&) {
                throw ParseError(line.number, 1, "bad seeds range");
            }
        }
        if (gen == "rdtn") {
            RandomRdtnParams p;
            p.n = num("n", 4);
            p.t1 = num("t1", 5);
            p.t2 = num("t2", 2);
            p.t3 = num("t3", 0);
            p.w_min = -num("w", 8);
            p.w_max = num("w", 8);
            p.max_intervals = num("intervals", 3);
            p.bound_max = num("bound", 12);
            for (std::uint64_t s = lo; s <= hi; ++s) out.push_back({gen, params, s, random_rdtn(s, p)});
        } else if (gen == "lifting") {
            const auto n = static_cast<std::size_t>(num("n", 16));
            for (std::uint64_t s = lo; s <= hi; ++s) out.push_back({gen, params, s, lifting_rdtn(s, n)});
        } else if (gen == "head") {
            RandomHytnParams p;
            p.n = num("n", 4);
            p.arcs = num("arcs", 4);
            p.max_others = num("others", 2);
            p.t2 = num("t2", 0);
            p.w_min = -num("w", 4);
            p.w_max = num("w", 4);
            for (std::uint64_t s = lo; s <= hi; ++s) out.push_back({gen, params, s, random_hytn(s, p)});
        } else if (gen == "scale") {
            const auto seed = static_cast<std::uint64_t>(num("seed", 1));
            Weight k = 1;
            for (const Hytn& net : scaling_family(seed, num("k", 16))) {
                out.push_back({gen, params + " multiplier=" + std::to_string(k), seed, net});
                k *= 2;
            }
        } else if (gen == "ladder") {
            const Weight top = num("k", 1000);
            for (Weight k = 1; k <= top; k *= 10)
                out.push_back({gen, params + " step=" + std::to_string(k), 0, ladder(k)});
        } else {
            throw ParseError(line.number, line.tokens[0].column, "unknown generator '" + gen + "'");
        }
    }
    return out;
}

BenchRow bench_one(const BenchCase& c) {
    BenchRow row;
    const auto t0 = std::chrono::steady_clock::now();
    bool consistent = false;
    if (const auto* r = std::get_if<Rdtn>(&c.net)) {
        RdtpStats st;
        RdtpOptions opt;
        opt.stats = &st;
        consistent = solve_rdtp(*r, opt).is_consistent();
        row.iterations = st.t2.iterations;
        row.relaxations = st.t2.relaxations;
    } else {
        HytnStats st;
        HytnOptions opt;
        opt.stats = &st;
        consistent = solve_hytn(std::get<Hytn>(c.net), opt).is_consistent();
        row.iterations = st.iterations;
        row.relaxations = st.relaxations;
    }
    row.micros = std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count();
    row.verdict = consistent ? "consistent" : "inconsistent";
    return row;
}

int run_bench(const std::string& suite, std::size_t jobs) {
    const auto cases = expand_suite(read_file(suite));
    std::vector<BenchRow> rows(cases.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex m;
    auto worker = [&] {
        for (std::size_t i; (i = next++) < cases.size();) {
            try {
                rows[i] = bench_one(cases[i]);
            } catch (...) {
                std::lock_guard lock(m);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t j = 1; j < std::max<std::size_t>(jobs, 1); ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    if (cases.empty()) return kConsistent;
    std::cout << "generator,params,seed,n,verdict,micros,iterations,relaxations\n";
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& c = cases[i];
        const std::size_t n = std::visit([](const auto& net) { return net.size(); }, c.net);
        std::cout << c.generator << ",\"" << c.params << "\"," << c.seed << ',' << n << ',' << rows[i].verdict << ','
                  << rows[i].micros << ',' << rows[i].iterations << ',' << rows[i].relaxations << '\n';
    }
    return kConsistent;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Restricted disjunctive and hyper temporal network solver"};
    app.require_subcommand(1);

    SolveFlags sf;
    std::string inst, object;
    auto add_solve_flags = [&](CLI::App* sub, bool oracle_flag) {
        sub->add_option("instance", inst, "instance file, - for stdin")->required();
        sub->add_flag("--certificate", sf.certificate, "emit inconsistency certificates");
        sub->add_flag("--clauses", sf.clauses, "emit the 2-SAT clause set with provenance (rdtn)");
        sub->add_option("--budget", sf.budget, "oracle budget in STN solves");
        sub->add_option("--format", sf.format, "output format")->check(CLI::IsMember({"text"}));
        if (oracle_flag) {
            sub->add_flag("--clfs", sf.clfs, "emit the CLFS certificate of consistent hyper networks");
            sub->add_flag("--oracle", sf.oracle, "use exhaustive search");
        }
    };
    auto* solve = app.add_subcommand("solve", "decide consistency and print the least schedule");
    add_solve_flags(solve, true);
    auto* oracle = app.add_subcommand("oracle", "decide consistency by exhaustive search");
    add_solve_flags(oracle, false);

    auto* verify = app.add_subcommand("verify", "check a schedule or certificate against an instance");
    verify->add_option("instance", inst)->required();
    verify->add_option("object", object, "schedule or certificate file")->required();

    auto* reduce = app.add_subcommand("reduce", "flip a hyper network between multi-head and multi-tail");
    reduce->add_option("instance", inst)->required();

    auto* gen = app.add_subcommand("gen", "generate instances");
    gen->require_subcommand(1);
    std::string cnf;
    auto* gsat = gen->add_subcommand("sat3", "3-SAT gadget from a DIMACS file");
    gsat->add_option("cnf", cnf)->required();
    GenFlags gf;
    auto* grand = gen->add_subcommand("random", "seeded random network");
    grand->add_option("--seed", gf.seed);
    grand->add_option("--kind", gf.kind)->check(CLI::IsMember({"rdtn", "head", "tail"}));
    grand->add_option("--n", gf.n);
    grand->add_option("--t1", gf.t1);
    grand->add_option("--t2", gf.t2);
    grand->add_option("--t3", gf.t3);
    grand->add_option("--arcs", gf.arcs);
    grand->add_option("--others", gf.max_others);
    grand->add_option("--intervals", gf.max_intervals);
    grand->add_option("--w-min", gf.w_min);
    grand->add_option("--w-max", gf.w_max);
    grand->add_option("--bound", gf.bound_max);
    Weight k = 1;
    auto* gscale = gen->add_subcommand("scale", "multiply every weight and bound");
    gscale->add_option("base", inst)->required();
    gscale->add_option("k", k)->required();

    auto* bench = app.add_subcommand("bench", "run a suite and print a CSV report");
    std::string suite;
    std::size_t jobs = 1;
    bench->add_option("suite", suite)->required();
    bench->add_option("--jobs", jobs, "parallel solves");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kConsistent : kInputError;
    }

    try {
        if (*solve) return run_solve(inst, sf);
        if (*oracle) return run_oracle(load_instance(inst), sf);
        if (*verify) return run_verify(inst, object);
        if (*reduce) return run_reduce(inst);
        if (*gsat) return run_gen_sat3(cnf);
        if (*grand) {
            emit_instance(std::cout, generate(gf));
            return kConsistent;
        }
        if (*gscale) return run_gen_scale(inst, k);
        if (*bench) return run_bench(suite, jobs);
    } catch (const Refused& e) {
        std::cerr << "refused: " << e.what() << '\n';
        return kRefused;
    } catch (const BudgetExceeded& e) {
        std::cerr << "refused: " << e.what() << '\n';
        return kRefused;
    } catch (const OverflowError& e) {
        std::cerr << "overflow: " << e.what() << '\n';
        return kInternal;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kInputError;
    } catch (const ModelError& e) {
        std::cerr << "invalid instance: " << e.what() << '\n';
        return kInputError;
    } catch (const PreconditionError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kInputError;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return dynamic_cast<const Error*>(&e) ? kInternal : kInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kInternal;
}
