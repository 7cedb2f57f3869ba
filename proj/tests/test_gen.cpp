#include <catch_amalgamated.hpp>

#include "dtn/dtn.hpp"

using namespace dtn;

namespace {

void check_shape(const CnfFormula& f, const Hytn& g) {
    const std::size_t n = f.vars, m = f.clauses.size();
    CHECK(g.size() == 1 + 2 * n + m);
    CHECK(g.orientation() == Orientation::multi_tail);
    CHECK(g.arcs().size() == 5 * n + 3 * m);
    CHECK(g.c3().size() == n);
    for (const auto& a : g.arcs())
        for (const auto& e : a.others) CHECK((e.w >= -1 && e.w <= 1));
    for (const auto& c : g.c3()) {
        CHECK(c.first.range == Interval{0, 0});
        CHECK(c.second.range == Interval{0, 0});
    }
}

}  // namespace

TEST_CASE("single clause gadget") {
    const CnfFormula f{1, {{1, 1, 1}}};
    const Hytn g = gadget_from_3sat(f);
    check_shape(f, g);
    const Schedule s = gadget_schedule(f, {true});
    CHECK(s == Schedule{0, 1, 0, 1});
    CHECK(verify_schedule(g, s));
    CHECK_FALSE(verify_schedule(g, gadget_schedule(f, {false})));
}

TEST_CASE("x and not x") {
    const CnfFormula f = pad_to_3(CnfFormula{1, {{1}, {-1}}});
    CHECK(f.clauses[0] == std::vector<long>{1, 1, 1});
    const Hytn g = gadget_from_3sat(f);
    CHECK(g.size() == 5);
    CHECK_FALSE(oracle_hytn(g).consistent());
}

TEST_CASE("gadget rejects bad clauses") {
    CHECK_THROWS_AS(gadget_from_3sat(CnfFormula{1, {{1, 2, 1}}}), ModelError);
    CHECK_THROWS_AS(gadget_from_3sat(CnfFormula{2, {{1, 2}}}), ModelError);
    CHECK_THROWS_AS(pad_to_3(CnfFormula{2, {{1, 2, 1, 2}}}), ModelError);
}

TEST_CASE("gadget consistency follows satisfiability") {
    std::size_t sat = 0;
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
        const std::size_t n = 1 + seed % 4, m = 1 + seed % 5;
        const CnfFormula f = random_3cnf(seed, n, m);
        const Hytn g = gadget_from_3sat(f);
        check_shape(f, g);
        const auto want = brute_force_sat(n, f.clauses);
        const auto r = oracle_hytn(g);
        REQUIRE(r.consistent() == want.has_value());
        if (!want) continue;
        ++sat;
        CHECK(verify_schedule(g, gadget_schedule(f, *want)));
        const auto decoded = gadget_assignment(f, *r.schedule);
        CHECK(brute_force_sat(n, f.clauses).has_value());
        CHECK(verify_schedule(g, *r.schedule));
        // the decoded assignment satisfies every clause
        for (const auto& c : f.clauses)
            CHECK(std::any_of(c.begin(), c.end(), [&](long l) { return decoded[std::labs(l) - 1] == (l > 0); }));
    }
    CHECK(sat > 0);
    CHECK(sat < 150);
}

TEST_CASE("generators are deterministic") {
    RandomRdtnParams p;
    p.t3 = 2;
    CHECK(random_rdtn(1, p) == random_rdtn(1, p));
    CHECK_FALSE(random_rdtn(1, p) == random_rdtn(2, p));
    RandomHytnParams q;
    q.t2 = 2;
    CHECK(random_hytn(9, q) == random_hytn(9, q));
    CHECK(random_3cnf(3, 4, 5) == random_3cnf(3, 4, 5));
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.uniform(-5, 5) == b.uniform(-5, 5));
}

TEST_CASE("rng stays in range") {
    Rng r(5);
    std::array<int, 7> hits{};
    for (int i = 0; i < 7000; ++i) {
        const auto v = r.uniform(-3, 3);
        REQUIRE(v >= -3);
        REQUIRE(v <= 3);
        ++hits[static_cast<std::size_t>(v + 3)];
    }
    for (int h : hits) CHECK(h > 800);
}

TEST_CASE("single-interval t2 constraints act as bounds") {
    RandomRdtnParams p;
    p.max_intervals = 1;
    p.t2 = 3;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const Rdtn net = random_rdtn(seed, p);
        std::vector<Arc> arcs;
        for (const auto& c : net.c1()) arcs.push_back({c.x, c.y, c.w});
        std::vector<Bound> lo, hi;
        for (const auto& c : net.c2()) {
            REQUIRE(c.intervals.size() == 1);
            lo.push_back({c.x, c.intervals[0].lo});
            hi.push_back({c.x, c.intervals[0].hi});
        }
        CHECK(solve_stn(with_origin(net.size(), arcs, lo, hi)).is_consistent() == solve_t2dtp(net).is_consistent());
    }
}

TEST_CASE("both classes are common at default parameters") {
    std::size_t consistent = 0;
    for (std::uint64_t seed = 1; seed <= 500; ++seed)
        if (oracle_rdtp(random_rdtn(seed, RandomRdtnParams{})).consistent()) ++consistent;
    CHECK(consistent >= 50);
    CHECK(consistent <= 450);
}

TEST_CASE("scaling family") {
    const auto fam = scaling_family(3, 8);
    REQUIRE(fam.size() == 4);
    CHECK(fam[0] == random_hytn(3, RandomHytnParams{}));
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto f = scaling_family(seed, 5);
        const bool base = oracle_hytn(f.front()).consistent();
        for (const auto& net : f) CHECK(solve_head_hytp(net).is_consistent() == base);
    }
    CHECK_THROWS_AS(scaling_family(1, 0), PreconditionError);
    CHECK_THROWS_AS(scale_weights(Hytn(2, Orientation::multi_head, {Hyperarc(Orientation::multi_head, 0, {{1, INT64_MAX / 2}})}), 3),
                    OverflowError);
}

TEST_CASE("lifting workload") {
    CHECK(lifting_rdtn(4, 10) == lifting_rdtn(4, 10));
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const Rdtn net = lifting_rdtn(seed, 4 + seed % 8);
        CHECK(net.c2().size() == net.size() / 2);
        T2dtpStats st;
        T2dtpOptions opt;
        opt.stats = &st;
        const auto v = solve_t2dtp(net, opt);
        REQUIRE(v.is_consistent());
        CHECK(verify_schedule(net, v.schedule()));
        CHECK(st.iterations <= net.t2_disjunct_count());
    }
    CHECK_THROWS_AS(lifting_rdtn(1, 1), PreconditionError);
}
