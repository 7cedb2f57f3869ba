#include <catch_amalgamated.hpp>

#include "dtn/dtn.hpp"
#include "support.hpp"

using namespace dtn;

namespace {

constexpr Orientation mh = Orientation::multi_head;
constexpr Orientation mt = Orientation::multi_tail;

const std::vector<Interval> gapped = {{0, 1}, {2, 3}, {5, 7}, {8, 9}};

Hytn from_stn(const StnGraph& g) {
    std::vector<Hyperarc> arcs;
    for (const auto& a : g.arcs) arcs.push_back(Hyperarc::standard(mh, a.tail, a.head, a.w));
    return Hytn(g.n, mh, arcs);
}

Schedule negated(const Schedule& s) {
    std::vector<Weight> v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) v[i] = -s[i];
    return Schedule(v);
}

}  // namespace

TEST_CASE("hyperarc satisfaction") {
    const Hyperarc a(mh, 0, {{1, 1}, {2, 2}});
    CHECK(hyperarc_satisfied(a, Schedule{0, 0, 0}));
    const Hyperarc b = Hyperarc::standard(mh, 0, 1, 0);
    const Schedule s{0, 5};
    CHECK_FALSE(hyperarc_satisfied(b, s));
    const Hytn flipped = reduce_orientation(Hytn(2, mh, {b}));
    CHECK_FALSE(hyperarc_satisfied(flipped.arcs()[0], negated(s)));
    CHECK(hyperarc_satisfied(flipped.arcs()[0], negated(Schedule{5, 0})));
}

TEST_CASE("hyperarc construction") {
    CHECK_THROWS_AS(Hyperarc(mh, 0, {}), ModelError);
    CHECK_THROWS_AS(Hyperarc(mh, 0, {{0, 1}}), ModelError);
    const Hyperarc dup(mh, 0, {{2, 1}, {1, 0}, {2, 4}});
    CHECK(dup.others == std::vector<Endpoint>{{1, 0}, {2, 4}});
    CHECK(dup.cardinality() == 3);
    CHECK_THROWS_AS(Hytn(2, mh, {Hyperarc(mt, 0, {{1, 0}})}), ModelError);
}

TEST_CASE("head solver on the small examples") {
    const Hytn one(3, mh, {Hyperarc(mh, 0, {{1, 1}, {2, 2}})});
    auto v = solve_head_hytp(one);
    REQUIRE(v.is_consistent());
    CHECK(v.schedule() == Schedule{0, 0, 0});

    const Hytn cyc = from_stn(StnGraph(2, {{0, 1, -1}, {1, 0, 0}}));
    v = solve_head_hytp(cyc);
    REQUIRE_FALSE(v.is_consistent());
    CHECK(verify_negative_hypercycle(cyc, std::get<NegativeHypercycle>(v.certificate())));
}

TEST_CASE("negative hypercycle verifier") {
    const Hytn net = from_stn(StnGraph(2, {{0, 1, -1}, {1, 0, 0}}));
    const NegativeHypercycle good{{0, 1}, {net.arcs()[0], net.arcs()[1]}};
    CHECK(verify_negative_hypercycle(net, good));

    const Hytn zero = from_stn(StnGraph(2, {{0, 1, 0}, {1, 0, 0}}));
    CHECK_FALSE(verify_negative_hypercycle(zero, NegativeHypercycle{{0, 1}, {zero.arcs()[0], zero.arcs()[1]}}));
    // arc not in the network
    CHECK_FALSE(verify_negative_hypercycle(zero, good));
    // node without an owning arc
    CHECK_FALSE(verify_negative_hypercycle(net, NegativeHypercycle{{0, 1}, {net.arcs()[0]}}));
    CHECK_FALSE(verify_negative_hypercycle(net, NegativeHypercycle{}));
}

TEST_CASE("hyperarcs with a choice") {
    // 0 >= min(1 + 1, 2 + 1), 1 >= 0 + 0 only through a cycle, 2 free
    const Hytn net(3, mh, {Hyperarc(mh, 0, {{1, -1}, {2, -1}}), Hyperarc::standard(mh, 1, 0, 0)});
    const auto v = solve_head_hytp(net);
    REQUIRE(v.is_consistent());
    // the cycle through 1 is negative, so 0 escapes through 2
    CHECK(v.schedule() == Schedule{1, 1, 0});
}

TEST_CASE("head solver agrees with the oracle") {
    std::size_t inconsistent = 0;
    for (std::uint64_t seed = 1; seed <= 300; ++seed) {
        RandomHytnParams p;
        p.n = 2 + seed % 4;
        p.arcs = 3 + seed % 2;
        const Hytn net = random_hytn(seed, p);
        HytnStats st;
        const auto v = solve_head_hytp(net, nullptr, &st);
        OracleOptions o;
        o.keep_all = true;
        const auto want = oracle_hytn(net, o);
        REQUIRE(v.is_consistent() == want.consistent());
        const auto w = std::max<Weight>(net.max_abs_weight(), 1);
        CHECK(st.relaxations <= (net.size() + net.arcs().size()) * net.arc_size() * static_cast<std::size_t>(w));
        if (v.is_consistent()) {
            CHECK(verify_schedule(net, v.schedule()));
            CHECK(v.schedule() == *want.pointwise_min);
        } else {
            ++inconsistent;
            CHECK(verify_negative_hypercycle(net, std::get<NegativeHypercycle>(v.certificate())));
        }
    }
    CHECK(inconsistent > 10);
}

TEST_CASE("standard arcs reproduce the STN solver") {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const auto g = ref::random_stn(seed, 2 + seed % 5, 3 + seed % 5, 6);
        const auto a = solve_stn(g);
        const auto b = solve_head_hytp(from_stn(g));
        REQUIRE(a.is_consistent() == b.is_consistent());
        if (a.is_consistent()) CHECK(a.schedule() == b.schedule());
    }
}

TEST_CASE("warm start keeps values monotone") {
    const Hytn net(3, mh, {Hyperarc::standard(mh, 0, 1, -2)});
    const Schedule warm{1, 4, 7};
    const auto v = solve_head_hytp(net, &warm);
    REQUIRE(v.is_consistent());
    CHECK(v.schedule() == Schedule{6, 4, 7});
}

TEST_CASE("t2 blends") {
    SECTION("gapped intervals alone") {
        const auto v = solve_t2hytp(Hytn(1, mh, {}, {T2Constraint(0, gapped)}));
        REQUIRE(v.is_consistent());
        CHECK(v.schedule()[0] == 0);
    }
    SECTION("forced to 4 lands on 5") {
        const Hytn net(2, mh, {Hyperarc::standard(mh, 0, 1, -4)}, {T2Constraint(0, gapped)});
        const auto v = solve_t2hytp(net);
        REQUIRE(v.is_consistent());
        CHECK(v.schedule()[0] == *ref::scan_up(gapped, 4, 100));
    }
    SECTION("domain [0,1] against a lower bound of 2") {
        const Hytn net(2, mh, {Hyperarc(mh, 0, {{1, -2}})}, {T2Constraint(0, {{0, 1}}), T2Constraint(1, {{0, 0}, {3, 4}})});
        REQUIRE_FALSE(oracle_hytn(net).consistent());
        HytnOptions opt;
        opt.certify = true;
        const auto v = solve_t2hytp(net, opt);
        REQUIRE_FALSE(v.is_consistent());
        const auto& seq = std::get<T2HytpSequence>(v.certificate());
        CHECK(seq.steps.size() <= net.t2_disjunct_count());
        CHECK(verify_t2hytp_inconsistency(net, seq));
        T2HytpSequence cut = seq;
        cut.steps.pop_back();
        CHECK_FALSE(verify_t2hytp_inconsistency(net, cut));
    }
}

TEST_CASE("t2 blend solver agrees with the oracle") {
    std::size_t inconsistent = 0;
    for (std::uint64_t seed = 1; seed <= 300; ++seed) {
        RandomHytnParams p;
        p.n = 2 + seed % 4;
        p.arcs = 3 + seed % 2;
        p.t2 = 1 + seed % 2;
        const Hytn net = random_hytn(seed, p);
        HytnOptions opt;
        opt.certify = true;
        HytnStats st;
        opt.stats = &st;
        ClfsCertificate clfs;
        const auto v = solve_t2hytp(net, opt, &clfs);
        const auto want = oracle_hytn(net);
        REQUIRE(v.is_consistent() == want.consistent());
        CHECK(st.iterations <= net.t2_disjunct_count());
        if (v.is_consistent()) {
            CHECK(verify_schedule(net, v.schedule()));
            CHECK(verify_clfs(net, clfs));
        } else {
            ++inconsistent;
            CHECK(verify_certificate(net, v.certificate()));
        }
    }
    CHECK(inconsistent > 10);
}

TEST_CASE("certified least schedules") {
    const Hytn net(3, mh, {Hyperarc::standard(mh, 0, 1, -2), Hyperarc(mh, 1, {{2, -1}, {0, 0}})});
    HytnOptions opt;
    opt.certify = true;
    ClfsCertificate c;
    const auto v = solve_t2hytp(net, opt, &c);
    REQUIRE(v.is_consistent());
    CHECK(verify_clfs(net, c));
    for (TimePointId x = 0; x < 3; ++x) {
        ClfsCertificate up = c;
        std::vector<Weight> s(c.schedule.values().begin(), c.schedule.values().end());
        s[x] += 1;
        up.schedule = Schedule(s);
        CHECK_FALSE(verify_clfs(net, up));
    }
    ClfsCertificate bad = c;
    bad.schedule = Schedule(3, 0);
    CHECK_FALSE(verify_clfs(net, bad));
}

TEST_CASE("orientation reduction") {
    const Hytn tail(3, mt, {Hyperarc(mt, 2, {{0, 1}, {1, -1}})});
    const Hytn head = reduce_orientation(tail);
    CHECK(head.orientation() == mh);
    CHECK(head.arcs()[0] == Hyperarc(mh, 2, {{0, 1}, {1, -1}}));

    const Hytn with_t2(1, mh, {}, {T2Constraint(0, {{0, 1}, {2, 3}})});
    CHECK(reduce_orientation(with_t2).c2()[0].intervals == std::vector<Interval>{{-3, -2}, {-1, 0}});

    std::size_t pairs = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        RandomHytnParams p;
        p.orientation = seed % 2 ? mh : mt;
        p.t2 = seed % 3;
        const Hytn net = random_hytn(seed, p);
        const Hytn back = reduce_orientation(reduce_orientation(net));
        CHECK(back == net);
        Rng rng(seed);
        for (int k = 0; k < 20; ++k) {
            std::vector<Weight> s(net.size());
            for (auto& x : s) x = rng.uniform(-6, 6);
            CHECK(satisfies(Schedule(s), net) == satisfies(negated(Schedule(s)), reduce_orientation(net)));
            ++pairs;
        }
    }
    CHECK(pairs == 4000);
}

TEST_CASE("multi-tail networks go through the head form") {
    std::size_t inconsistent = 0;
    for (std::uint64_t seed = 1; seed <= 300; ++seed) {
        RandomHytnParams p;
        p.orientation = mt;
        p.n = 2 + seed % 4;
        p.arcs = 3 + seed % 2;
        p.t2 = seed % 3;
        const Hytn net = random_hytn(seed, p);
        HytnOptions opt;
        opt.certify = true;
        const auto v = solve_hytn(net, opt);
        const auto want = oracle_hytn(net);
        REQUIRE(v.is_consistent() == want.consistent());
        if (v.is_consistent()) {
            CHECK(verify_schedule(net, v.schedule()));
        } else {
            ++inconsistent;
            CHECK(verify_certificate(net, v.certificate()));
        }
    }
    CHECK(inconsistent > 10);
}

TEST_CASE("t3 blends have no solver") {
    const Hytn net(2, mh, {}, {}, {T3Constraint(Disjunct{0, {0, 0}}, Disjunct{1, {0, 0}})});
    CHECK_THROWS_AS(solve_hytn(net), PreconditionError);
}

TEST_CASE("ladder work grows with k") {
    std::size_t prev = 0;
    for (Weight k : {1, 10, 100, 1000}) {
        HytnStats st;
        const auto v = solve_head_hytp(ladder(k), nullptr, &st);
        REQUIRE(v.is_consistent());
        CHECK(v.schedule() == Schedule{k + 1, k, 0});
        CHECK(st.relaxations > prev);
        prev = st.relaxations;
    }
}
