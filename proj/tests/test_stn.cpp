#include <catch_amalgamated.hpp>

#include "dtn/dtn.hpp"
#include "support.hpp"

using namespace dtn;

TEST_CASE("least schedule on the small examples") {
    // X = 0, Y = 1
    auto v = solve_stn(StnGraph(2, {{0, 1, 3}}));
    REQUIRE(v.is_consistent());
    CHECK(v.schedule() == Schedule{0, 0});

    v = solve_stn(StnGraph(2, {{0, 1, -3}}));
    REQUIRE(v.is_consistent());
    CHECK(v.schedule() == Schedule{3, 0});
}

TEST_CASE("negative cycles are reported and verified") {
    const StnGraph two(2, {{0, 1, -1}, {1, 0, 0}});
    auto v = solve_stn(two);
    REQUIRE_FALSE(v.is_consistent());
    const auto& cyc = std::get<NegativeCycle>(v.certificate());
    CHECK(cyc.arcs.size() == 2);
    CHECK(verify_negative_cycle(two, cyc));

    const StnGraph three(3, {{0, 1, -2}, {1, 2, 1}, {2, 0, 0}});
    const auto c3 = extract_negative_cycle(three);
    CHECK(c3.arcs.size() == 3);
    CHECK(verify_negative_cycle(three, c3));

    CHECK_THROWS_AS(extract_negative_cycle(StnGraph(2, {{0, 1, 3}})), PreconditionError);
}

TEST_CASE("warm start") {
    auto v = solve_stn_warm(StnGraph(2, {{0, 1, -3}}), Schedule{0, 0});
    CHECK(v.schedule() == Schedule{3, 0});
    // Y - X <= 3 already holds at the start.
    v = solve_stn_warm(StnGraph(2, {{0, 1, 3}}), Schedule{5, 1});
    CHECK(v.schedule() == Schedule{5, 1});
    // X - Y <= 3 lifts Y to 2.
    v = solve_stn_warm(StnGraph(2, {{1, 0, 3}}), Schedule{5, 1});
    CHECK(v.schedule() == Schedule{5, 2});
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto g = ref::random_stn(seed, 5, 7, 8);
        const auto cold = solve_stn(g);
        const auto warm = solve_stn_warm(g, Schedule(5, 0));
        CHECK(cold.is_consistent() == warm.is_consistent());
        if (cold.is_consistent()) CHECK(cold.schedule() == warm.schedule());
    }
}

TEST_CASE("warm start matches the least schedule above start") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto g = ref::random_stn(seed, 4, 5, 6);
        Rng rng(seed * 31);
        std::vector<Weight> start(4);
        for (auto& x : start) x = rng.uniform(0, 6);
        const auto v = solve_stn_warm(g, Schedule(start));
        // Reference: lower bounds s >= start through an origin node.
        std::vector<Arc> arcs = g.arcs;
        for (std::size_t t = 0; t < 4; ++t) arcs.push_back({t, 4, -start[t]});
        const auto want = ref::least_schedule(5, arcs);
        REQUIRE(v.is_consistent() == want.has_value());
        if (!want) continue;
        for (std::size_t t = 0; t < 4; ++t) CHECK(v.schedule()[t] == (*want)[t]);
    }
}

TEST_CASE("verdict matches the reference on random graphs") {
    for (std::uint64_t seed = 1; seed <= 300; ++seed) {
        const std::size_t n = 2 + seed % 5;
        const auto g = ref::random_stn(seed, n, n + seed % 4, 8);
        StnStats st;
        const auto v = solve_stn(g, &st);
        const auto want = ref::least_schedule(n, g.arcs);
        REQUIRE(v.is_consistent() == want.has_value());
        if (want) {
            CHECK(v.schedule().values().size() == n);
            CHECK(std::vector<Weight>(v.schedule().values().begin(), v.schedule().values().end()) == *want);
            CHECK(st.relaxations <= n * std::max<std::size_t>(g.arcs.size(), 1));
        } else {
            CHECK(verify_negative_cycle(g, std::get<NegativeCycle>(v.certificate())));
        }
    }
}

TEST_CASE("reduced costs") {
    const StnGraph g(2, {{0, 1, 3}});
    CHECK(reduced_costs(g, Schedule{0, 0}).arcs[0].w == 3);
    const StnGraph h(2, {{0, 1, -3}});
    CHECK(reduced_costs(h, Schedule{3, 0}).arcs[0].w == 0);
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const auto r = ref::random_stn(seed, 5, 8, 8);
        const auto v = solve_stn(r);
        if (!v.is_consistent()) continue;
        Rng rng(seed);
        const auto base = v.schedule().values();
        const auto phi = ref::random_feasible(rng, r, std::vector<Weight>(base.begin(), base.end()));
        for (const auto& a : reduced_costs(r, Schedule(phi)).arcs) CHECK(a.w >= 0);
    }
}

TEST_CASE("dijkstra to a target") {
    const StnGraph chain(3, {{0, 1, 1}, {1, 2, 2}});
    const auto row = dijkstra_to_target(chain, 2);
    CHECK(row.dist[2] == Distance(0));
    CHECK(row.dist[0] == Distance(3));
    CHECK(dijkstra_to_target(chain, 0).dist[2].infinite());
    CHECK_THROWS_AS(dijkstra_to_target(StnGraph(2, {{0, 1, -1}}), 1), PreconditionError);

    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        Rng rng(seed);
        StnGraph g(6, {});
        for (int i = 0; i < 10; ++i) {
            const auto x = rng.index(6), y = rng.index(6);
            if (x != y) g.add(x, y, rng.uniform(0, 9));
        }
        const auto d = ref::floyd(6, g.arcs);
        for (std::size_t t = 0; t < 6; ++t) {
            const auto r = dijkstra_to_target(g, t);
            for (std::size_t v = 0; v < 6; ++v) {
                if ((*d)[v][t] == ref::inf)
                    CHECK(r.dist[v].infinite());
                else
                    CHECK(r.dist[v] == Distance((*d)[v][t]));
            }
        }
    }
}

TEST_CASE("relaxation overflow is an error") {
    const StnGraph g(2, {{0, 1, INT64_MIN}});
    CHECK_THROWS_AS(solve_stn_warm(g, Schedule{0, 1}), OverflowError);
}

TEST_CASE("reduced distances shift by the potential difference") {
    int checked_pairs = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto g = ref::random_stn(seed, 5, 7, 8);
        const auto v = solve_stn(g);
        if (!v.is_consistent()) continue;
        Rng rng(seed + 1000);
        const std::vector<Weight> least(v.schedule().values().begin(), v.schedule().values().end());
        const auto p = ref::random_feasible(rng, g, least);
        const auto q = ref::random_feasible(rng, g, least);
        const auto gp = reduced_costs(g, Schedule(p));
        const auto gq = reduced_costs(g, Schedule(q));
        for (std::size_t x = 0; x < 5; ++x) {
            const auto rp = dijkstra_to_target(gp, x);
            const auto rq = dijkstra_to_target(gq, x);
            for (std::size_t t = 0; t < 5; ++t) {
                REQUIRE(rp.dist[t].infinite() == rq.dist[t].infinite());
                if (rp.dist[t].infinite()) continue;
                CHECK(rq.dist[t].value() - rp.dist[t].value() == (q[t] - p[t]) - (q[x] - p[x]));
                ++checked_pairs;
            }
        }
    }
    CHECK(checked_pairs > 0);
}
