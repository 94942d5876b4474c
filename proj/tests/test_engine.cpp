#include "doctest.h"

#include "censorsim/engine.hpp"
#include "censorsim/stats.hpp"
#include "properties.hpp"

using namespace censorsim;

TEST_CASE("initialization") {
    SUBCASE("radical_fraction 0: all mainstream, authority assigned") {
        SimParams p;
        p.radical_fraction = 0.0;
        p.mode = CensorshipMode::Centralized;
        const auto s = init_simulation(p);
        for (const auto& a : s.agents) CHECK(a.belief == Belief::Mainstream);
        REQUIRE(s.authority.has_value());
        CHECK(s.agents[*s.authority].is_authority);
    }
    SUBCASE("radical_fraction 1 with an authority mode fails") {
        SimParams p;
        p.radical_fraction = 1.0;
        p.mode = CensorshipMode::Centralized;
        CHECK_THROWS_AS(init_simulation(p), InitializationError);
        p.mode = CensorshipMode::Mixed;
        CHECK_THROWS_AS(init_simulation(p), InitializationError);
        p.mode = CensorshipMode::Decentralized;
        CHECK_NOTHROW(init_simulation(p));
    }
    SUBCASE("decentralized has no authority") {
        const auto s = init_simulation(SimParams{});
        CHECK_FALSE(s.authority.has_value());
        for (const auto& a : s.agents) CHECK_FALSE(a.is_authority);
    }
    SUBCASE("same seed, same state") {
        SimParams p;
        p.seed = 1234;
        p.mode = CensorshipMode::Mixed;
        const auto a = init_simulation(p);
        const auto b = init_simulation(p);
        CHECK(testing::same_state(a, b));
        CHECK(a.authority == b.authority);
    }
    SUBCASE("paired modes share network and beliefs") {
        SimParams p;
        p.seed = 77;
        SimState first = init_simulation(p);
        for (auto m : {CensorshipMode::Centralized, CensorshipMode::Mixed}) {
            p.mode = m;
            const auto other = init_simulation(p);
            CHECK(other.graph == first.graph);
            CHECK(other.rng == first.rng);
            for (AgentId i = 0; i < p.n_agents; ++i) CHECK(other.agents[i].belief == first.agents[i].belief);
        }
    }
    SUBCASE("invalid params are rejected before any work") {
        SimParams p;
        p.k_neighbors = 7;
        CHECK_THROWS_AS(init_simulation(p), ParameterError);
    }
}

TEST_CASE("run_simulation row accounting") {
    SimParams p;
    p.n_steps = 0;
    auto r = run_simulation(p);
    REQUIRE(r.rows.size() == 2);
    CHECK(r.rows[0].belief == Belief::Mainstream);
    CHECK(r.rows[1].belief == Belief::Radical);
    CHECK(*r.rows[0].mean_assent == 0.0);

    p.n_steps = 25;
    r = run_simulation(p);
    CHECK(r.rows.size() == 52);
    CHECK(r.final_rows()[0].step == 25);
    CHECK(r.final_rows()[1].step == 25);
}

TEST_CASE("step refuses to run past n_steps") {
    SimParams p;
    p.n_steps = 1;
    auto s = init_simulation(p);
    step(s);
    CHECK_THROWS_AS(step(s), std::logic_error);
}

TEST_CASE("decentralized mode never bans") {
    SimParams p;
    p.tolerance = 1.0;
    p.n_steps = 100;
    for (const auto& r : run_simulation(p).rows) CHECK(r.banned_count == 0);
}

TEST_CASE("mixed mode applies both mechanisms within a step") {
    SimParams p;
    p.mode = CensorshipMode::Mixed;
    p.tolerance = 1.0;
    p.homophily = 0.0;
    p.n_steps = 40;
    auto s = init_simulation(p);
    std::size_t steps_with_both = 0;
    while (s.step < p.n_steps) {
        const auto m = testing::manual_step(s);
        step(s);
        REQUIRE(testing::same_state(m.next, s));
        steps_with_both += (m.banned.has_value() && m.unfollowed > 0);
    }
    CHECK(steps_with_both > 0);
}

TEST_CASE("tolerance 1 eventually bans every radical (10 agents)") {
    SimParams p;
    p.n_agents = 10;
    p.k_neighbors = 4;
    p.tolerance = 1.0;
    p.homophily = 0.5;
    p.mode = CensorshipMode::Centralized;
    p.n_steps = 200;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        p.seed = seed;
        SimState s;
        try {
            s = init_simulation(p);
        } catch (const InitializationError&) {
            continue;   // no mainstream agent for this seed
        }
        std::size_t radicals = 0;
        for (const auto& a : s.agents) radicals += a.belief == Belief::Radical;
        std::uint32_t prev_banned = 0;
        std::uint32_t banned = 0;
        while (s.step < p.n_steps) {
            banned = step(s)[1].banned_count;
            CHECK(banned - prev_banned <= 1);
            prev_banned = banned;
        }
        CHECK(banned == radicals);
        for (const auto& a : s.agents)
            if (a.banned) CHECK(s.graph.degree(a.id) <= 2 * (radicals - 1));
    }
}

TEST_CASE("serialize, restore and continue reproduces the uninterrupted run") {
    for (auto mode : kModes) {
        SimParams p;
        p.n_agents = 30;
        p.n_steps = 60;
        p.mode = mode;
        p.tolerance = 0.7;
        p.seed = 2024;
        const auto full = run_simulation(p);

        auto s = init_simulation(p);
        std::vector<GroupMetricsRow> rows;
        for (const auto& r : compute_group_metrics(s, 0)) rows.push_back(r);
        for (int i = 0; i < 23; ++i)
            for (const auto& r : step(s)) rows.push_back(r);
        const std::string snapshot = serialize_state(s);
        SimState restored = deserialize_state(snapshot);
        CHECK(testing::same_state(restored, s));
        CHECK(serialize_state(restored) == snapshot);
        auto rest = continue_simulation(restored);
        rows.insert(rows.end(), rest.begin() + 2, rest.end());   // skip the repeated current-step rows
        CHECK(rows == full.rows);
    }
}

TEST_CASE("malformed snapshots are rejected") {
    CHECK_THROWS(deserialize_state("{}"));
    CHECK_THROWS(deserialize_state("not json"));
}

TEST_CASE("mechanism properties over random small instances") {
    Rng rng(20240601);
    int checked = 0;
    for (int i = 0; i < 150; ++i) {
        const SimParams p = testing::random_small_params(rng);
        testing::PropertyReport rep;
        try {
            rep = testing::check_run_properties(p);
        } catch (const InitializationError&) {
            continue;
        }
        ++checked;
        INFO(testing::describe(p));
        CHECK_MESSAGE(rep.ok(), (rep.ok() ? "" : rep.violations.front()));
    }
    CHECK(checked > 100);
}

TEST_CASE("no mainstream agents: unfollowing never removes a link") {
    SimParams p;
    p.n_agents = 20;
    p.k_neighbors = 4;
    p.radical_fraction = 1.0;
    p.n_steps = 30;
    const auto rep = testing::check_run_properties(p);
    CHECK(rep.ok());
    CHECK(rep.unfollows == 0);
}

TEST_CASE("mixed-mode mechanism order does not change the outcome distribution") {
    // 40 paired instances, each run with both orders; the final radical and
    // mainstream certainty distributions should be indistinguishable.
    stats::GroupedSample dissent, certainty;
    dissent.groups = {{"decentralized_first", {}}, {"centralized_first", {}}};
    certainty.groups = dissent.groups;
    for (std::uint64_t i = 0; i < 40; ++i) {
        SimParams p;
        p.mode = CensorshipMode::Mixed;
        p.n_steps = 100;
        p.seed = derive_seed(5, i);
        p.homophily = (static_cast<double>(i) + 0.5) / 40.0;
        p.tolerance = 1.0 - p.homophily;
        for (int order = 0; order < 2; ++order) {
            const auto r = run_simulation(p, SimOptions{false, false, order ? MixedOrder::CentralizedFirst
                                                                           : MixedOrder::DecentralizedFirst});
            const auto fin = r.final_rows();
            dissent.groups[order].second.push_back(*fin[1].mean_dissent);
            certainty.groups[order].second.push_back(*fin[0].mean_certainty);
        }
    }
    CHECK(stats::kruskal_wallis(dissent).p_value > 0.05);
    CHECK(stats::kruskal_wallis(certainty).p_value > 0.05);
}
