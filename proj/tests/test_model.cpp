#include "doctest.h"

#include <algorithm>

#include "censorsim/model.hpp"

using namespace censorsim;

namespace {

// Hand-built state; beliefs given as 0/1 per agent.
SimState make_state(std::vector<int> beliefs, std::vector<std::pair<AgentId, AgentId>> edges,
                    CensorshipMode mode = CensorshipMode::Decentralized, std::uint64_t seed = 1) {
    SimState s;
    s.params.n_agents = static_cast<std::uint32_t>(beliefs.size());
    s.params.k_neighbors = 2;
    s.params.mode = mode;
    s.rng = Rng(seed);
    s.graph = DirectedGraph(beliefs.size());
    for (AgentId i = 0; i < beliefs.size(); ++i)
        s.agents.push_back({i, beliefs[i] ? Belief::Radical : Belief::Mainstream, 0, 0, false, false});
    for (auto [u, v] : edges) s.graph.add_edge(u, v);
    return s;
}

}  // namespace

TEST_CASE("parameter validation names the field") {
    SimParams p;
    p.validate();
    p.tolerance = 1.5;
    CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("tolerance"), ParameterError);
    p = {};
    p.k_neighbors = 5;
    CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("k_neighbors"), ParameterError);
    p.k_neighbors = 100;
    CHECK_THROWS_AS(p.validate(), ParameterError);
}

TEST_CASE("mode parsing is case-insensitive") {
    CHECK(parse_mode("Mixed") == CensorshipMode::Mixed);
    CHECK(parse_mode("CENTRALIZED") == CensorshipMode::Centralized);
    CHECK(parse_mode("decentralized") == CensorshipMode::Decentralized);
    CHECK_THROWS_AS(parse_mode("banning"), ParameterError);
}

TEST_CASE("broadcast_step") {
    SUBCASE("mixed receipts count once each") {
        auto s = make_state({0, 1, 0}, {{0, 1}, {0, 2}});
        broadcast_step(s);
        CHECK(s.agents[0].assent == 1);
        CHECK(s.agents[0].dissent == 1);
        CHECK(s.agents[1].assent + s.agents[1].dissent == 0);
    }
    SUBCASE("no out-links, no receipts") {
        auto s = make_state({0, 0}, {{1, 0}});
        broadcast_step(s);
        CHECK(s.agents[0].assent == 0);
        CHECK(s.agents[0].dissent == 0);
    }
    SUBCASE("complete graph on three mainstream agents") {
        auto s = make_state({0, 0, 0}, {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}});
        const auto before = s.graph;
        broadcast_step(s);
        for (const auto& a : s.agents) {
            CHECK(a.assent == 2);
            CHECK(a.dissent == 0);
        }
        CHECK(s.graph == before);
    }
}

TEST_CASE("link formation with homophily 1 targets same-belief agents") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto s = make_state({0, 1, 0, 1, 0, 1, 0, 1}, {}, CensorshipMode::Decentralized, seed);
        s.params.homophily = 1.0;
        s.link_log.emplace();
        link_formation_step(s);
        CHECK(s.link_log->size() == 8);
        for (const auto& l : *s.link_log) CHECK(s.belief(l.source) == s.belief(l.target));
    }
}

TEST_CASE("link formation with homophily 0 draws from all eligible agents") {
    // Agent 0 (mainstream) with one mainstream and three radical candidates:
    // the target is uniform over all four.
    std::array<int, 4> hits{};
    for (std::uint64_t seed = 0; seed < 4000; ++seed) {
        auto s = make_state({0, 0, 1, 1, 1}, {}, CensorshipMode::Decentralized, seed);
        s.params.homophily = 0.0;
        link_formation_step(s);
        REQUIRE(s.graph.out_degree(0) == 1);
        hits[s.graph.out_links(0)[0] - 1]++;
    }
    for (int h : hits) CHECK(h == doctest::Approx(1000).epsilon(0.1));
}

TEST_CASE("link formation pools exclude self, existing targets and banned agents") {
    auto s = make_state({0, 0, 0, 0}, {{0, 1}}, CensorshipMode::Centralized);
    s.agents[2].banned = true;
    s.params.homophily = 0.5;
    for (int i = 0; i < 20; ++i) link_formation_step(s);
    // Unbanned agents may only gain links among {0,1,3}.
    for (AgentId u : {0u, 1u, 3u})
        for (AgentId v : s.graph.out_links(u)) CHECK(v != 2);
    CHECK(s.graph.in_degree(2) == 0);
    s.graph.check_invariants();
}

TEST_CASE("banned agents link only to banned agents, never on a failed roll") {
    SUBCASE("homophily 0: no links") {
        auto s = make_state({1, 1, 1, 0}, {}, CensorshipMode::Centralized);
        s.agents[0].banned = s.agents[1].banned = true;
        s.params.homophily = 0.0;
        for (int i = 0; i < 30; ++i) link_formation_step(s);
        CHECK(s.graph.degree(0) == 0);
        CHECK(s.graph.degree(1) == 0);
    }
    SUBCASE("homophily 1: the banned pair links up") {
        auto s = make_state({1, 1, 1, 0}, {}, CensorshipMode::Centralized);
        s.agents[0].banned = s.agents[1].banned = true;
        s.params.homophily = 1.0;
        link_formation_step(s);
        CHECK(s.graph.has_edge(0, 1));
        CHECK(s.graph.has_edge(1, 0));
        CHECK(s.graph.out_degree(0) == 1);
    }
}

TEST_CASE("empty candidate pool is a silent no-op") {
    auto s = make_state({0, 1}, {{0, 1}, {1, 0}});
    s.params.homophily = 0.3;
    CHECK(link_formation_step(s) == 0);
    CHECK(s.graph.edge_count() == 2);
}

TEST_CASE("centralized censorship") {
    SUBCASE("tolerance 1 bans a selected radical and isolates it") {
        auto s = make_state({0, 1, 0, 0}, {{1, 0}, {1, 2}, {2, 1}, {3, 1}, {2, 3}}, CensorshipMode::Centralized);
        s.agents[0].is_authority = true;
        s.authority = 0;
        s.params.tolerance = 1.0;
        REQUIRE(s.graph.degree(1) == 4);
        std::optional<AgentId> banned;
        for (int i = 0; i < 100 && !banned; ++i) banned = centralized_censorship_step(s);
        REQUIRE(banned.has_value());
        CHECK(*banned == 1);
        CHECK(s.agents[1].banned);
        CHECK(s.graph.degree(1) == 0);
        CHECK(s.graph.edge_count() == 1);
        CHECK(s.graph.has_edge(2, 3));
        s.graph.check_invariants();
        // Only mainstream agents remain selectable.
        for (int i = 0; i < 50; ++i) CHECK_FALSE(centralized_censorship_step(s).has_value());
    }
    SUBCASE("tolerance 0 never bans") {
        auto s = make_state({0, 1, 1, 1}, {}, CensorshipMode::Centralized);
        s.agents[0].is_authority = true;
        s.authority = 0;
        s.params.tolerance = 0.0;
        for (int i = 0; i < 200; ++i) CHECK_FALSE(centralized_censorship_step(s).has_value());
    }
    SUBCASE("mainstream agents are never banned") {
        auto s = make_state({0, 0, 0}, {{1, 2}}, CensorshipMode::Centralized);
        s.agents[0].is_authority = true;
        s.authority = 0;
        s.params.tolerance = 1.0;
        for (int i = 0; i < 200; ++i) CHECK_FALSE(centralized_censorship_step(s).has_value());
        CHECK(s.graph.edge_count() == 1);
    }
    SUBCASE("requires an authority") {
        auto s = make_state({0, 1}, {}, CensorshipMode::Centralized);
        CHECK_THROWS_AS(centralized_censorship_step(s), std::logic_error);
    }
}

TEST_CASE("decentralized censorship") {
    SUBCASE("a mainstream agent drops its sampled radical target") {
        auto s = make_state({0, 1}, {{0, 1}});
        CHECK(decentralized_censorship_step(s) == 1);
        CHECK(s.graph.edge_count() == 0);
    }
    SUBCASE("only the sampled link goes") {
        auto s = make_state({0, 1, 1, 1}, {{0, 1}, {0, 2}, {0, 3}});
        CHECK(decentralized_censorship_step(s) == 1);
        CHECK(s.graph.out_degree(0) == 2);
    }
    SUBCASE("radical agents never unfollow") {
        auto s = make_state({1, 0, 0}, {{0, 1}, {0, 2}});
        CHECK(decentralized_censorship_step(s) == 0);
        CHECK(s.graph.edge_count() == 2);
    }
    SUBCASE("no out-links, nothing to sample") {
        auto s = make_state({0, 1}, {{1, 0}});
        CHECK(decentralized_censorship_step(s) == 0);
        CHECK(s.graph.edge_count() == 1);
    }
}

TEST_CASE("group metrics") {
    SUBCASE("certainty counts links in both directions") {
        // Agent 0: out to 1, 2; in from 3, 4. Same-belief: 1, 2, 3.
        auto s = make_state({0, 0, 0, 0, 1}, {{0, 1}, {0, 2}, {3, 0}, {4, 0}});
        CHECK(*agent_certainty(s, 0) == doctest::Approx(0.75));
    }
    SUBCASE("divergence and degree") {
        auto s = make_state({0, 1}, {{0, 1}});
        s.agents[0].assent = 5;
        s.agents[0].dissent = 2;
        const auto rows = compute_group_metrics(s, 7);
        CHECK(rows[0].step == 7);
        CHECK(*rows[0].mean_divergence == 3.0);
        CHECK(*rows[0].mean_degree == 1.0);
        CHECK(*rows[0].mean_certainty == 0.0);
        CHECK(rows[1].certainty_n == 1);
    }
    SUBCASE("isolated group member leaves certainty absent") {
        auto s = make_state({0, 1, 1}, {{1, 2}});
        const auto rows = compute_group_metrics(s, 0);
        CHECK(rows[0].group_size == 1);
        CHECK_FALSE(rows[0].mean_certainty.has_value());
        CHECK(rows[0].certainty_n == 0);
        CHECK(*rows[0].mean_degree == 0.0);
        CHECK(*rows[1].mean_certainty == 1.0);
    }
    SUBCASE("empty group has every mean absent") {
        auto s = make_state({0, 0}, {{0, 1}});
        const auto rows = compute_group_metrics(s, 0);
        CHECK(rows[1].group_size == 0);
        CHECK_FALSE(rows[1].mean_assent.has_value());
        CHECK_FALSE(rows[1].mean_dissent.has_value());
        CHECK_FALSE(rows[1].mean_divergence.has_value());
        CHECK_FALSE(rows[1].mean_degree.has_value());
        CHECK_FALSE(rows[1].mean_certainty.has_value());
    }
    SUBCASE("banned agents stay in their group") {
        auto s = make_state({0, 1, 1}, {{0, 2}});
        s.agents[1].banned = true;
        const auto rows = compute_group_metrics(s, 0);
        CHECK(rows[1].group_size == 2);
        CHECK(rows[1].banned_count == 1);
        CHECK(rows[1].certainty_n == 1);
    }
}
