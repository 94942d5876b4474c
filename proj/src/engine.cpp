#include "censorsim/engine.hpp"

#include "json.hpp"

#include "censorsim/config.hpp"
#include "censorsim/netgen.hpp"

namespace censorsim {

using nlohmann::json;

SimState init_simulation(const SimParams& params, const SimOptions& options) {
    params.validate();

    SimState state;
    state.params = params;
    state.rng = Rng(params.seed);
    state.graph = generate_small_world(params.n_agents, params.k_neighbors, params.rewire_prob, state.rng);

    state.agents.resize(params.n_agents);
    std::vector<AgentId> mainstream;
    for (AgentId i = 0; i < params.n_agents; ++i) {
        auto& a = state.agents[i];
        a.id = i;
        a.belief = state.rng.uniform01() < params.radical_fraction ? Belief::Radical : Belief::Mainstream;
        if (a.belief == Belief::Mainstream) mainstream.push_back(i);
    }

    // The draw happens in every mode so the three modes of a paired sample
    // leave initialization with the same stream position.
    if (!mainstream.empty()) {
        const AgentId pick = mainstream[state.rng.uniform_index(mainstream.size())];
        if (has_authority(params.mode)) {
            state.authority = pick;
            state.agents[pick].is_authority = true;
        }
    } else if (has_authority(params.mode)) {
        throw InitializationError("cannot choose a central authority: no agent holds belief 0 "
                                  "(radical_fraction " + std::to_string(params.radical_fraction) +
                                  ", mode " + std::string(to_string(params.mode)) + ")");
    }

    if (options.record_links) state.link_log.emplace();
    state.check_each_step = options.check_each_step;
    state.mixed_order = options.mixed_order;
    if (state.check_each_step) state.graph.check_invariants();
    return state;
}

std::array<GroupMetricsRow, 2> step(SimState& state) {
    if (state.step >= state.params.n_steps)
        throw std::logic_error("step: simulation already at n_steps");

    broadcast_step(state);
    link_formation_step(state);
    switch (state.params.mode) {
        case CensorshipMode::Decentralized:
            decentralized_censorship_step(state);
            break;
        case CensorshipMode::Centralized:
            centralized_censorship_step(state);
            break;
        case CensorshipMode::Mixed:
            if (state.mixed_order == MixedOrder::DecentralizedFirst) {
                decentralized_censorship_step(state);
                centralized_censorship_step(state);
            } else {
                centralized_censorship_step(state);
                decentralized_censorship_step(state);
            }
            break;
    }
    ++state.step;
    if (state.check_each_step) state.graph.check_invariants();
    return compute_group_metrics(state, state.step);
}

std::vector<GroupMetricsRow> continue_simulation(SimState& state) {
    std::vector<GroupMetricsRow> rows;
    rows.reserve(2 * (state.params.n_steps - state.step + 1));
    for (const auto& r : compute_group_metrics(state, state.step)) rows.push_back(r);
    while (state.step < state.params.n_steps)
        for (const auto& r : step(state)) rows.push_back(r);
    return rows;
}

RunResult run_simulation(const SimParams& params, const SimOptions& options) {
    SimState state = init_simulation(params, options);
    return {params, continue_simulation(state)};
}

namespace {

SimParams params_from_json(const json& j) {
    SimParams p;
    p.n_agents = j.at("n_agents").get<std::uint32_t>();
    p.k_neighbors = j.at("k_neighbors").get<std::uint32_t>();
    p.rewire_prob = j.at("rewire_prob").get<double>();
    p.radical_fraction = j.at("radical_fraction").get<double>();
    p.homophily = j.at("homophily").get<double>();
    p.tolerance = j.at("tolerance").get<double>();
    p.mode = parse_mode(j.at("mode").get<std::string>());
    p.n_steps = j.at("n_steps").get<std::uint32_t>();
    p.seed = j.at("seed").get<std::uint64_t>();
    return p;
}

}  // namespace

std::string serialize_state(const SimState& state) {
    json agents = json::array();
    for (const auto& a : state.agents)
        agents.push_back({to_int(a.belief), a.assent, a.dissent, a.banned, a.is_authority});
    json edges = json::array();
    for (auto [u, v] : state.graph.edges()) edges.push_back({u, v});
    json doc = {{"params", to_json(state.params)},
                {"step", state.step},
                {"agents", std::move(agents)},
                {"edges", std::move(edges)},
                {"rng", state.rng.save_state()}};
    return doc.dump();
}

SimState deserialize_state(const std::string& text) {
    const json doc = json::parse(text);
    SimState state;
    state.params = params_from_json(doc.at("params"));
    state.params.validate();
    state.step = doc.at("step").get<std::uint32_t>();
    if (state.step > state.params.n_steps) throw std::runtime_error("snapshot: step exceeds n_steps");

    const auto& agents = doc.at("agents");
    if (agents.size() != state.params.n_agents)
        throw std::runtime_error("snapshot: agent count does not match n_agents");
    state.agents.resize(agents.size());
    for (AgentId i = 0; i < agents.size(); ++i) {
        const auto& rec = agents[i];
        auto& a = state.agents[i];
        a.id = i;
        a.belief = rec.at(0).get<int>() == 1 ? Belief::Radical : Belief::Mainstream;
        a.assent = rec.at(1).get<std::uint64_t>();
        a.dissent = rec.at(2).get<std::uint64_t>();
        a.banned = rec.at(3).get<bool>();
        a.is_authority = rec.at(4).get<bool>();
        if (a.is_authority) state.authority = i;
    }

    state.graph = DirectedGraph(state.params.n_agents);
    for (const auto& e : doc.at("edges")) {
        const auto u = e.at(0).get<AgentId>();
        const auto v = e.at(1).get<AgentId>();
        if (u >= state.params.n_agents || v >= state.params.n_agents || !state.graph.add_edge(u, v))
            throw std::runtime_error("snapshot: invalid edge " + std::to_string(u) + " " + std::to_string(v));
    }
    state.rng.load_state(doc.at("rng").get<std::string>());
    return state;
}

}  // namespace censorsim
