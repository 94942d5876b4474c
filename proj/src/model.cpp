#include "censorsim/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace censorsim {

std::string_view to_string(CensorshipMode m) noexcept {
    switch (m) {
        case CensorshipMode::Decentralized: return "decentralized";
        case CensorshipMode::Centralized: return "centralized";
        case CensorshipMode::Mixed: return "mixed";
    }
    return "unknown";
}

CensorshipMode parse_mode(std::string_view text) {
    std::string lowered(text);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (auto m : kModes)
        if (lowered == to_string(m)) return m;
    throw ParameterError("mode: expected one of decentralized, centralized, mixed (got \"" +
                         std::string(text) + "\")");
}

namespace {

void require_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0))
        throw ParameterError(std::string(name) + ": must lie in [0,1] (got " + std::to_string(p) + ")");
}

}  // namespace

void SimParams::validate() const {
    if (n_agents < 2) throw ParameterError("n_agents: must be >= 2 (got " + std::to_string(n_agents) + ")");
    if (k_neighbors == 0 || k_neighbors % 2 != 0 || k_neighbors >= n_agents)
        throw ParameterError("k_neighbors: must be even and in [2, n_agents) (got " +
                             std::to_string(k_neighbors) + ", n_agents " + std::to_string(n_agents) + ")");
    require_probability(rewire_prob, "rewire_prob");
    require_probability(radical_fraction, "radical_fraction");
    require_probability(homophily, "homophily");
    require_probability(tolerance, "tolerance");
}

void broadcast_step(SimState& state) {
    const auto& g = state.graph;
    // Counters never influence the graph, so updating in place is equivalent
    // to a synchronous update.
    for (auto& agent : state.agents) {
        std::uint64_t same = 0;
        for (AgentId v : g.out_links(agent.id)) same += state.agents[v].belief == agent.belief;
        agent.assent += same;
        agent.dissent += g.out_degree(agent.id) - same;
    }
}

std::size_t link_formation_step(SimState& state) {
    const auto n = static_cast<AgentId>(state.agents.size());
    const double homophily = state.params.homophily;
    std::vector<AgentId> pool;
    pool.reserve(n);
    std::size_t created = 0;

    for (AgentId u = 0; u < n; ++u) {
        const AgentState& self = state.agents[u];
        const bool similar = state.rng.uniform01() < homophily;
        // A banned agent whose roll fails stays put.
        if (self.banned && !similar) continue;

        pool.clear();
        const auto targets = state.graph.out_links(u);
        auto next_target = targets.begin();
        for (AgentId v = 0; v < n; ++v) {
            while (next_target != targets.end() && *next_target < v) ++next_target;
            if (v == u || (next_target != targets.end() && *next_target == v)) continue;
            const AgentState& other = state.agents[v];
            if (self.banned) {
                if (other.banned) pool.push_back(v);
            } else if (!other.banned && (!similar || other.belief == self.belief)) {
                pool.push_back(v);
            }
        }
        if (pool.empty()) continue;

        const AgentId v = pool[state.rng.uniform_index(pool.size())];
        state.graph.add_edge(u, v);
        ++created;
        if (state.link_log) state.link_log->push_back({state.step, u, v, self.banned});
    }
    return created;
}

std::optional<AgentId> centralized_censorship_step(SimState& state) {
    if (!state.authority) throw std::logic_error("centralized censorship requires an authority agent");
    std::vector<AgentId> pool;
    pool.reserve(state.agents.size());
    for (const auto& a : state.agents)
        if (!a.banned && !a.is_authority) pool.push_back(a.id);
    if (pool.empty()) return std::nullopt;

    const AgentId chosen = pool[state.rng.uniform_index(pool.size())];
    if (state.agents[chosen].belief != Belief::Radical) return std::nullopt;
    if (!(state.rng.uniform01() < state.params.tolerance)) return std::nullopt;

    state.agents[chosen].banned = true;
    state.graph.isolate(chosen);
    return chosen;
}

std::size_t decentralized_censorship_step(SimState& state) {
    std::size_t removed = 0;
    for (const auto& agent : state.agents) {
        if (agent.belief != Belief::Mainstream) continue;
        const auto targets = state.graph.out_links(agent.id);
        if (targets.empty()) continue;
        const AgentId v = targets[state.rng.uniform_index(targets.size())];
        if (state.agents[v].belief == Belief::Radical) {
            state.graph.remove_edge(agent.id, v);
            ++removed;
        }
    }
    return removed;
}

std::optional<double> agent_certainty(const SimState& state, AgentId u) {
    const auto& g = state.graph;
    const std::size_t total = g.degree(u);
    if (total == 0) return std::nullopt;
    const Belief own = state.agents[u].belief;
    std::size_t same = 0;
    for (AgentId v : g.out_links(u)) same += state.agents[v].belief == own;
    for (AgentId v : g.in_links(u)) same += state.agents[v].belief == own;
    return static_cast<double>(same) / static_cast<double>(total);
}

std::array<GroupMetricsRow, 2> compute_group_metrics(const SimState& state, std::uint32_t step) {
    struct Sums {
        double assent = 0, dissent = 0, divergence = 0, degree = 0, certainty = 0;
        std::uint32_t size = 0, banned = 0, certainty_n = 0;
    };
    std::array<Sums, 2> sums{};
    for (const auto& a : state.agents) {
        Sums& s = sums[to_int(a.belief)];
        s.assent += static_cast<double>(a.assent);
        s.dissent += static_cast<double>(a.dissent);
        s.divergence += static_cast<double>(a.assent) - static_cast<double>(a.dissent);
        s.degree += static_cast<double>(state.graph.degree(a.id));
        s.size += 1;
        s.banned += a.banned;
        if (auto c = agent_certainty(state, a.id)) {
            s.certainty += *c;
            s.certainty_n += 1;
        }
    }

    std::array<GroupMetricsRow, 2> rows;
    for (Belief b : kBeliefs) {
        const Sums& s = sums[to_int(b)];
        GroupMetricsRow& row = rows[to_int(b)];
        row.step = step;
        row.belief = b;
        row.group_size = s.size;
        row.banned_count = s.banned;
        row.certainty_n = s.certainty_n;
        if (s.size > 0) {
            const double n = s.size;
            row.mean_assent = s.assent / n;
            row.mean_dissent = s.dissent / n;
            row.mean_divergence = s.divergence / n;
            row.mean_degree = s.degree / n;
        }
        if (s.certainty_n > 0) row.mean_certainty = s.certainty / s.certainty_n;
    }
    return rows;
}

}  // namespace censorsim
