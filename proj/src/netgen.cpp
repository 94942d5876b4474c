#include "censorsim/netgen.hpp"

#include <algorithm>
#include <cstdio>
#include <queue>
#include <string>

#include "censorsim/model.hpp"

namespace censorsim {

DirectedGraph generate_small_world(std::uint32_t n, std::uint32_t k, double beta, Rng& rng) {
    if (n < 2) throw ParameterError("n: must be >= 2 (got " + std::to_string(n) + ")");
    if (k == 0 || k % 2 != 0 || k >= n)
        throw ParameterError("k: must be even and in [2, n) (got " + std::to_string(k) + ", n " +
                             std::to_string(n) + ")");
    if (!(beta >= 0.0 && beta <= 1.0))
        throw ParameterError("beta: must lie in [0,1] (got " + std::to_string(beta) + ")");

    DirectedGraph g(n);
    std::vector<std::vector<AgentId>> lattice(n);
    for (AgentId i = 0; i < n; ++i) {
        for (std::uint32_t j = 1; j <= k / 2; ++j) {
            lattice[i].push_back((i + j) % n);
            lattice[i].push_back((i + n - j) % n);
        }
        for (AgentId v : lattice[i]) g.add_edge(i, v);
    }

    if (beta == 0.0) return g;
    for (AgentId i = 0; i < n; ++i) {
        for (AgentId old_target : lattice[i]) {
            if (!(rng.uniform01() < beta)) continue;
            for (std::uint32_t attempt = 0; attempt < n; ++attempt) {
                const auto candidate = static_cast<AgentId>(rng.uniform_index(n));
                if (candidate == i || g.has_edge(i, candidate)) continue;
                g.remove_edge(i, old_target);
                g.add_edge(i, candidate);
                break;
            }
        }
    }
    return g;
}

DirectedGraph random_directed_graph(std::uint32_t n, std::size_t m, Rng& rng) {
    const std::size_t max_edges = static_cast<std::size_t>(n) * (n - 1);
    if (n < 2 || m > max_edges)
        throw ParameterError("random graph: m must be <= n(n-1) (got m " + std::to_string(m) + ", n " +
                             std::to_string(n) + ")");
    DirectedGraph g(n);
    while (g.edge_count() < m) {
        const auto u = static_cast<AgentId>(rng.uniform_index(n));
        const auto v = static_cast<AgentId>(rng.uniform_index(n));
        g.add_edge(u, v);  // rejects self-links and duplicates
    }
    return g;
}

std::vector<std::vector<AgentId>> undirected_projection(const DirectedGraph& g) {
    const std::size_t n = g.node_count();
    std::vector<std::vector<AgentId>> adj(n);
    for (AgentId u = 0; u < n; ++u) {
        auto outs = g.out_links(u);
        auto ins = g.in_links(u);
        adj[u].reserve(outs.size() + ins.size());
        std::set_union(outs.begin(), outs.end(), ins.begin(), ins.end(), std::back_inserter(adj[u]));
    }
    return adj;
}

double mean_clustering(const DirectedGraph& g) {
    const auto adj = undirected_projection(g);
    const std::size_t n = adj.size();
    if (n == 0) return 0.0;
    double total = 0.0;
    for (AgentId u = 0; u < n; ++u) {
        const auto& nb = adj[u];
        const std::size_t d = nb.size();
        if (d < 2) continue;
        std::size_t links = 0;
        for (std::size_t a = 0; a < d; ++a) {
            const auto& na = adj[nb[a]];
            for (std::size_t b = a + 1; b < d; ++b)
                links += std::binary_search(na.begin(), na.end(), nb[b]);
        }
        total += 2.0 * static_cast<double>(links) / (static_cast<double>(d) * (d - 1));
    }
    return total / static_cast<double>(n);
}

ComponentPathStats largest_component_paths(const DirectedGraph& g) {
    const auto adj = undirected_projection(g);
    const std::size_t n = adj.size();
    std::vector<int> component(n, -1);
    std::vector<std::size_t> sizes;
    std::vector<AgentId> stack;
    for (AgentId s = 0; s < n; ++s) {
        if (component[s] >= 0) continue;
        const int id = static_cast<int>(sizes.size());
        sizes.push_back(0);
        component[s] = id;
        stack.push_back(s);
        while (!stack.empty()) {
            const AgentId u = stack.back();
            stack.pop_back();
            ++sizes[id];
            for (AgentId v : adj[u])
                if (component[v] < 0) {
                    component[v] = id;
                    stack.push_back(v);
                }
        }
    }
    if (sizes.empty()) return {};
    const int largest = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    const std::size_t size = sizes[largest];
    if (size < 2) return {0.0, size};

    std::vector<int> dist(n);
    std::queue<AgentId> frontier;
    double total = 0.0;
    for (AgentId s = 0; s < n; ++s) {
        if (component[s] != largest) continue;
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        frontier.push(s);
        while (!frontier.empty()) {
            const AgentId u = frontier.front();
            frontier.pop();
            total += dist[u];
            for (AgentId v : adj[u])
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    frontier.push(v);
                }
        }
    }
    return {total / (static_cast<double>(size) * static_cast<double>(size - 1)), size};
}

NetworkStats small_worldness(const DirectedGraph& g, Rng& rng, std::size_t n_baseline) {
    const std::size_t n = g.node_count();
    if (n < 3) throw NetworkError("small-worldness needs at least 3 nodes");
    if (n_baseline == 0) throw ParameterError("n_baseline: must be >= 1");

    NetworkStats stats;
    const auto paths = largest_component_paths(g);
    stats.component_fraction = static_cast<double>(paths.component_size) / static_cast<double>(n);
    if (stats.component_fraction < 0.9) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "graph too fragmented: largest weakly connected component holds %.3f of nodes (need >= 0.9)",
                      stats.component_fraction);
        throw NetworkError(buf);
    }
    stats.clustering = mean_clustering(g);
    stats.mean_path_length = paths.mean_path_length;

    for (std::size_t i = 0; i < n_baseline; ++i) {
        const auto random = random_directed_graph(static_cast<std::uint32_t>(n), g.edge_count(), rng);
        stats.random_clustering += mean_clustering(random);
        stats.random_path_length += largest_component_paths(random).mean_path_length;
    }
    stats.random_clustering /= static_cast<double>(n_baseline);
    stats.random_path_length /= static_cast<double>(n_baseline);

    if (stats.random_clustering > 0.0 && stats.mean_path_length > 0.0)
        stats.sigma = (stats.clustering / stats.random_clustering) /
                      (stats.mean_path_length / stats.random_path_length);
    return stats;
}

}  // namespace censorsim
