#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "censorsim/graph.hpp"
#include "censorsim/random.hpp"

namespace censorsim {

/// Watts-Strogatz on a directed ring. Node i starts with out-links to its k
/// nearest ring neighbours (k/2 on each side); each link is then rewired with
/// probability beta to a uniformly random new target. A rewire draw that hits
/// i itself or an existing target is redrawn, up to n attempts, after which
/// the original link is kept. Out-degree is exactly k for every node.
///
/// Throws ParameterError unless 0 < k < n, k even, beta in [0,1].
DirectedGraph generate_small_world(std::uint32_t n, std::uint32_t k, double beta, Rng& rng);

/// Uniform directed graph with n nodes and exactly m distinct non-self edges.
DirectedGraph random_directed_graph(std::uint32_t n, std::size_t m, Rng& rng);

/// Neighbour lists of the undirected projection, sorted and deduplicated.
std::vector<std::vector<AgentId>> undirected_projection(const DirectedGraph& g);

/// Mean local clustering coefficient of the undirected projection. Nodes with
/// fewer than two neighbours contribute zero.
double mean_clustering(const DirectedGraph& g);

struct ComponentPathStats {
    double mean_path_length = 0.0;   // over ordered pairs inside the component
    std::size_t component_size = 0;
};

/// Mean shortest path length (BFS, unweighted) on the largest weakly
/// connected component.
ComponentPathStats largest_component_paths(const DirectedGraph& g);

class NetworkError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct NetworkStats {
    double clustering = 0.0;
    double mean_path_length = 0.0;
    double sigma = 0.0;
    double random_clustering = 0.0;
    double random_path_length = 0.0;
    double component_fraction = 0.0;
};

/// Small-world index sigma = (C / C_rand) / (L / L_rand), with the random
/// baselines averaged over `n_baseline` directed Erdos-Renyi graphs of equal
/// node and edge count. Throws NetworkError when the largest weakly connected
/// component holds less than 90% of the nodes.
NetworkStats small_worldness(const DirectedGraph& g, Rng& rng, std::size_t n_baseline = 20);

}  // namespace censorsim
