#include "censorsim/graph.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

namespace censorsim {

namespace {

bool sorted_insert(std::vector<AgentId>& list, AgentId v) {
    auto it = std::lower_bound(list.begin(), list.end(), v);
    if (it != list.end() && *it == v) return false;
    list.insert(it, v);
    return true;
}

bool sorted_erase(std::vector<AgentId>& list, AgentId v) {
    auto it = std::lower_bound(list.begin(), list.end(), v);
    if (it == list.end() || *it != v) return false;
    list.erase(it);
    return true;
}

}  // namespace

void DirectedGraph::check_node(AgentId u) const {
    if (u >= out_.size())
        throw std::out_of_range("node " + std::to_string(u) + " out of range (n=" +
                                std::to_string(out_.size()) + ")");
}

bool DirectedGraph::has_edge(AgentId u, AgentId v) const {
    check_node(u);
    return std::binary_search(out_[u].begin(), out_[u].end(), v);
}

bool DirectedGraph::add_edge(AgentId u, AgentId v) {
    check_node(u);
    check_node(v);
    if (u == v) return false;
    if (!sorted_insert(out_[u], v)) return false;
    sorted_insert(in_[v], u);
    ++edges_;
    return true;
}

bool DirectedGraph::remove_edge(AgentId u, AgentId v) {
    check_node(u);
    check_node(v);
    if (!sorted_erase(out_[u], v)) return false;
    sorted_erase(in_[v], u);
    --edges_;
    return true;
}

std::size_t DirectedGraph::isolate(AgentId u) {
    check_node(u);
    for (AgentId v : out_[u]) sorted_erase(in_[v], u);
    for (AgentId w : in_[u]) sorted_erase(out_[w], u);
    const std::size_t removed = out_[u].size() + in_[u].size();
    edges_ -= removed;
    out_[u].clear();
    in_[u].clear();
    return removed;
}

std::vector<std::pair<AgentId, AgentId>> DirectedGraph::edges() const {
    std::vector<std::pair<AgentId, AgentId>> result;
    result.reserve(edges_);
    for (AgentId u = 0; u < out_.size(); ++u)
        for (AgentId v : out_[u]) result.emplace_back(u, v);
    return result;
}

void DirectedGraph::check_invariants() const {
    const std::size_t n = out_.size();
    if (in_.size() != n) throw std::logic_error("graph: in/out list count mismatch");
    std::size_t counted = 0;
    std::vector<std::vector<AgentId>> transpose(n);
    for (AgentId u = 0; u < n; ++u) {
        const auto& outs = out_[u];
        for (std::size_t i = 0; i < outs.size(); ++i) {
            if (outs[i] >= n)
                throw std::logic_error("graph: edge target out of range at node " + std::to_string(u));
            if (outs[i] == u) throw std::logic_error("graph: self-link at node " + std::to_string(u));
            if (i > 0 && outs[i - 1] >= outs[i])
                throw std::logic_error("graph: out-list of node " + std::to_string(u) +
                                       " unsorted or duplicated");
            transpose[outs[i]].push_back(u);
        }
        counted += outs.size();
    }
    if (counted != edges_) throw std::logic_error("graph: cached edge count is stale");
    for (AgentId v = 0; v < n; ++v)
        if (transpose[v] != in_[v])
            throw std::logic_error("graph: in-list of node " + std::to_string(v) +
                                   " is not the transpose of the out-lists");
}

void write_edge_list(std::ostream& os, const DirectedGraph& g) {
    for (auto [u, v] : g.edges()) os << u << ' ' << v << '\n';
}

}  // namespace censorsim
