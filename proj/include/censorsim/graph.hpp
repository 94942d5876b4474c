#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace censorsim {

using AgentId = std::uint32_t;

/// Mutable directed graph over nodes 0..n-1. An edge u -> v means "u follows
/// v": u receives whatever v broadcasts. Out- and in-neighbour lists are both
/// kept sorted, so every query is a binary search or a linear walk.
class DirectedGraph {
public:
    DirectedGraph() = default;
    explicit DirectedGraph(std::size_t n) : out_(n), in_(n) {}

    std::size_t node_count() const noexcept { return out_.size(); }
    std::size_t edge_count() const noexcept { return edges_; }

    std::span<const AgentId> out_links(AgentId u) const { return out_[u]; }
    std::span<const AgentId> in_links(AgentId u) const { return in_[u]; }
    std::size_t out_degree(AgentId u) const { return out_[u].size(); }
    std::size_t in_degree(AgentId u) const { return in_[u].size(); }
    std::size_t degree(AgentId u) const { return out_[u].size() + in_[u].size(); }

    bool has_edge(AgentId u, AgentId v) const;

    /// Returns false (and leaves the graph unchanged) for self-links and
    /// duplicates.
    bool add_edge(AgentId u, AgentId v);
    bool remove_edge(AgentId u, AgentId v);

    /// Drops every in- and out-link of u. Returns the number removed.
    std::size_t isolate(AgentId u);

    /// All edges, ascending by (u, v).
    std::vector<std::pair<AgentId, AgentId>> edges() const;

    /// Full scan: sorted, no self-links, no duplicates, in-lists are the exact
    /// transpose of the out-lists, cached edge count is right. Throws
    /// std::logic_error describing the first violation.
    void check_invariants() const;

    friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
        return a.out_ == b.out_;
    }

private:
    void check_node(AgentId u) const;

    std::vector<std::vector<AgentId>> out_;
    std::vector<std::vector<AgentId>> in_;
    std::size_t edges_ = 0;
};

/// Edge-list export: one "u v" pair per line, ascending by (u, v).
void write_edge_list(std::ostream& os, const DirectedGraph& g);

}  // namespace censorsim
