#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "censorsim/graph.hpp"
#include "censorsim/random.hpp"

namespace censorsim {

/// Bad parameter value; the message names the parameter and its legal range.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A simulation cannot be set up from otherwise valid parameters.
class InitializationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Binary belief. Radical (1) is the belief targeted by the central authority.
enum class Belief : std::uint8_t { Mainstream = 0, Radical = 1 };

constexpr int to_int(Belief b) noexcept { return static_cast<int>(b); }
constexpr std::array<Belief, 2> kBeliefs{Belief::Mainstream, Belief::Radical};

enum class CensorshipMode : std::uint8_t { Decentralized, Centralized, Mixed };

constexpr std::array<CensorshipMode, 3> kModes{CensorshipMode::Decentralized,
                                               CensorshipMode::Centralized,
                                               CensorshipMode::Mixed};

std::string_view to_string(CensorshipMode m) noexcept;
/// Case-insensitive. Throws ParameterError on anything else.
CensorshipMode parse_mode(std::string_view text);

constexpr bool has_authority(CensorshipMode m) noexcept {
    return m != CensorshipMode::Decentralized;
}
constexpr bool has_unfollowing(CensorshipMode m) noexcept {
    return m != CensorshipMode::Centralized;
}

/// Order of the two censorship mechanisms when both run in one step.
enum class MixedOrder : std::uint8_t { DecentralizedFirst, CentralizedFirst };

struct SimParams {
    std::uint32_t n_agents = 100;
    std::uint32_t k_neighbors = 6;   // initial out-degree, even
    double rewire_prob = 0.1;
    double radical_fraction = 0.5;
    double homophily = 0.5;
    double tolerance = 0.5;          // per-selection ban probability
    CensorshipMode mode = CensorshipMode::Decentralized;
    std::uint32_t n_steps = 300;
    std::uint64_t seed = 0;

    /// Throws ParameterError naming the first offending field.
    void validate() const;

    friend bool operator==(const SimParams&, const SimParams&) = default;
};

struct AgentState {
    AgentId id = 0;
    Belief belief = Belief::Mainstream;
    std::uint64_t assent = 0;
    std::uint64_t dissent = 0;
    bool banned = false;
    bool is_authority = false;

    friend bool operator==(const AgentState&, const AgentState&) = default;
};

/// One created link, for tracing link formation.
struct LinkCreation {
    std::uint32_t step = 0;
    AgentId source = 0;
    AgentId target = 0;
    bool source_banned = false;

    friend bool operator==(const LinkCreation&, const LinkCreation&) = default;
};

/// Per-step aggregates over one belief group. Means are absent when the group
/// is empty; mean_certainty is also absent when no member has any link.
struct GroupMetricsRow {
    std::uint32_t step = 0;
    Belief belief = Belief::Mainstream;
    std::optional<double> mean_assent;
    std::optional<double> mean_dissent;
    std::optional<double> mean_divergence;
    std::optional<double> mean_degree;
    std::optional<double> mean_certainty;
    std::uint32_t group_size = 0;
    std::uint32_t banned_count = 0;
    std::uint32_t certainty_n = 0;   // members with at least one incident link

    friend bool operator==(const GroupMetricsRow&, const GroupMetricsRow&) = default;
};

/// Complete mutable state of one simulation, including the random stream.
struct SimState {
    SimParams params;
    DirectedGraph graph;
    std::vector<AgentState> agents;
    std::uint32_t step = 0;
    Rng rng;
    std::optional<AgentId> authority;

    // Instrumentation, off by default.
    std::optional<std::vector<LinkCreation>> link_log;
    bool check_each_step = false;
    MixedOrder mixed_order = MixedOrder::DecentralizedFirst;

    Belief belief(AgentId u) const { return agents[u].belief; }
};

/// Every agent receives one broadcast per out-link, tallied as assent or
/// dissent against its own belief. Counts are computed from the link set as it
/// stands at the start of the call.
void broadcast_step(SimState& state);

/// Each agent, in id order, gets one chance to add an out-link. Returns the
/// number of links created.
std::size_t link_formation_step(SimState& state);

/// The authority inspects one random unbanned agent and, if it is radical,
/// bans it with probability `tolerance`. Returns the banned agent, if any.
std::optional<AgentId> centralized_censorship_step(SimState& state);

/// Every mainstream agent samples one followed agent and unfollows it if it is
/// radical. Returns the number of links removed.
std::size_t decentralized_censorship_step(SimState& state);

/// Social certainty of one agent: share of incident links whose other end
/// holds the same belief. Absent for isolated agents.
std::optional<double> agent_certainty(const SimState& state, AgentId u);

/// One row per belief, Mainstream first.
std::array<GroupMetricsRow, 2> compute_group_metrics(const SimState& state, std::uint32_t step);

}  // namespace censorsim
