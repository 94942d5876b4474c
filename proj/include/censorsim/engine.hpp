#pragma once

#include <array>
#include <string>
#include <vector>

#include "censorsim/model.hpp"

namespace censorsim {

struct SimOptions {
    bool record_links = false;     // fill SimState::link_log
    bool check_each_step = false;  // full graph invariant scan after every step
    MixedOrder mixed_order = MixedOrder::DecentralizedFirst;
};

/// Builds the step-0 state: small-world graph, beliefs drawn independently
/// with P(radical) = radical_fraction, and (for Centralized and Mixed) an
/// authority chosen uniformly among mainstream agents. All draws come from
/// one stream seeded with params.seed, in that order.
///
/// Throws ParameterError for invalid params, InitializationError when an
/// authority is required but no mainstream agent exists.
SimState init_simulation(const SimParams& params, const SimOptions& options = {});

/// Advances one step: broadcast, link formation, then the censorship
/// mechanism(s) for the mode. Returns the metric rows for the new step.
std::array<GroupMetricsRow, 2> step(SimState& state);

struct RunResult {
    SimParams params;
    std::vector<GroupMetricsRow> rows;   // two per step, steps 0..n_steps

    std::array<GroupMetricsRow, 2> final_rows() const { return {rows[rows.size() - 2], rows.back()}; }
};

/// Runs the remaining steps of `state` and returns its rows from the current
/// step on.
std::vector<GroupMetricsRow> continue_simulation(SimState& state);

RunResult run_simulation(const SimParams& params, const SimOptions& options = {});

/// Snapshot of the full state (params, agents, graph, step, random stream)
/// as a JSON document. Restoring it and continuing reproduces the same
/// trajectory as an uninterrupted run. Instrumentation options are not saved.
std::string serialize_state(const SimState& state);
SimState deserialize_state(const std::string& text);

}  // namespace censorsim
