#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "censorsim/engine.hpp"

namespace censorsim {

enum class SweptParam : std::uint8_t { Homophily, Tolerance, RadicalFraction };

std::string_view to_string(SweptParam p) noexcept;
SweptParam parse_swept_param(std::string_view name);

struct ParamRange {
    SweptParam param = SweptParam::Homophily;
    double low = 0.0;
    double high = 1.0;
};

/// Index of the equal-width stratum of [low, high) that holds x, for a design
/// of n strata.
std::size_t stratum_of(const ParamRange& range, std::size_t n, double x);

struct SweepDesign {
    std::vector<ParamRange> ranges;
    std::vector<std::vector<double>> samples;   // samples[i][j] is ranges[j]'s value
    std::size_t n_samples = 0;
    std::uint64_t base_seed = 0;
    bool paired_modes = true;

    std::size_t run_count() const { return paired_modes ? 3 * n_samples : n_samples; }
};

/// Latin hypercube design: for every range independently, the stratum indices
/// 0..n-1 are shuffled and one uniform point is drawn inside each assigned
/// stratum. The design stream is seeded from base_seed only.
SweepDesign lhs_sample(std::vector<ParamRange> ranges, std::size_t n_samples, std::uint64_t base_seed,
                       bool paired_modes = true);

/// Default design space: homophily and tolerance over [0, 1].
std::vector<ParamRange> default_ranges();

struct RunRecord {
    std::size_t sample_index = 0;
    CensorshipMode mode = CensorshipMode::Decentralized;
    SimParams params;
    std::optional<std::array<GroupMetricsRow, 2>> final_rows;   // absent on error
    std::string error;
    std::chrono::duration<double, std::milli> duration{};
};

struct SweepResult {
    std::vector<RunRecord> runs;   // ordered by (sample_index, mode)
};

/// Parameters of run `sample` for `mode`: the template with the swept values
/// and the derived per-sample seed filled in. Unpaired designs keep the
/// template's mode.
SimParams sample_params(const SweepDesign& design, const SimParams& fixed, std::size_t sample,
                        CensorshipMode mode);

/// Executes every run of the design on `jobs` worker threads. A run that fails
/// to initialize is recorded with its error instead of aborting the sweep.
/// The result does not depend on `jobs` or on scheduling.
SweepResult run_sweep(const SweepDesign& design, const SimParams& fixed, unsigned jobs = 1);

}  // namespace censorsim
