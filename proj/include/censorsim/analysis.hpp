#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "censorsim/io.hpp"
#include "censorsim/stats.hpp"
#include "censorsim/sweep.hpp"

namespace censorsim {

/// Final-step group metric used as the per-run observation.
enum class Metric { Assent, Dissent, Divergence, Degree, Certainty };

std::string_view to_string(Metric m) noexcept;
Metric parse_metric(std::string_view name);

/// Observations grouped by censorship mode (decentralized, centralized,
/// mixed). Failed runs and runs where the metric is absent are skipped.
stats::GroupedSample group_by_mode(const SweepResult& result, Metric metric, Belief belief);
stats::GroupedSample group_by_mode(const io::CsvTable& sweep_csv, Metric metric, Belief belief);

/// Numeric per-run columns of a sweep CSV for the correlation heatmap. Rows
/// with an empty field in any selected column are dropped.
struct CorrelationInput {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;
    std::size_t dropped_rows = 0;
};

CorrelationInput correlation_input(const io::CsvTable& sweep_csv);

/// Summary of a mode comparison: omnibus test, post-hoc pairs, medians.
struct ModeComparison {
    stats::GroupedSample sample;
    stats::TestReport report;   // pairwise filled
    std::vector<double> medians;
};

ModeComparison compare_modes(stats::GroupedSample sample, double alpha = 0.05);

}  // namespace censorsim
