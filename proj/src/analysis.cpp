#include "censorsim/analysis.hpp"

namespace censorsim {

std::string_view to_string(Metric m) noexcept {
    switch (m) {
        case Metric::Assent: return "assent";
        case Metric::Dissent: return "dissent";
        case Metric::Divergence: return "divergence";
        case Metric::Degree: return "degree";
        case Metric::Certainty: return "certainty";
    }
    return "unknown";
}

Metric parse_metric(std::string_view name) {
    for (auto m : {Metric::Assent, Metric::Dissent, Metric::Divergence, Metric::Degree, Metric::Certainty})
        if (name == to_string(m)) return m;
    throw ParameterError("metric: expected assent, dissent, divergence, degree or certainty (got \"" +
                         std::string(name) + "\")");
}

namespace {

const std::optional<double>& pick(const GroupMetricsRow& row, Metric metric) {
    switch (metric) {
        case Metric::Assent: return row.mean_assent;
        case Metric::Dissent: return row.mean_dissent;
        case Metric::Divergence: return row.mean_divergence;
        case Metric::Degree: return row.mean_degree;
        case Metric::Certainty: return row.mean_certainty;
    }
    return row.mean_dissent;
}

stats::GroupedSample empty_mode_groups() {
    stats::GroupedSample s;
    for (auto m : kModes) s.groups.emplace_back(std::string(to_string(m)), std::vector<double>{});
    return s;
}

}  // namespace

stats::GroupedSample group_by_mode(const SweepResult& result, Metric metric, Belief belief) {
    auto sample = empty_mode_groups();
    for (const auto& rec : result.runs) {
        if (!rec.final_rows) continue;
        if (const auto& v = pick((*rec.final_rows)[to_int(belief)], metric))
            sample.groups[static_cast<std::size_t>(rec.mode)].second.push_back(*v);
    }
    return sample;
}

stats::GroupedSample group_by_mode(const io::CsvTable& sweep_csv, Metric metric, Belief belief) {
    auto sample = empty_mode_groups();
    const std::size_t mode_col = sweep_csv.column("mode");
    const std::size_t status_col = sweep_csv.column("status");
    const std::size_t value_col = sweep_csv.column("b" + std::to_string(to_int(belief)) + "_mean_" +
                                                   std::string(to_string(metric)));
    for (const auto& row : sweep_csv.rows) {
        if (row[status_col] != "ok") continue;
        const auto mode = parse_mode(row[mode_col]);
        if (auto v = io::parse_real(row[value_col]))
            sample.groups[static_cast<std::size_t>(mode)].second.push_back(*v);
    }
    return sample;
}

CorrelationInput correlation_input(const io::CsvTable& sweep_csv) {
    CorrelationInput in;
    in.names = {"homophily", "tolerance", "radical_fraction"};
    for (const char* prefix : {"b0_", "b1_"})
        for (const char* name : {"mean_assent", "mean_dissent", "mean_divergence", "mean_degree", "mean_certainty",
                                 "banned_count"})
            in.names.push_back(std::string(prefix) + name);

    std::vector<std::size_t> cols;
    for (const auto& n : in.names) cols.push_back(sweep_csv.column(n));
    const std::size_t status_col = sweep_csv.column("status");
    in.columns.assign(cols.size(), {});
    for (const auto& row : sweep_csv.rows) {
        if (row[status_col] != "ok") {
            ++in.dropped_rows;
            continue;
        }
        std::vector<double> values;
        for (std::size_t c : cols)
            if (auto v = io::parse_real(row[c])) values.push_back(*v);
        if (values.size() != cols.size()) {
            ++in.dropped_rows;
            continue;
        }
        for (std::size_t i = 0; i < cols.size(); ++i) in.columns[i].push_back(values[i]);
    }
    return in;
}

ModeComparison compare_modes(stats::GroupedSample sample, double alpha) {
    ModeComparison out;
    out.report = stats::kruskal_wallis(sample);
    out.report.pairwise = stats::dunn_posthoc(sample, alpha);
    for (const auto& [label, values] : sample.groups) out.medians.push_back(stats::median(values));
    out.sample = std::move(sample);
    return out;
}

}  // namespace censorsim
