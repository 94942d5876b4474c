#include "censorsim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>

namespace censorsim::stats {

std::size_t GroupedSample::total() const {
    std::size_t n = 0;
    for (const auto& [label, values] : groups) n += values.size();
    return n;
}

Ranking midranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    Ranking out;
    out.ranks.resize(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i + 1;
        while (j < n && values[order[j]] == values[order[i]]) ++j;
        // Positions i..j-1 hold ranks i+1..j.
        const double rank = 0.5 * static_cast<double>(i + 1 + j);
        for (std::size_t t = i; t < j; ++t) out.ranks[order[t]] = rank;
        const double t = static_cast<double>(j - i);
        out.tie_term += t * t * t - t;
        i = j;
    }
    return out;
}

double chi_squared_sf(double x, int degrees_of_freedom) {
    if (degrees_of_freedom < 1) throw StatsError("chi-squared: degrees of freedom must be >= 1");
    if (x <= 0.0) return 1.0;
    return boost::math::gamma_q(0.5 * degrees_of_freedom, 0.5 * x);
}

namespace {

struct PooledRanks {
    std::vector<double> rank_sums;
    std::vector<std::size_t> sizes;
    double n = 0.0;
    double tie_term = 0.0;
};

void check_sample(const GroupedSample& sample) {
    if (sample.groups.size() < 2) throw StatsError("need at least two groups");
    for (const auto& [label, values] : sample.groups)
        if (values.empty()) throw StatsError("group \"" + label + "\" is empty");
    if (sample.total() < 3) throw StatsError("need at least three observations in total");
}

PooledRanks pool(const GroupedSample& sample) {
    std::vector<double> all;
    all.reserve(sample.total());
    for (const auto& [label, values] : sample.groups) all.insert(all.end(), values.begin(), values.end());
    const Ranking r = midranks(all);

    PooledRanks p;
    p.n = static_cast<double>(all.size());
    p.tie_term = r.tie_term;
    std::size_t offset = 0;
    for (const auto& [label, values] : sample.groups) {
        double sum = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) sum += r.ranks[offset + i];
        p.rank_sums.push_back(sum);
        p.sizes.push_back(values.size());
        offset += values.size();
    }
    return p;
}

}  // namespace

TestReport kruskal_wallis(const GroupedSample& sample) {
    check_sample(sample);
    const PooledRanks p = pool(sample);

    TestReport report;
    report.degrees_of_freedom = static_cast<int>(sample.groups.size()) - 1;
    double weighted = 0.0;
    for (std::size_t g = 0; g < p.sizes.size(); ++g) {
        const double ng = static_cast<double>(p.sizes[g]);
        weighted += p.rank_sums[g] * p.rank_sums[g] / ng;
        report.mean_ranks.push_back(p.rank_sums[g] / ng);
    }
    const double correction = 1.0 - p.tie_term / (p.n * p.n * p.n - p.n);
    if (correction <= 0.0) {
        report.statistic = 0.0;
        report.p_value = 1.0;
        return report;
    }
    const double h = 12.0 / (p.n * (p.n + 1.0)) * weighted - 3.0 * (p.n + 1.0);
    report.statistic = std::max(0.0, h / correction);
    report.p_value = chi_squared_sf(report.statistic, report.degrees_of_freedom);
    return report;
}

std::vector<PairwiseComparison> dunn_posthoc(const GroupedSample& sample, double alpha) {
    check_sample(sample);
    if (!(alpha > 0.0 && alpha < 1.0)) throw StatsError("alpha must lie in (0,1)");
    const PooledRanks p = pool(sample);
    const std::size_t k = p.sizes.size();
    const double pairs = static_cast<double>(k * (k - 1) / 2);
    const double variance = p.n * (p.n + 1.0) / 12.0 - p.tie_term / (12.0 * (p.n - 1.0));

    std::vector<PairwiseComparison> out;
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            PairwiseComparison c;
            c.group_a = sample.groups[a].first;
            c.group_b = sample.groups[b].first;
            const double na = static_cast<double>(p.sizes[a]);
            const double nb = static_cast<double>(p.sizes[b]);
            const double diff = p.rank_sums[a] / na - p.rank_sums[b] / nb;
            const double se = std::sqrt(variance * (1.0 / na + 1.0 / nb));
            if (se > 0.0) c.z = diff / se;
            c.p_raw = std::erfc(std::abs(c.z) / std::sqrt(2.0));
            c.p_adjusted = std::min(1.0, c.p_raw * pairs);
            c.significant = c.p_adjusted < alpha;
            out.push_back(std::move(c));
        }
    }
    return out;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw StatsError("correlation: columns differ in length");
    const std::size_t n = x.size();
    if (n < 2) return std::nullopt;
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::optional<double> spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw StatsError("correlation: columns differ in length");
    const auto rx = midranks(x);
    const auto ry = midranks(y);
    return pearson(rx.ranks, ry.ranks);
}

std::vector<std::vector<std::optional<double>>> correlation_matrix(const std::vector<std::vector<double>>& columns,
                                                                   CorrelationMethod method) {
    const std::size_t k = columns.size();
    if (k < 2) throw StatsError("correlation matrix: need at least two columns");
    const std::size_t rows = columns.front().size();
    for (const auto& c : columns)
        if (c.size() != rows) throw StatsError("correlation matrix: columns differ in length");
    if (rows < 3) throw StatsError("correlation matrix: need at least three rows");

    std::vector<std::vector<double>> prepared;
    prepared.reserve(k);
    for (const auto& c : columns) prepared.push_back(method == CorrelationMethod::Spearman ? midranks(c).ranks : c);

    std::vector<std::vector<std::optional<double>>> m(k, std::vector<std::optional<double>>(k));
    for (std::size_t a = 0; a < k; ++a) {
        // Zero variance leaves the diagonal absent too.
        m[a][a] = pearson(prepared[a], prepared[a]).has_value() ? std::optional<double>(1.0) : std::nullopt;
        for (std::size_t b = a + 1; b < k; ++b) m[a][b] = m[b][a] = pearson(prepared[a], prepared[b]);
    }
    return m;
}

double median(std::vector<double> values) {
    if (values.empty()) throw StatsError("median of empty sample");
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + mid, values.end());
    const double upper = values[mid];
    if (values.size() % 2 == 1) return upper;
    const double lower = *std::max_element(values.begin(), values.begin() + mid);
    return 0.5 * (lower + upper);
}

}  // namespace censorsim::stats
