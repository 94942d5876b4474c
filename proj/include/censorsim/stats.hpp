#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace censorsim::stats {

class StatsError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Labelled groups of observations, in presentation order.
struct GroupedSample {
    std::vector<std::pair<std::string, std::vector<double>>> groups;

    std::size_t total() const;
};

struct Ranking {
    std::vector<double> ranks;   // mid-ranks, 1-based, aligned with the input
    double tie_term = 0.0;       // sum over tie blocks of t^3 - t
};

/// Mid-ranks of `values` (ties share the mean of the ranks they span).
Ranking midranks(std::span<const double> values);

struct PairwiseComparison {
    std::string group_a;
    std::string group_b;
    double z = 0.0;            // (mean rank a - mean rank b) / standard error
    double p_raw = 1.0;        // two-sided normal
    double p_adjusted = 1.0;   // Bonferroni over all pairs
    bool significant = false;  // p_adjusted < alpha
};

struct TestReport {
    double statistic = 0.0;
    int degrees_of_freedom = 0;
    double p_value = 1.0;
    std::vector<double> mean_ranks;   // per group, input order
    std::optional<std::vector<PairwiseComparison>> pairwise;
};

/// Kruskal-Wallis H with tie correction; p from chi-squared with
/// groups - 1 degrees of freedom. When every observation is equal H = 0 and
/// p = 1. Throws StatsError for fewer than two groups, an empty group (named)
/// or fewer than three observations.
TestReport kruskal_wallis(const GroupedSample& sample);

/// Dunn's pairwise z-tests on the pooled mid-ranks, tie-corrected, with a
/// Bonferroni adjustment. Pairs come in (0,1), (0,2), ..., (1,2), ... order.
std::vector<PairwiseComparison> dunn_posthoc(const GroupedSample& sample, double alpha = 0.05);

/// Survival function of the chi-squared distribution.
double chi_squared_sf(double x, int degrees_of_freedom);

enum class CorrelationMethod { Spearman, Pearson };

/// Pearson correlation; absent when either input has zero variance.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);
std::optional<double> spearman(std::span<const double> x, std::span<const double> y);

/// Symmetric correlation matrix of equally long columns. Entries involving a
/// zero-variance column are absent (including its diagonal).
std::vector<std::vector<std::optional<double>>> correlation_matrix(
    const std::vector<std::vector<double>>& columns, CorrelationMethod method = CorrelationMethod::Spearman);

double median(std::vector<double> values);

}  // namespace censorsim::stats
