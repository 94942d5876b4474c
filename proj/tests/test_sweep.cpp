#include "doctest.h"

#include <cmath>
#include <set>

#include "censorsim/sweep.hpp"

using namespace censorsim;

namespace {

bool one_per_stratum(const SweepDesign& d, std::size_t j) {
    std::vector<int> hits(d.n_samples, 0);
    for (const auto& s : d.samples) {
        const auto& r = d.ranges[j];
        if (!(s[j] >= r.low && s[j] < r.high)) return false;
        hits[static_cast<std::size_t>(std::floor((s[j] - r.low) / (r.high - r.low) * d.n_samples))]++;
    }
    for (int h : hits)
        if (h != 1) return false;
    return true;
}

}  // namespace

TEST_CASE("four samples land one per quarter") {
    const auto d = lhs_sample({{SweptParam::Homophily, 0.0, 1.0}}, 4, 123);
    REQUIRE(d.samples.size() == 4);
    std::set<int> quarters;
    for (const auto& s : d.samples) quarters.insert(static_cast<int>(s[0] * 4));
    CHECK(quarters == std::set<int>{0, 1, 2, 3});
}

TEST_CASE("a single sample lies inside the box") {
    const auto d = lhs_sample({{SweptParam::Homophily, 0.2, 0.4}, {SweptParam::Tolerance, 0.5, 0.6}}, 1, 9);
    CHECK(d.samples[0][0] >= 0.2);
    CHECK(d.samples[0][0] < 0.4);
    CHECK(d.samples[0][1] >= 0.5);
    CHECK(d.samples[0][1] < 0.6);
}

TEST_CASE("stratification holds for every swept parameter") {
    std::vector<ParamRange> ranges{{SweptParam::Homophily, 0.0, 1.0},
                                   {SweptParam::Tolerance, 0.25, 0.75},
                                   {SweptParam::RadicalFraction, 0.1, 0.9}};
    for (std::size_t n : {4u, 16u, 128u, 1000u})
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto d = lhs_sample(ranges, n, seed);
            for (std::size_t j = 0; j < ranges.size(); ++j) CHECK(one_per_stratum(d, j));
        }
}

TEST_CASE("designs are seed-deterministic") {
    const auto a = lhs_sample(default_ranges(), 16, 77);
    const auto b = lhs_sample(default_ranges(), 16, 77);
    const auto c = lhs_sample(default_ranges(), 16, 78);
    CHECK(a.samples == b.samples);
    CHECK(a.samples != c.samples);
}

TEST_CASE("invalid designs are rejected") {
    CHECK_THROWS_AS(lhs_sample(default_ranges(), 0, 1), ParameterError);
    CHECK_THROWS_AS(lhs_sample({}, 4, 1), ParameterError);
    CHECK_THROWS_AS(lhs_sample({{SweptParam::Homophily, 0.5, 0.5}}, 4, 1), ParameterError);
    CHECK_THROWS_AS(lhs_sample({{SweptParam::Tolerance, -0.1, 0.5}}, 4, 1), ParameterError);
    CHECK_THROWS_AS(lhs_sample({{SweptParam::Tolerance, 0, 1}, {SweptParam::Tolerance, 0, 1}}, 4, 1), ParameterError);
    CHECK_THROWS_AS(parse_swept_param("beta"), ParameterError);
}

TEST_CASE("sample means converge to the range midpoint") {
    // 3-sigma bound computed for iid uniform draws; stratification only
    // shrinks the variance.
    const std::size_t designs = 200, n = 10;
    std::vector<double> sums(2, 0.0);
    for (std::size_t i = 0; i < designs; ++i) {
        const auto d = lhs_sample({{SweptParam::Homophily, 0.0, 1.0}, {SweptParam::Tolerance, 0.2, 0.6}}, n, 1000 + i);
        for (const auto& s : d.samples) {
            sums[0] += s[0];
            sums[1] += s[1];
        }
    }
    const double total = static_cast<double>(designs * n);
    CHECK(std::abs(sums[0] / total - 0.5) < 3.0 * std::sqrt(1.0 / 12.0 / total));
    CHECK(std::abs(sums[1] / total - 0.4) < 3.0 * 0.4 * std::sqrt(1.0 / 12.0 / total));
}

TEST_CASE("paired sweep produces three runs per sample sharing everything but the mode") {
    SimParams fixed;
    fixed.n_steps = 20;
    const auto d = lhs_sample(default_ranges(), 2, 5);
    const auto r = run_sweep(d, fixed, 1);
    REQUIRE(r.runs.size() == 6);
    for (std::size_t s = 0; s < 2; ++s) {
        const auto& base = r.runs[3 * s];
        CHECK(base.mode == CensorshipMode::Decentralized);
        const auto base_rows = run_simulation(base.params).rows;
        for (std::size_t m = 0; m < 3; ++m) {
            const auto& rec = r.runs[3 * s + m];
            CHECK(rec.sample_index == s);
            CHECK(rec.mode == kModes[m]);
            CHECK(rec.params.mode == kModes[m]);
            SimParams same = rec.params;
            same.mode = base.params.mode;
            CHECK(same == base.params);
            CHECK(rec.params.homophily == d.samples[s][0]);
            CHECK(rec.params.tolerance == d.samples[s][1]);
            CHECK(rec.params.seed == derive_seed(5, s));
            REQUIRE(rec.final_rows.has_value());
            const auto rows = run_simulation(rec.params).rows;
            // Identical step-0 baseline across the three modes.
            CHECK(rows[0] == base_rows[0]);
            CHECK(rows[1] == base_rows[1]);
        }
    }
}

TEST_CASE("unpaired sweep keeps the template mode") {
    SimParams fixed;
    fixed.n_steps = 5;
    fixed.mode = CensorshipMode::Mixed;
    const auto d = lhs_sample(default_ranges(), 3, 5, false);
    const auto r = run_sweep(d, fixed, 2);
    REQUIRE(r.runs.size() == 3);
    for (const auto& rec : r.runs) CHECK(rec.mode == CensorshipMode::Mixed);
}

TEST_CASE("results do not depend on the worker count") {
    SimParams fixed;
    fixed.n_agents = 40;
    fixed.n_steps = 40;
    const auto d = lhs_sample(default_ranges(), 6, 31);
    const auto one = run_sweep(d, fixed, 1);
    for (unsigned jobs : {2u, 8u}) {
        const auto many = run_sweep(d, fixed, jobs);
        REQUIRE(many.runs.size() == one.runs.size());
        for (std::size_t i = 0; i < one.runs.size(); ++i) {
            CHECK(many.runs[i].sample_index == one.runs[i].sample_index);
            CHECK(many.runs[i].mode == one.runs[i].mode);
            CHECK(many.runs[i].params == one.runs[i].params);
            CHECK(many.runs[i].final_rows == one.runs[i].final_rows);
        }
    }
}

TEST_CASE("initialization failures are recorded per run") {
    SimParams fixed;
    fixed.radical_fraction = 1.0;
    fixed.n_steps = 3;
    const auto r = run_sweep(lhs_sample(default_ranges(), 2, 1), fixed, 2);
    for (const auto& rec : r.runs) {
        if (rec.mode == CensorshipMode::Decentralized) {
            CHECK(rec.final_rows.has_value());
            CHECK(rec.error.empty());
        } else {
            CHECK_FALSE(rec.final_rows.has_value());
            CHECK(rec.error.find("belief 0") != std::string::npos);
        }
    }
}

TEST_CASE("per-sample seeds are stable under design growth and distinct") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(42, i));
    CHECK(seen.size() == 1000);
    const auto small = lhs_sample(default_ranges(), 3, 42);
    const auto large = lhs_sample(default_ranges(), 9, 42);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(sample_params(small, {}, i, CensorshipMode::Mixed).seed == sample_params(large, {}, i, CensorshipMode::Mixed).seed);
}
