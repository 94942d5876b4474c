#include "censorsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

namespace censorsim {

std::string_view to_string(SweptParam p) noexcept {
    switch (p) {
        case SweptParam::Homophily: return "homophily";
        case SweptParam::Tolerance: return "tolerance";
        case SweptParam::RadicalFraction: return "radical_fraction";
    }
    return "unknown";
}

SweptParam parse_swept_param(std::string_view name) {
    for (auto p : {SweptParam::Homophily, SweptParam::Tolerance, SweptParam::RadicalFraction})
        if (name == to_string(p)) return p;
    throw ParameterError("swept parameter: expected homophily, tolerance or radical_fraction (got \"" +
                         std::string(name) + "\")");
}

std::size_t stratum_of(const ParamRange& range, std::size_t n, double x) {
    const double scaled = (x - range.low) / (range.high - range.low) * static_cast<double>(n);
    return static_cast<std::size_t>(std::clamp(std::floor(scaled), 0.0, static_cast<double>(n - 1)));
}

std::vector<ParamRange> default_ranges() {
    return {{SweptParam::Homophily, 0.0, 1.0}, {SweptParam::Tolerance, 0.0, 1.0}};
}

SweepDesign lhs_sample(std::vector<ParamRange> ranges, std::size_t n_samples, std::uint64_t base_seed,
                       bool paired_modes) {
    if (n_samples == 0) throw ParameterError("n_samples: must be >= 1");
    if (ranges.empty()) throw ParameterError("ranges: at least one swept parameter required");
    for (const auto& r : ranges) {
        const std::string name(to_string(r.param));
        if (!(r.low < r.high))
            throw ParameterError(name + ": range low must be < high (got [" + std::to_string(r.low) + ", " +
                                 std::to_string(r.high) + "])");
        if (r.low < 0.0 || r.high > 1.0)
            throw ParameterError(name + ": range must lie within [0,1]");
    }
    for (std::size_t a = 0; a < ranges.size(); ++a)
        for (std::size_t b = a + 1; b < ranges.size(); ++b)
            if (ranges[a].param == ranges[b].param)
                throw ParameterError(std::string(to_string(ranges[a].param)) + ": swept twice");

    SweepDesign design;
    design.n_samples = n_samples;
    design.base_seed = base_seed;
    design.paired_modes = paired_modes;
    design.samples.assign(n_samples, std::vector<double>(ranges.size()));

    Rng rng(splitmix64(base_seed));
    std::vector<std::size_t> strata(n_samples);
    for (std::size_t j = 0; j < ranges.size(); ++j) {
        const auto& r = ranges[j];
        std::iota(strata.begin(), strata.end(), std::size_t{0});
        rng.shuffle(strata);
        const double width = (r.high - r.low) / static_cast<double>(n_samples);
        for (std::size_t i = 0; i < n_samples; ++i) {
            const std::size_t s = strata[i];
            double x = r.low + (static_cast<double>(s) + rng.uniform01()) * width;
            // Rounding can push a point onto the next stratum's edge.
            while (x > r.low && stratum_of(r, n_samples, x) > s) x = std::nextafter(x, r.low);
            while (stratum_of(r, n_samples, x) < s) x = std::nextafter(x, r.high);
            design.samples[i][j] = x;
        }
    }
    design.ranges = std::move(ranges);
    return design;
}

SimParams sample_params(const SweepDesign& design, const SimParams& fixed, std::size_t sample,
                        CensorshipMode mode) {
    SimParams p = fixed;
    for (std::size_t j = 0; j < design.ranges.size(); ++j) {
        const double v = design.samples.at(sample).at(j);
        switch (design.ranges[j].param) {
            case SweptParam::Homophily: p.homophily = v; break;
            case SweptParam::Tolerance: p.tolerance = v; break;
            case SweptParam::RadicalFraction: p.radical_fraction = v; break;
        }
    }
    p.seed = derive_seed(design.base_seed, sample);
    if (design.paired_modes) p.mode = mode;
    return p;
}

SweepResult run_sweep(const SweepDesign& design, const SimParams& fixed, unsigned jobs) {
    SweepResult result;
    result.runs.resize(design.run_count());
    for (std::size_t i = 0; i < result.runs.size(); ++i) {
        auto& rec = result.runs[i];
        rec.sample_index = design.paired_modes ? i / 3 : i;
        rec.mode = design.paired_modes ? kModes[i % 3] : fixed.mode;
        rec.params = sample_params(design, fixed, rec.sample_index, rec.mode);
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < result.runs.size(); i = next.fetch_add(1)) {
            auto& rec = result.runs[i];
            const auto start = std::chrono::steady_clock::now();
            try {
                rec.final_rows = run_simulation(rec.params).final_rows();
            } catch (const std::exception& e) {
                rec.error = e.what();
            }
            rec.duration = std::chrono::steady_clock::now() - start;
        }
    };

    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(result.runs.size())));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(jobs);
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    }
    return result;
}

}  // namespace censorsim
