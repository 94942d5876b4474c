#include "censorsim/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "CLI11.hpp"

#include "censorsim/analysis.hpp"
#include "censorsim/config.hpp"
#include "censorsim/engine.hpp"
#include "censorsim/io.hpp"
#include "censorsim/netgen.hpp"
#include "censorsim/sweep.hpp"

namespace censorsim::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    bool force = false;
};

struct SweepArgs {
    std::string config;
    std::optional<std::size_t> samples;
    std::optional<std::uint64_t> seed;
    unsigned jobs = 1;
    std::string out;
    bool force = false;
    bool sweep_radical_fraction = false;
};

struct StatsArgs {
    std::string in;
    std::string metric;
    int belief = 1;
    std::string out;
    double alpha = 0.05;
    std::string method = "spearman";
    bool force = false;
};

struct NetworkArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::size_t seeds = 30;
    std::size_t baselines = 20;
    std::string out;
    bool force = false;
};

Config load_config(const std::string& path) { return path.empty() ? Config{} : parse_config(path); }

int cmd_run(const RunArgs& a, std::ostream& out) {
    const auto started = io::utc_timestamp();
    Config cfg = load_config(a.config);
    if (a.seed) cfg.sim.seed = *a.seed;

    SimState state = init_simulation(cfg.sim);
    std::ostringstream edges;
    write_edge_list(edges, state.graph);
    RunResult result{cfg.sim, continue_simulation(state)};

    const fs::path dir = a.out;
    io::prepare_output_dir(dir, a.force);
    io::emit_run_csv(result, dir / "run.csv");
    io::write_text_file(dir / "edges_initial.txt", edges.str());
    io::write_manifest(dir, {"run", to_json(cfg.sim), cfg.sim.seed, started, io::utc_timestamp()},
                       {"run.csv", "edges_initial.txt"});

    const auto fin = result.final_rows();
    out << "steps=" << cfg.sim.n_steps << " mode=" << to_string(cfg.sim.mode) << '\n';
    for (const auto& r : fin)
        out << "belief " << to_int(r.belief) << ": mean_dissent=" << io::format_real(r.mean_dissent)
            << " mean_certainty=" << io::format_real(r.mean_certainty) << " banned=" << r.banned_count << '\n';
    return kExitOk;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
    const auto started = io::utc_timestamp();
    Config cfg = load_config(a.config);
    if (a.samples) cfg.samples = *a.samples;
    if (a.seed) cfg.sim.seed = *a.seed;
    if (a.sweep_radical_fraction) cfg.sweep_radical_fraction = true;

    auto ranges = default_ranges();
    if (cfg.sweep_radical_fraction) ranges.push_back({SweptParam::RadicalFraction, 0.0, 1.0});
    const SweepDesign design = lhs_sample(ranges, cfg.samples, cfg.sim.seed, true);

    const fs::path dir = a.out;
    io::prepare_output_dir(dir, a.force);
    const auto t0 = std::chrono::steady_clock::now();
    const SweepResult result = run_sweep(design, cfg.sim, a.jobs);
    const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - t0;

    {
        std::ofstream csv(dir / "sweep.csv", std::ios::binary);
        if (!csv) throw io::IoError("cannot write " + (dir / "sweep.csv").string());
        io::write_sweep_csv(csv, result);
    }

    json ranges_json = json::array();
    for (const auto& r : design.ranges) ranges_json.push_back({{"name", to_string(r.param)}, {"low", r.low}, {"high", r.high}});
    json durations = json::array();
    std::size_t failed = 0;
    for (const auto& rec : result.runs) {
        durations.push_back(rec.duration.count());
        failed += !rec.final_rows.has_value();
    }
    io::ManifestInfo info{"sweep", to_json(cfg), cfg.sim.seed, started, io::utc_timestamp()};
    info.extra = {{"design", {{"method", "latin_hypercube"}, {"n_samples", design.n_samples},
                              {"paired_modes", design.paired_modes}, {"ranges", ranges_json},
                              {"seed_derivation", "splitmix64"}}},
                  {"jobs", a.jobs},
                  {"wall_seconds", wall.count()},
                  {"run_durations_ms", durations}};
    io::write_manifest(dir, info, {"sweep.csv"});

    out << "runs=" << result.runs.size() << " failed=" << failed << " wall_seconds=" << wall.count() << '\n';
    return kExitOk;
}

int cmd_stats(const StatsArgs& a, std::ostream& out) {
    const auto started = io::utc_timestamp();
    const io::CsvTable table = io::read_csv(fs::path(a.in));
    const Metric metric = parse_metric(a.metric);
    const Belief belief = a.belief == 1 ? Belief::Radical : Belief::Mainstream;
    const auto method = a.method == "pearson" ? stats::CorrelationMethod::Pearson : stats::CorrelationMethod::Spearman;

    const ModeComparison cmp = compare_modes(group_by_mode(table, metric, belief), a.alpha);

    const fs::path dir = a.out;
    io::prepare_output_dir(dir, a.force);

    std::ostringstream summary;
    summary << "metric=" << to_string(metric) << '\n'
            << "belief=" << a.belief << '\n'
            << "alpha=" << io::format_real(a.alpha) << '\n'
            << "groups=decentralized,centralized,mixed\n";
    for (std::size_t g = 0; g < cmp.sample.groups.size(); ++g) {
        const auto& label = cmp.sample.groups[g].first;
        summary << "n_" << label << '=' << cmp.sample.groups[g].second.size() << '\n'
                << "median_" << label << '=' << io::format_real(cmp.medians[g]) << '\n'
                << "mean_rank_" << label << '=' << io::format_real(cmp.report.mean_ranks[g]) << '\n';
    }
    summary << "H=" << io::format_real(cmp.report.statistic) << '\n'
            << "df=" << cmp.report.degrees_of_freedom << '\n'
            << "p_value=" << io::format_real(cmp.report.p_value) << '\n'
            << "significant=" << (cmp.report.p_value < a.alpha ? "true" : "false") << '\n';
    io::write_text_file(dir / "kruskal_wallis.txt", summary.str());

    std::ostringstream dunn;
    dunn << "group_a,group_b,z,p_raw,p_adjusted,significant\n";
    for (const auto& c : *cmp.report.pairwise)
        dunn << c.group_a << ',' << c.group_b << ',' << io::format_real(c.z) << ',' << io::format_real(c.p_raw) << ','
             << io::format_real(c.p_adjusted) << ',' << (c.significant ? "true" : "false") << '\n';
    io::write_text_file(dir / "dunn.csv", dunn.str());

    const CorrelationInput corr_in = correlation_input(table);
    const auto corr = stats::correlation_matrix(corr_in.columns, method);
    std::ostringstream corr_csv;
    corr_csv << "variable";
    for (const auto& n : corr_in.names) corr_csv << ',' << n;
    corr_csv << '\n';
    for (std::size_t i = 0; i < corr.size(); ++i) {
        corr_csv << corr_in.names[i];
        for (const auto& v : corr[i]) corr_csv << ',' << io::format_real(v);
        corr_csv << '\n';
    }
    io::write_text_file(dir / "correlation.csv", corr_csv.str());

    io::ManifestInfo info{"stats",
                          {{"input", a.in},
                           {"input_sha256", io::sha256_file(a.in)},
                           {"metric", to_string(metric)},
                           {"belief", a.belief},
                           {"alpha", a.alpha},
                           {"correlation_method", a.method}},
                          0,
                          started,
                          io::utc_timestamp()};
    info.extra = {{"correlation_rows_dropped", corr_in.dropped_rows}};
    io::write_manifest(dir, info, {"kruskal_wallis.txt", "dunn.csv", "correlation.csv"});

    out << summary.str();
    for (const auto& c : *cmp.report.pairwise)
        out << c.group_a << " vs " << c.group_b << ": z=" << io::format_real(c.z)
            << " p_adj=" << io::format_real(c.p_adjusted) << (c.significant ? " *" : "") << '\n';
    return kExitOk;
}

int cmd_validate_network(const NetworkArgs& a, std::ostream& out) {
    const auto started = io::utc_timestamp();
    Config cfg = load_config(a.config);
    if (a.seed) cfg.sim.seed = *a.seed;
    const SimParams& p = cfg.sim;
    if (a.seeds == 0) throw ParameterError("seeds: must be >= 1");

    std::ostringstream table;
    table << "index,seed,clustering,mean_path_length,random_clustering,random_path_length,sigma,component_fraction\n";
    std::string first_edges;
    double sigma_sum = 0.0, clustering_sum = 0.0, path_sum = 0.0;
    for (std::size_t i = 0; i < a.seeds; ++i) {
        const std::uint64_t seed = derive_seed(p.seed, i);
        Rng graph_rng(seed);
        const auto g = generate_small_world(p.n_agents, p.k_neighbors, p.rewire_prob, graph_rng);
        Rng baseline_rng(splitmix64(~seed));
        const NetworkStats s = small_worldness(g, baseline_rng, a.baselines);
        sigma_sum += s.sigma;
        clustering_sum += s.clustering;
        path_sum += s.mean_path_length;
        table << i << ',' << seed << ',' << io::format_real(s.clustering) << ',' << io::format_real(s.mean_path_length)
              << ',' << io::format_real(s.random_clustering) << ',' << io::format_real(s.random_path_length) << ','
              << io::format_real(s.sigma) << ',' << io::format_real(s.component_fraction) << '\n';
        if (i == 0) {
            std::ostringstream e;
            write_edge_list(e, g);
            first_edges = e.str();
        }
    }
    const double n = static_cast<double>(a.seeds);
    const double sigma_mean = sigma_sum / n;
    out << "n=" << p.n_agents << " k=" << p.k_neighbors << " beta=" << io::format_real(p.rewire_prob)
        << " seeds=" << a.seeds << " baselines=" << a.baselines << '\n'
        << "mean_clustering=" << io::format_real(clustering_sum / n) << '\n'
        << "mean_path_length=" << io::format_real(path_sum / n) << '\n'
        << "mean_sigma=" << io::format_real(sigma_mean) << '\n'
        << "small_world=" << (sigma_mean > 1.0 ? "true" : "false") << '\n';

    if (!a.out.empty()) {
        const fs::path dir = a.out;
        io::prepare_output_dir(dir, a.force);
        io::write_text_file(dir / "network.csv", table.str());
        io::write_text_file(dir / "edges_seed0.txt", first_edges);
        io::ManifestInfo info{"validate-network", to_json(p), p.seed, started, io::utc_timestamp()};
        info.extra = {{"seeds", a.seeds}, {"baselines", a.baselines}, {"mean_sigma", sigma_mean}};
        io::write_manifest(dir, info, {"network.csv", "edges_seed0.txt"});
    }
    return kExitOk;
}

int cmd_verify(const std::string& dir, std::ostream& out, std::ostream& err) {
    const auto bad = io::verify_manifest(dir);
    if (bad.empty()) {
        out << "ok: all digests match\n";
        return kExitOk;
    }
    for (const auto& m : bad)
        err << "mismatch: " << m.file << " expected " << m.expected << " got "
            << (m.actual.empty() ? "<missing>" : m.actual) << '\n';
    return kExitRuntime;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Agent-based simulator of belief dynamics under online censorship", "censorsim"};
    app.require_subcommand(1);
    app.set_version_flag("--version", CENSORSIM_VERSION);

    RunArgs run_args;
    auto* run_cmd = app.add_subcommand("run", "Run a single simulation");
    run_cmd->add_option("--config", run_args.config, "JSON config file")->check(CLI::ExistingFile);
    run_cmd->add_option("--seed", run_args.seed, "Seed (overrides config)");
    run_cmd->add_option("--out", run_args.out, "Output directory")->required();
    run_cmd->add_flag("--force", run_args.force, "Overwrite a non-empty output directory");

    SweepArgs sweep_args;
    auto* sweep_cmd = app.add_subcommand("sweep", "Latin hypercube sweep, every sample run in all three modes");
    sweep_cmd->add_option("--config", sweep_args.config, "JSON config file (template for fixed parameters)")
        ->check(CLI::ExistingFile);
    sweep_cmd->add_option("--samples", sweep_args.samples, "Number of LHS samples")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--seed", sweep_args.seed, "Base seed (overrides config)");
    sweep_cmd->add_option("--jobs", sweep_args.jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
    sweep_cmd->add_option("--out", sweep_args.out, "Output directory")->required();
    sweep_cmd->add_flag("--force", sweep_args.force, "Overwrite a non-empty output directory");
    sweep_cmd->add_flag("--sweep-radical-fraction", sweep_args.sweep_radical_fraction,
                        "Also sweep radical_fraction over [0,1]");

    StatsArgs stats_args;
    auto* stats_cmd = app.add_subcommand("stats", "Kruskal-Wallis, Dunn post-hoc and correlations on a sweep CSV");
    stats_cmd->add_option("--in", stats_args.in, "sweep.csv")->required()->check(CLI::ExistingFile);
    stats_cmd->add_option("--metric", stats_args.metric, "Final-step metric")
        ->required()
        ->check(CLI::IsMember({"certainty", "dissent", "assent", "divergence", "degree"}));
    stats_cmd->add_option("--belief", stats_args.belief, "Belief group")->required()->check(CLI::IsMember({0, 1}));
    stats_cmd->add_option("--out", stats_args.out, "Output directory")->required();
    stats_cmd->add_option("--alpha", stats_args.alpha, "Significance level")->check(CLI::Range(1e-12, 0.999999));
    stats_cmd->add_option("--method", stats_args.method, "Correlation method")
        ->check(CLI::IsMember({"spearman", "pearson"}));
    stats_cmd->add_flag("--force", stats_args.force, "Overwrite a non-empty output directory");

    NetworkArgs net_args;
    auto* net_cmd = app.add_subcommand("validate-network", "Small-world-ness report for the initial network");
    net_cmd->add_option("--config", net_args.config, "JSON config file")->check(CLI::ExistingFile);
    net_cmd->add_option("--seed", net_args.seed, "Base seed (overrides config)");
    net_cmd->add_option("--seeds", net_args.seeds, "Number of generated networks")->check(CLI::PositiveNumber);
    net_cmd->add_option("--baselines", net_args.baselines, "Random graphs per baseline")->check(CLI::PositiveNumber);
    net_cmd->add_option("--out", net_args.out, "Optional output directory");
    net_cmd->add_flag("--force", net_args.force, "Overwrite a non-empty output directory");

    std::string verify_dir;
    auto* verify_cmd = app.add_subcommand("verify", "Recompute and check the digests in a manifest");
    verify_cmd->add_option("--dir", verify_dir, "Output directory with manifest.json")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        if (*run_cmd) return cmd_run(run_args, out);
        if (*sweep_cmd) return cmd_sweep(sweep_args, out);
        if (*stats_cmd) return cmd_stats(stats_args, out);
        if (*net_cmd) return cmd_validate_network(net_args, out);
        if (*verify_cmd) return cmd_verify(verify_dir, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}

}  // namespace censorsim::cli
