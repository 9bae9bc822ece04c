// Command-line front end: single runs, Monte-Carlo ensembles and signature
// plots, all driven by one config file. Exit codes: 0 success, 2 user/config
// error, 1 internal invariant breach.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sparselob/config.hpp"
#include "sparselob/engine.hpp"
#include "sparselob/stats.hpp"
#include "sparselob/trajectory_io.hpp"

namespace fs = std::filesystem;
using namespace sparselob;

namespace {

// A config path that does not exist as given is retried relative to
// SPARSELOB_CONFIG_DIR before load_config reports the failure.
fs::path resolve_config_path(const std::string& given) {
    fs::path p(given);
    if (fs::exists(p) || p.is_absolute()) return p;
    if (const char* dir = std::getenv("SPARSELOB_CONFIG_DIR")) {
        const fs::path candidate = fs::path(dir) / p;
        if (fs::exists(candidate)) return candidate;
    }
    return p;
}

SimConfig load(const std::string& config_arg, const std::optional<std::uint64_t>& seed,
               const std::optional<std::string>& out_dir) {
    SimConfig cfg = load_config(resolve_config_path(config_arg));
    if (seed) cfg.master_seed = *seed;
    if (out_dir) cfg.outputs.out_dir = *out_dir;
    return cfg;
}

fs::path prepare_out_dir(const SimConfig& cfg) {
    const fs::path dir(cfg.outputs.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "'");
    return dir;
}

int cmd_simulate(const std::string& config_arg, const std::optional<std::uint64_t>& seed,
                 const std::optional<std::string>& out_dir, int run_index) {
    const SimConfig cfg = load(config_arg, seed, out_dir);
    const fs::path dir = prepare_out_dir(cfg);

    const Trajectory traj = simulate(cfg, run_index);
    write_trajectory_file(dir / "trajectory.csv", traj);
    write_snapshots_file(dir / "snapshots.csv", traj);

    const double final_mid = traj.events.empty() ? mid_price(traj.initial_book)
                                                 : traj.events.back().mid;
    const double final_spread = traj.events.empty() ? spread(traj.initial_book)
                                                    : traj.events.back().spread;
    std::cout << "events=" << traj.events.size() << " final_mid=" << format_fixed(final_mid, 3)
              << " final_spread=" << format_fixed(final_spread, 2) << "\n";
    std::cout << "wrote " << (dir / "trajectory.csv").string() << ", "
              << (dir / "snapshots.csv").string() << "\n";
    return 0;
}

int cmd_montecarlo(const std::string& config_arg, const std::optional<std::uint64_t>& seed,
                   const std::optional<std::string>& out_dir, int runs, int workers) {
    const SimConfig cfg = load(config_arg, seed, out_dir);
    const fs::path dir = prepare_out_dir(cfg);

    const EnsembleResult ensemble = run_monte_carlo(cfg, runs, workers);
    write_run_summaries_file(dir / "runs.csv", ensemble);

    const HistogramOptions hist_opts{cfg.stats.histogram_bin_eur,
                                     cfg.stats.histogram_clip_percentile};
    std::vector<std::pair<int, DistributionSummary>> by_rank;
    const int k_max = std::min(3, cfg.params.levels_per_side);
    for (int k = 1; k <= k_max; ++k) {
        DistributionSummary dist =
            limit_distance_distribution(ensemble, k, cfg.cutoff_time, hist_opts);
        write_distribution_file(dir / ("distance_k" + std::to_string(k) + ".csv"), dist);
        by_rank.emplace_back(k, std::move(dist));
    }
    write_distance_summary_file(dir / "distance_summary.csv", by_rank);

    const IntensityHistogram hist =
        event_intensity_histogram(ensemble, cfg.stats.window_minutes);
    write_intensity_histogram_file(dir / "windows.csv", hist);

    std::cout << "runs=" << ensemble.runs.size();
    for (const auto& [k, dist] : by_rank)
        std::cout << " mean_d" << k << "=" << format_fixed(dist.mean, 4);
    std::cout << "\nwrote summaries under " << dir.string() << "\n";
    return 0;
}

int cmd_signature(const std::string& config_arg, const std::optional<std::uint64_t>& seed,
                  const std::optional<std::string>& out_dir, int runs,
                  const std::vector<double>& tau_override) {
    SimConfig cfg = load(config_arg, seed, out_dir);
    if (!tau_override.empty()) cfg.stats.tau_grid_seconds = tau_override;
    cfg.validate();
    const fs::path dir = prepare_out_dir(cfg);

    std::vector<Trajectory> trajectories;
    trajectories.reserve(runs);
    for (int i = 0; i < runs; ++i) trajectories.push_back(simulate(cfg, i));

    const SignaturePlot plot = signature_plot(trajectories, cfg.stats.tau_grid_seconds,
                                              cfg.start_time, cfg.cutoff_time);
    write_signature_file(dir / "signature.csv", plot);
    std::cout << "runs=" << runs << " taus=" << plot.tau_seconds.size() << " wrote "
              << (dir / "signature.csv").string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Event-driven sparse limit order book simulator"};
    app.require_subcommand(1);

    std::string config_arg;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    int run_index = 0;
    int runs = 1;
    int workers = 0;
    std::vector<double> tau_grid;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_arg, "Config file path")->required();
        cmd->add_option("--seed", seed, "Override simulation.master_seed");
        cmd->add_option("--out", out_dir, "Override outputs.out_dir");
    };

    CLI::App* sim = app.add_subcommand("simulate", "Run one session and write its trajectory");
    add_common(sim);
    sim->add_option("--run-index", run_index, "Stream index of the run (default 0)");

    CLI::App* mc = app.add_subcommand("montecarlo", "Run an ensemble and write pooled statistics");
    add_common(mc);
    mc->add_option("--runs", runs, "Number of independent runs")->required();
    mc->add_option("--workers", workers, "Worker threads (0 = hardware concurrency)");

    CLI::App* sig = app.add_subcommand("signature", "Run an ensemble and write the signature plot");
    add_common(sig);
    sig->add_option("--runs", runs, "Number of independent runs")->required();
    sig->add_option("--tau-grid", tau_grid, "Sampling steps in seconds (comma separated)")
        ->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) return cmd_simulate(config_arg, seed, out_dir, run_index);
        if (mc->parsed()) return cmd_montecarlo(config_arg, seed, out_dir, runs, workers);
        if (sig->parsed()) return cmd_signature(config_arg, seed, out_dir, runs, tau_grid);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
