#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sparselob/book.hpp"
#include "sparselob/event.hpp"
#include "sparselob/params.hpp"

namespace sparselob {

struct InitialBookSpec {
    std::vector<double> bid_prices{45.0, 44.0, 42.0, 39.0, 35.0};  // EUR, best first
    std::vector<double> ask_prices{55.0, 56.0, 58.0, 61.0, 65.0};
    std::vector<double> bid_volumes;  // MWh; empty means 5 MWh at every level
    std::vector<double> ask_volumes;

    bool operator==(const InitialBookSpec&) const = default;
};

struct StatsOptions {
    std::vector<double> tau_grid_seconds{10, 20, 30, 60, 120, 180, 300, 450, 600};
    int window_minutes = 10;
    double histogram_bin_eur = 0.25;
    double histogram_clip_percentile = 99.5;

    bool operator==(const StatsOptions&) const = default;
};

struct OutputOptions {
    std::string out_dir = "out";

    bool operator==(const OutputOptions&) const = default;
};

struct SimConfig {
    ModelParams params;
    InitialBookSpec initial_book;
    double start_time = 0.0;   // hours
    double cutoff_time = 3.0;  // hours; simulation stops here
    std::uint64_t master_seed = 18;
    std::vector<double> snapshot_times{3.0};  // hours, sorted
    int initial_jitter_ticks = 0;  // per-level uniform jitter of the starting ladder
    StatsOptions stats;
    OutputOptions outputs;

    /// Throws ValidationError / ConfigError on the first violated constraint.
    void validate() const;

    /// The validated starting book at start_time.
    BookState make_initial_book() const;

    bool operator==(const SimConfig&) const = default;
};

/// One recorded event. Rejected limit insertions are genuine arrivals of the
/// order flow and are recorded with level 0, zero volume and an unchanged
/// book; market orders discarded on a too-thin side are not recorded at all.
struct EventRecord {
    double time = 0.0;   // hours
    EventKind kind;
    int level = 0;       // market: levels consumed; limit: inserted rank (0 = rejected); cancel: rank
    double volume = 0.0; // market: executed; limit: inserted; cancel: removed (MWh)
    double price = 0.0;  // market: post-trade best of the hit side; limit: candidate price; cancel: removed price
    double mid = 0.0;    // post-event
    double spread = 0.0; // post-event

    bool operator==(const EventRecord&) const = default;
};

struct Trajectory {
    int run_index = 0;
    double start_time = 0.0;
    double cutoff_time = 0.0;
    BookState initial_book;
    std::vector<EventRecord> events;
    // Book in force at each requested time: the state after all events with
    // time <= snapshot time (right-continuous convention).
    std::vector<std::pair<double, BookState>> snapshots;
};

struct RunSummary {
    int run_index = 0;
    std::uint64_t event_count = 0;
    double final_mid = 0.0;
    double final_spread = 0.0;
    std::vector<std::pair<double, BookState>> snapshots;
    // Event counts per one-minute base window, by (class, side); statistics
    // re-bin these into coarser windows.
    std::vector<std::array<std::uint32_t, kEventClassCount>> minute_counts;
};

struct PooledDistanceStat {
    int k = 0;           // ladder rank
    double mean = 0.0;   // EUR
    double stddev = 0.0; // EUR, sample standard deviation
    std::size_t count = 0;
};

struct EnsembleResult {
    double start_time = 0.0;
    double cutoff_time = 0.0;
    std::vector<RunSummary> runs;
    // Ladder distances at the cutoff snapshot for k = 1..min(3, K), pooled in
    // run order; empty when the cutoff was not among the snapshot times.
    std::vector<PooledDistanceStat> pooled;
};

/// Simulates one session: starting from the initial book, repeatedly samples
/// the next event, draws its marks and applies the matching transition until
/// the next event falls past cutoff_time. Bit-identical for identical
/// (config, run_index).
Trajectory simulate(const SimConfig& config, int run_index);

/// Per-run reduction used by the Monte-Carlo runner.
RunSummary summarize_run(const Trajectory& trajectory);

/// Runs n_runs independent sessions with per-run streams derived from
/// (master_seed, run_index). Results are bit-identical for any worker count;
/// n_workers <= 0 picks the hardware concurrency.
EnsembleResult run_monte_carlo(const SimConfig& config, int n_runs, int n_workers = 1);

} // namespace sparselob
