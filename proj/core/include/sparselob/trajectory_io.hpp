#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "sparselob/engine.hpp"
#include "sparselob/stats.hpp"

namespace sparselob {

// Delimited text outputs with mandatory headers and locale-independent,
// fixed-decimal formatting: times at 12 decimals, prices and spreads at 2
// (the tick grid), mids at 3 (the half-tick grid), volumes at 1. Identical
// inputs produce byte-identical files.

std::string format_fixed(double value, int decimals);

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);
void write_trajectory_file(const std::filesystem::path& path, const Trajectory& trajectory);

struct TrajectoryRow {
    int run_index = 0;
    double time = 0.0;
    EventKind kind;
    int level = 0;
    double volume = 0.0;
    double price = 0.0;
    double mid = 0.0;
    double spread = 0.0;
};

/// Parses a trajectory file back; validates the header and that rows are
/// time-ordered within the run. Throws ParseError on malformed input.
std::vector<TrajectoryRow> read_trajectory_csv(std::istream& in);
std::vector<TrajectoryRow> read_trajectory_file(const std::filesystem::path& path);

void write_snapshots_csv(std::ostream& out, const Trajectory& trajectory);
void write_snapshots_file(const std::filesystem::path& path, const Trajectory& trajectory);

/// Per-run summary table; ladder distance columns are taken from the cutoff
/// snapshot for k = 1..min(3, K). Throws MissingSnapshot when absent.
void write_run_summaries_csv(std::ostream& out, const EnsembleResult& ensemble);
void write_run_summaries_file(const std::filesystem::path& path, const EnsembleResult& ensemble);

void write_distribution_csv(std::ostream& out, const DistributionSummary& distribution);
void write_distribution_file(const std::filesystem::path& path,
                             const DistributionSummary& distribution);

void write_distance_summary_csv(std::ostream& out,
                                const std::vector<std::pair<int, DistributionSummary>>& by_rank);
void write_distance_summary_file(const std::filesystem::path& path,
                                 const std::vector<std::pair<int, DistributionSummary>>& by_rank);

void write_intensity_histogram_csv(std::ostream& out, const IntensityHistogram& histogram);
void write_intensity_histogram_file(const std::filesystem::path& path,
                                    const IntensityHistogram& histogram);

void write_signature_csv(std::ostream& out, const SignaturePlot& plot);
void write_signature_file(const std::filesystem::path& path, const SignaturePlot& plot);

} // namespace sparselob
