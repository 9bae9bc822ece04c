#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "sparselob/engine.hpp"

namespace sparselob {

/// Histogram plus first two moments of a sample. Bin edges are uniform;
/// values beyond the clipped top edge are counted in the last bin, so the
/// counts always sum to the sample count.
struct DistributionSummary {
    std::vector<double> bin_edges;  // size counts.size() + 1
    std::vector<std::uint64_t> counts;
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation
    std::uint64_t sample_count = 0;
};

struct HistogramOptions {
    double bin_width = 0.25;        // EUR
    double clip_percentile = 99.5;  // top edge covers this percentile
};

/// Distribution of the distance between the k-th ask and the k-th bid across
/// the ensemble, read off the snapshot recorded at `at_time` (k = 1 is the
/// spread). Throws MissingSnapshot when a run lacks that snapshot.
DistributionSummary limit_distance_distribution(const EnsembleResult& ensemble, int k,
                                                double at_time, const HistogramOptions& options = {});

/// Realized variance of the mid-price per unit time as a function of the
/// sampling step tau: the sum of squared mid increments over the full steps
/// contained in [window_start, window_end], divided by the window length.
struct SignaturePlot {
    std::vector<double> tau_seconds;
    std::vector<double> c_hat;  // EUR^2 per hour
    double window_start = 0.0;  // hours
    double window_end = 0.0;
};

SignaturePlot signature_plot(const Trajectory& trajectory, std::span<const double> tau_seconds,
                             double t0, double t_end);

/// Ensemble variant: c_hat averaged pointwise across the trajectories.
SignaturePlot signature_plot(std::span<const Trajectory> trajectories,
                             std::span<const double> tau_seconds, double t0, double t_end);

/// Mean event counts per window across runs, split by (class, side).
/// window_minutes must divide the session length in minutes.
struct IntensityHistogram {
    int window_minutes = 0;
    std::vector<double> window_start_hours;
    std::array<std::vector<double>, kEventClassCount> mean_counts;
    std::vector<double> mean_total;
};

IntensityHistogram event_intensity_histogram(const EnsembleResult& ensemble, int window_minutes);

/// Mid-price in force at each grid time: the post-event value of the last
/// event at or before the grid point, or the initial mid before any event.
std::vector<double> mid_price_series(const Trajectory& trajectory,
                                     std::span<const double> grid_hours);

} // namespace sparselob
