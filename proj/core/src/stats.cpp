#include "sparselob/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sparselob {

namespace {

constexpr double kTimeTolerance = 1e-9;

const BookState& snapshot_at(const RunSummary& run, double at_time) {
    for (const auto& [time, book] : run.snapshots)
        if (std::abs(time - at_time) <= kTimeTolerance) return book;
    throw MissingSnapshot("run " + std::to_string(run.run_index) +
                          " has no snapshot at t=" + std::to_string(at_time));
}

DistributionSummary summarize_samples(const std::vector<double>& samples,
                                      const HistogramOptions& options) {
    DistributionSummary out;
    out.sample_count = samples.size();

    double sum = 0.0;
    for (double v : samples) sum += v;
    out.mean = sum / static_cast<double>(samples.size());
    double sq = 0.0;
    for (double v : samples) sq += (v - out.mean) * (v - out.mean);
    out.stddev =
        samples.size() > 1 ? std::sqrt(sq / static_cast<double>(samples.size() - 1)) : 0.0;

    const double width = options.bin_width;
    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    const double q = std::clamp(options.clip_percentile, 0.0, 100.0) / 100.0;
    const auto clip_index = std::min(
        sorted.size() - 1,
        static_cast<std::size_t>(std::max(0.0, std::ceil(q * static_cast<double>(sorted.size())) - 1.0)));
    const double lo_edge = std::floor(sorted.front() / width) * width;
    double hi_edge = std::ceil(sorted[clip_index] / width) * width;
    if (hi_edge <= lo_edge) hi_edge = lo_edge + width;

    const auto n_bins =
        static_cast<std::size_t>(std::llround((hi_edge - lo_edge) / width));
    out.bin_edges.resize(n_bins + 1);
    for (std::size_t i = 0; i <= n_bins; ++i)
        out.bin_edges[i] = lo_edge + static_cast<double>(i) * width;
    out.counts.assign(n_bins, 0);
    for (double v : samples) {
        auto b = static_cast<std::int64_t>(std::floor((v - lo_edge) / width));
        b = std::clamp<std::int64_t>(b, 0, static_cast<std::int64_t>(n_bins) - 1);
        ++out.counts[static_cast<std::size_t>(b)];
    }
    return out;
}

} // namespace

DistributionSummary limit_distance_distribution(const EnsembleResult& ensemble, int k,
                                                double at_time, const HistogramOptions& options) {
    if (ensemble.runs.empty()) throw MissingSnapshot("ensemble holds no runs");
    std::vector<double> samples;
    samples.reserve(ensemble.runs.size());
    for (const RunSummary& run : ensemble.runs) {
        const BookState& book = snapshot_at(run, at_time);
        if (k < 1 || k > book.levels())
            throw ValidationError("limit distance rank k=" + std::to_string(k) +
                                  " out of range 1.." + std::to_string(book.levels()));
        samples.push_back(book.ask_price(k) - book.bid_price(k));
    }
    return summarize_samples(samples, options);
}

std::vector<double> mid_price_series(const Trajectory& trajectory,
                                     std::span<const double> grid_hours) {
    if (grid_hours.empty()) throw EmptyWindow("empty sampling grid");
    for (double t : grid_hours)
        if (t < trajectory.start_time - kTimeTolerance ||
            t > trajectory.cutoff_time + kTimeTolerance)
            throw EmptyWindow("grid point outside the trajectory window");

    std::vector<double> out;
    out.reserve(grid_hours.size());
    const auto& events = trajectory.events;
    const double initial_mid = mid_price(trajectory.initial_book);
    for (double t : grid_hours) {
        // Last event with time <= t; right-continuous at event times.
        auto it = std::upper_bound(events.begin(), events.end(), t,
                                   [](double value, const EventRecord& e) { return value < e.time; });
        out.push_back(it == events.begin() ? initial_mid : std::prev(it)->mid);
    }
    return out;
}

SignaturePlot signature_plot(const Trajectory& trajectory, std::span<const double> tau_seconds,
                             double t0, double t_end) {
    const Trajectory* one = &trajectory;
    return signature_plot(std::span<const Trajectory>(one, 1), tau_seconds, t0, t_end);
}

SignaturePlot signature_plot(std::span<const Trajectory> trajectories,
                             std::span<const double> tau_seconds, double t0, double t_end) {
    if (trajectories.empty()) throw EmptyWindow("no trajectories");
    if (tau_seconds.empty()) throw EmptyWindow("empty tau grid");
    if (!(t0 < t_end)) throw EmptyWindow("analysis window is empty");
    for (const Trajectory& traj : trajectories)
        if (t0 < traj.start_time - kTimeTolerance || t_end > traj.cutoff_time + kTimeTolerance)
            throw EmptyWindow("analysis window outside the trajectory window");

    const double window = t_end - t0;
    SignaturePlot plot;
    plot.window_start = t0;
    plot.window_end = t_end;
    plot.tau_seconds.assign(tau_seconds.begin(), tau_seconds.end());
    plot.c_hat.reserve(tau_seconds.size());

    std::vector<double> grid;
    for (double tau_s : tau_seconds) {
        if (!(tau_s > 0.0)) throw EmptyWindow("tau must be positive");
        const double tau_h = tau_s / 3600.0;
        const auto steps = static_cast<std::size_t>(std::floor(window / tau_h + kTimeTolerance));
        if (steps < 1) throw EmptyWindow("tau exceeds the analysis window");

        grid.resize(steps + 1);
        for (std::size_t n = 0; n <= steps; ++n)
            grid[n] = t0 + static_cast<double>(n) * tau_h;

        double mean_c = 0.0;
        for (const Trajectory& traj : trajectories) {
            const std::vector<double> mids = mid_price_series(traj, grid);
            double acc = 0.0;
            for (std::size_t n = 0; n < steps; ++n) {
                const double d = mids[n + 1] - mids[n];
                acc += d * d;
            }
            mean_c += acc / window;
        }
        plot.c_hat.push_back(mean_c / static_cast<double>(trajectories.size()));
    }
    return plot;
}

IntensityHistogram event_intensity_histogram(const EnsembleResult& ensemble, int window_minutes) {
    if (ensemble.runs.empty()) throw MissingSnapshot("ensemble holds no runs");
    const std::size_t n_base = ensemble.runs.front().minute_counts.size();
    for (const RunSummary& run : ensemble.runs)
        if (run.minute_counts.size() != n_base)
            throw InternalError("runs disagree on the session length");
    if (window_minutes < 1 || n_base % static_cast<std::size_t>(window_minutes) != 0)
        throw ValidationError("window_minutes must divide the session length of " +
                              std::to_string(n_base) + " minutes");

    const std::size_t n_windows = n_base / static_cast<std::size_t>(window_minutes);
    IntensityHistogram hist;
    hist.window_minutes = window_minutes;
    hist.window_start_hours.resize(n_windows);
    for (std::size_t w = 0; w < n_windows; ++w)
        hist.window_start_hours[w] =
            ensemble.start_time + static_cast<double>(w * window_minutes) / 60.0;
    for (auto& series : hist.mean_counts) series.assign(n_windows, 0.0);
    hist.mean_total.assign(n_windows, 0.0);

    const double inv_runs = 1.0 / static_cast<double>(ensemble.runs.size());
    for (const RunSummary& run : ensemble.runs)
        for (std::size_t m = 0; m < n_base; ++m) {
            const std::size_t w = m / static_cast<std::size_t>(window_minutes);
            for (int c = 0; c < kEventClassCount; ++c)
                hist.mean_counts[c][w] += static_cast<double>(run.minute_counts[m][c]);
        }
    for (int c = 0; c < kEventClassCount; ++c)
        for (std::size_t w = 0; w < n_windows; ++w) {
            hist.mean_counts[c][w] *= inv_runs;
            hist.mean_total[w] += hist.mean_counts[c][w];
        }
    return hist;
}

} // namespace sparselob
