#include "sparselob/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "sparselob/intensity.hpp"
#include "sparselob/rng.hpp"
#include "sparselob/sampling.hpp"

namespace sparselob {

namespace {

std::vector<double> volumes_or_default(const std::vector<double>& given, std::size_t k) {
    if (given.empty()) return std::vector<double>(k, 5.0);
    return given;
}

BookState jittered_initial_book(const BookState& book, int jitter_ticks, RngStream& rng) {
    const int k_levels = book.levels();
    const std::uint64_t span = 2 * static_cast<std::uint64_t>(jitter_ticks) + 1;
    for (int attempt = 0; attempt < 128; ++attempt) {
        std::vector<std::int64_t> bid = book.side_ticks(Side::Bid);
        std::vector<std::int64_t> ask = book.side_ticks(Side::Ask);
        for (int j = 0; j < k_levels; ++j)
            bid[j] += static_cast<std::int64_t>(rng.bounded(span)) - jitter_ticks;
        for (int j = 0; j < k_levels; ++j)
            ask[j] += static_cast<std::int64_t>(rng.bounded(span)) - jitter_ticks;
        BookState candidate = BookState::from_ticks(book.time(), book.tick(), std::move(bid),
                                                    std::move(ask), book.side_volumes(Side::Bid),
                                                    book.side_volumes(Side::Ask));
        if (validate(candidate).empty()) return candidate;
    }
    throw ConfigError("initial_book.jitter_ticks produced no valid ladder in 128 attempts");
}

void check_book_or_throw(const BookState& book, double t) {
    const auto violations = validate(book);
    if (!violations.empty())
        throw InternalError("book invariant broken at t=" + std::to_string(t) + ": " +
                            violations.front());
}

int base_window_count(double start, double cutoff) {
    const double minutes = (cutoff - start) * 60.0;
    return std::max(1, static_cast<int>(std::ceil(minutes - 1e-9)));
}

} // namespace

void SimConfig::validate() const {
    params.validate();
    const auto k = static_cast<std::size_t>(params.levels_per_side);
    if (initial_book.bid_prices.size() != k || initial_book.ask_prices.size() != k)
        throw ValidationError("initial_book must list exactly levels_per_side prices per side");
    if (!initial_book.bid_volumes.empty() && initial_book.bid_volumes.size() != k)
        throw ValidationError("initial_book.bid_volumes_mwh must list levels_per_side entries");
    if (!initial_book.ask_volumes.empty() && initial_book.ask_volumes.size() != k)
        throw ValidationError("initial_book.ask_volumes_mwh must list levels_per_side entries");
    if (!(start_time < cutoff_time))
        throw ValidationError("simulation.start_hours must lie before cutoff_hours");
    if (!(cutoff_time <= params.horizon_hours))
        throw ValidationError("simulation.cutoff_hours must not exceed horizon_hours");
    if (!std::is_sorted(snapshot_times.begin(), snapshot_times.end()))
        throw ValidationError("simulation.snapshot_hours must be sorted");
    for (double s : snapshot_times)
        if (s < start_time - 1e-9 || s > cutoff_time + 1e-9)
            throw ValidationError("snapshot_hours must lie within [start_hours, cutoff_hours]");
    if (initial_jitter_ticks < 0)
        throw ValidationError("initial_book.jitter_ticks must be non-negative");
    if (stats.window_minutes < 1)
        throw ValidationError("stats.window_minutes must be at least 1");
    for (double tau : stats.tau_grid_seconds)
        if (!(tau > 0.0)) throw ValidationError("stats.tau_grid_seconds must be positive");
    if (!(stats.histogram_bin_eur > 0.0))
        throw ValidationError("stats.histogram_bin_eur must be positive");
    if (!(stats.histogram_clip_percentile > 0.0) || stats.histogram_clip_percentile > 100.0)
        throw ValidationError("stats.histogram_clip_percentile must lie in (0, 100]");

    const BookState book = make_initial_book();
    const auto violations = sparselob::validate(book);
    if (!violations.empty())
        throw ValidationError("initial_book is invalid: " + violations.front());
}

BookState SimConfig::make_initial_book() const {
    const auto k = static_cast<std::size_t>(params.levels_per_side);
    return BookState(start_time, params.tick, initial_book.bid_prices, initial_book.ask_prices,
                     volumes_or_default(initial_book.bid_volumes, k),
                     volumes_or_default(initial_book.ask_volumes, k));
}

Trajectory simulate(const SimConfig& config, int run_index) {
    config.validate();
    if (run_index < 0) throw ConfigError("run_index must be non-negative");

    RngStream rng(config.master_seed, static_cast<std::uint64_t>(run_index));
    BookState book = config.make_initial_book();
    if (config.initial_jitter_ticks > 0)
        book = jittered_initial_book(book, config.initial_jitter_ticks, rng);

    Trajectory traj;
    traj.run_index = run_index;
    traj.start_time = config.start_time;
    traj.cutoff_time = config.cutoff_time;
    traj.initial_book = book;

    const ModelParams& params = config.params;
    const int k_levels = params.levels_per_side;
    std::size_t next_snapshot = 0;
    double t = config.start_time;
    std::uint64_t steps = 0;

    for (;;) {
        const auto next = sample_next_event(t, book, params, config.cutoff_time, rng);
        const double t_next = next ? next->time : std::numeric_limits<double>::infinity();

        // A snapshot at exactly an event time takes the post-event state, so
        // it is released only once the next event lies strictly later.
        while (next_snapshot < config.snapshot_times.size() &&
               config.snapshot_times[next_snapshot] < t_next) {
            traj.snapshots.emplace_back(config.snapshot_times[next_snapshot], book);
            ++next_snapshot;
        }
        if (!next) break;

        const EventKind kind = next->kind;
        EventRecord rec;
        rec.time = t_next;
        rec.kind = kind;

        switch (kind.cls) {
        case EventClass::Market: {
            const double side_total = cumulative_volumes(book, kind.side).back();
            if (!(side_total > params.volume_floor)) {
                // Too-thin side: the arrival is discarded without trace.
                t = t_next;
                continue;
            }
            const double volume = sample_market_volume(rng, params, side_total);
            RegenMarks regen = sample_regen_marks(t_next, rng, params, k_levels - 1);
            auto [next_book, report] = apply_market_order(
                book, kind.side,
                MarketOrderMarks{volume, std::move(regen.distances), std::move(regen.volumes)});
            book = next_book.with_time(t_next);
            rec.level = report.levels_consumed;
            rec.volume = report.executed_volume;
            rec.price = book.price(kind.side, 1);
            break;
        }
        case EventClass::Limit: {
            const double distance = sample_limit_distance(t_next, rng, params);
            const double volume = sample_volume_mark(rng, params);
            auto [next_book, report] =
                apply_limit_order(book, kind.side, LimitOrderMarks{distance, volume});
            book = next_book.with_time(t_next);
            const bool accepted = report.inserted_rank.has_value();
            rec.level = accepted ? *report.inserted_rank : 0;
            rec.volume = accepted ? volume : 0.0;
            rec.price = report.limit_price;
            break;
        }
        case EventClass::Cancel: {
            rec.level = kind.level;
            rec.volume = book.volume(kind.side, kind.level);
            rec.price = book.price(kind.side, kind.level);
            const double distance = sample_limit_distance(t_next, rng, params);
            const double volume = sample_volume_mark(rng, params);
            book = apply_cancel(book, kind.side, CancelMarks{kind.level, distance, volume})
                       .with_time(t_next);
            break;
        }
        }

        rec.mid = mid_price(book);
        rec.spread = spread(book);
        traj.events.push_back(rec);
        t = t_next;

#ifndef NDEBUG
        check_book_or_throw(book, t);
#else
        if ((++steps & 1023u) == 0) check_book_or_throw(book, t);
#endif
        (void)steps;
    }
    return traj;
}

RunSummary summarize_run(const Trajectory& trajectory) {
    RunSummary summary;
    summary.run_index = trajectory.run_index;
    summary.event_count = trajectory.events.size();
    summary.snapshots = trajectory.snapshots;

    if (trajectory.events.empty()) {
        summary.final_mid = mid_price(trajectory.initial_book);
        summary.final_spread = spread(trajectory.initial_book);
    } else {
        summary.final_mid = trajectory.events.back().mid;
        summary.final_spread = trajectory.events.back().spread;
    }

    const int n_base = base_window_count(trajectory.start_time, trajectory.cutoff_time);
    summary.minute_counts.assign(n_base, {});
    for (const EventRecord& e : trajectory.events) {
        auto w = static_cast<int>(std::floor((e.time - trajectory.start_time) * 60.0));
        w = std::clamp(w, 0, n_base - 1);
        ++summary.minute_counts[w][event_class_index(e.kind)];
    }
    return summary;
}

EnsembleResult run_monte_carlo(const SimConfig& config, int n_runs, int n_workers) {
    config.validate();
    if (n_runs < 1) throw ConfigError("number of runs must be at least 1");
    if (n_workers <= 0) n_workers = static_cast<int>(std::thread::hardware_concurrency());
    n_workers = std::clamp(n_workers, 1, n_runs);

    std::vector<RunSummary> rows(n_runs);
    std::atomic<int> cursor{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&] {
        for (;;) {
            const int i = cursor.fetch_add(1);
            if (i >= n_runs) return;
            try {
                rows[i] = summarize_run(simulate(config, i));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    if (n_workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int w = 0; w < n_workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    EnsembleResult result;
    result.start_time = config.start_time;
    result.cutoff_time = config.cutoff_time;
    result.runs = std::move(rows);

    // Pooled ladder distances at the cutoff snapshot, aggregated in run order.
    const bool has_cutoff_snapshot =
        std::any_of(config.snapshot_times.begin(), config.snapshot_times.end(),
                    [&](double s) { return std::abs(s - config.cutoff_time) <= 1e-9; });
    if (has_cutoff_snapshot) {
        const int k_max = std::min(3, config.params.levels_per_side);
        for (int k = 1; k <= k_max; ++k) {
            double sum = 0.0;
            for (const RunSummary& run : result.runs) {
                const BookState& book = run.snapshots.back().second;
                sum += book.ask_price(k) - book.bid_price(k);
            }
            const double mean = sum / static_cast<double>(result.runs.size());
            double sq = 0.0;
            for (const RunSummary& run : result.runs) {
                const BookState& book = run.snapshots.back().second;
                const double d = (book.ask_price(k) - book.bid_price(k)) - mean;
                sq += d * d;
            }
            const std::size_t n = result.runs.size();
            const double stddev = n > 1 ? std::sqrt(sq / static_cast<double>(n - 1)) : 0.0;
            result.pooled.push_back({k, mean, stddev, n});
        }
    }
    return result;
}

} // namespace sparselob
