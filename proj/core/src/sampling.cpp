#include "sparselob/sampling.hpp"

#include <cmath>
#include <limits>

namespace sparselob {

namespace {

// Look-ahead window for the thinning bound. All rates grow by at most
// exp(max_decay * step) across one window, so the bound stays tight.
constexpr double kThinningStepHours = 0.1;

} // namespace

std::optional<NextEvent> sample_next_event(double t, const BookState& book,
                                           const ModelParams& params, double cutoff_time,
                                           RngStream& rng) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    double cur = t;
    for (;;) {
        const double window_end = cur + kThinningStepHours;
        const double bound = total_intensity(window_end, book, params).total();
        if (!(bound > 0.0)) {
            cur = window_end;
            if (cur > cutoff_time) return std::nullopt;
            continue;
        }
        const double wait = rng.exponential(bound);
        double candidate = cur + wait;
        if (candidate > window_end) {
            // No point in this window; every later event lies past its end.
            cur = window_end;
            if (cur > cutoff_time) return std::nullopt;
            continue;
        }
        if (candidate <= cur) candidate = std::nextafter(cur, inf);
        if (candidate > cutoff_time) return std::nullopt;
        const IntensityBreakdown bd = total_intensity(candidate, book, params);
        const double actual = bd.total();
        if (actual > 0.0 && rng.uniform01() * bound <= actual)
            return NextEvent{candidate, pick_event_kind(bd, rng)};
        cur = candidate;
    }
}

std::size_t sample_categorical(RngStream& rng, std::span<const double> probs) {
    const double u = rng.uniform01();
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        if (u < acc) return i;
    }
    return probs.size() - 1;
}

EventKind pick_event_kind(const IntensityBreakdown& bd, RngStream& rng) {
    double u = rng.uniform01() * bd.total();

    const EventKind flat[4] = {{EventClass::Market, Side::Bid, 0},
                               {EventClass::Market, Side::Ask, 0},
                               {EventClass::Limit, Side::Bid, 0},
                               {EventClass::Limit, Side::Ask, 0}};
    const double weights[4] = {bd.market_bid, bd.market_ask, bd.limit_bid, bd.limit_ask};
    for (int i = 0; i < 4; ++i) {
        if (u < weights[i]) return flat[i];
        u -= weights[i];
    }
    for (int level = 1; level <= bd.levels; ++level) {
        if (u < bd.cancel_bid_level) return {EventClass::Cancel, Side::Bid, level};
        u -= bd.cancel_bid_level;
    }
    for (int level = 1; level <= bd.levels; ++level) {
        if (u < bd.cancel_ask_level) return {EventClass::Cancel, Side::Ask, level};
        u -= bd.cancel_ask_level;
    }
    return {EventClass::Cancel, Side::Ask, bd.levels};
}

double market_volume_from_index(std::size_t index, const ModelParams& params,
                                double side_cumulative_volume) {
    return std::min(params.market_volume.volumes[index],
                    side_cumulative_volume - params.volume_floor);
}

double sample_market_volume(RngStream& rng, const ModelParams& params,
                            double side_cumulative_volume) {
    if (!(side_cumulative_volume > params.volume_floor))
        throw SideTooThin("side volume at or below the tradable floor");
    const std::size_t i = sample_categorical(rng, params.market_volume.probs);
    return market_volume_from_index(i, params, side_cumulative_volume);
}

double limit_distance_rate(double t, const ModelParams& params) {
    return params.limit.distance_rate_scale *
           std::exp(-params.limit.distance_rate_decay * (params.horizon_hours - t));
}

double sample_limit_distance(double t, RngStream& rng, const ModelParams& params) {
    return rng.exponential(limit_distance_rate(t, params));
}

double sample_volume_mark(RngStream& rng, const ModelParams& params) {
    return params.limit_volume.volumes[sample_categorical(rng, params.limit_volume.probs)];
}

RegenMarks sample_regen_marks(double t, RngStream& rng, const ModelParams& params, int count) {
    if (count < 1) throw InternalError("regeneration mark count must be at least 1");
    RegenMarks marks;
    marks.distances.reserve(count);
    marks.volumes.reserve(count);
    for (int i = 0; i < count; ++i) marks.distances.push_back(sample_limit_distance(t, rng, params));
    for (int i = 0; i < count; ++i) marks.volumes.push_back(sample_volume_mark(rng, params));
    return marks;
}

} // namespace sparselob
