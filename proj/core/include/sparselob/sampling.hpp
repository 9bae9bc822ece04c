#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sparselob/book.hpp"
#include "sparselob/event.hpp"
#include "sparselob/intensity.hpp"
#include "sparselob/params.hpp"
#include "sparselob/rng.hpp"

namespace sparselob {

struct NextEvent {
    double time = 0.0;
    EventKind kind;
};

/// Draws the next event of the superposed order flow after time t, with the
/// spread frozen at the given book's value (the state between two events is
/// constant, so every rate is a deterministic, increasing function of time).
///
/// Thinning against a piecewise bound: on each look-ahead window the total
/// rate at the window end dominates the rate everywhere inside it. The kind
/// is drawn categorically from the per-kind rates at the accepted time.
/// Returns std::nullopt once the next event would land past `cutoff_time`.
std::optional<NextEvent> sample_next_event(double t, const BookState& book,
                                           const ModelParams& params, double cutoff_time,
                                           RngStream& rng);

/// Categorical index draw: i with probability probs[i] (one uniform).
std::size_t sample_categorical(RngStream& rng, std::span<const double> probs);

/// Kind selection given the per-kind rates; cancel weights are spread evenly
/// over the ranks 1..levels of each side (one uniform).
EventKind pick_event_kind(const IntensityBreakdown& breakdown, RngStream& rng);

/// Truncation rule applied to a drawn market volume index: the drawn value is
/// capped at the side's cumulative volume minus the volume floor, keeping the
/// executed volume strictly inside (0, side total).
double market_volume_from_index(std::size_t index, const ModelParams& params,
                                double side_cumulative_volume);

/// Draws a market-order volume (one categorical draw, then the truncation
/// rule). Throws SideTooThin when the side holds no more than the floor.
double sample_market_volume(RngStream& rng, const ModelParams& params,
                            double side_cumulative_volume);

/// Exponential rate of the limit-order distance law at time t.
double limit_distance_rate(double t, const ModelParams& params);

/// Distance of a new limit order from the opposite best (one exponential
/// draw with rate limit_distance_rate(t)).
double sample_limit_distance(double t, RngStream& rng, const ModelParams& params);

/// Volume of a new or regenerated limit (one categorical draw).
double sample_volume_mark(RngStream& rng, const ModelParams& params);

struct RegenMarks {
    std::vector<double> distances;
    std::vector<double> volumes;
};

/// `count` regeneration pairs for the ladder tail; drawn from the same laws
/// as limit-order distances and volumes. Draw order is fixed for
/// reproducibility: all distances first, then all volumes.
RegenMarks sample_regen_marks(double t, RngStream& rng, const ModelParams& params, int count);

} // namespace sparselob
