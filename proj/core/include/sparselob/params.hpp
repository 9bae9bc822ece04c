#pragma once

#include <vector>

#include "sparselob/errors.hpp"

namespace sparselob {

// All rates are per hour; time runs from 0 to horizon_hours and the decay
// factors are anchored at the horizon, so every arrival rate increases
// toward it. One parameter block drives both sides of the book.

struct MarketRateParams {
    double base_rate = 45.72;        // 1/h, rate at the horizon and zero spread
    double time_decay = 0.51;        // 1/h
    double spread_sensitivity = 0.5; // 1/EUR
    bool operator==(const MarketRateParams&) const = default;
};

struct LimitRateParams {
    double base_rate = 450.0;          // 1/h
    double time_decay = 5.22e-4;       // 1/h
    double distance_rate_scale = 0.145; // 1/EUR, exponential distance rate at the horizon
    double distance_rate_decay = 0.02;  // 1/h
    bool operator==(const LimitRateParams&) const = default;
};

struct CancelRateParams {
    double base_rate = 72.0;  // 1/h, per level and per side
    double time_decay = 0.6;  // 1/h
    bool operator==(const CancelRateParams&) const = default;
};

/// Discrete volume law: value `volumes[i]` is drawn with probability
/// `probs[i]`. Probabilities sum to one, volumes are strictly increasing.
struct DiscreteVolumeDistribution {
    std::vector<double> probs;
    std::vector<double> volumes;  // MWh
    bool operator==(const DiscreteVolumeDistribution&) const = default;
};

struct ModelParams {
    double horizon_hours = 4.0;
    int levels_per_side = 5;

    MarketRateParams market;
    LimitRateParams limit;
    CancelRateParams cancel;

    DiscreteVolumeDistribution market_volume{
        {0.480, 0.158, 0.314, 0.032, 0.012, 0.004}, {1.0, 2.0, 5.0, 10.0, 15.0, 25.0}};
    // Also used for the volumes of regenerated tail levels.
    DiscreteVolumeDistribution limit_volume{
        {0.322, 0.152, 0.464, 0.022, 0.011, 0.029}, {1.0, 2.0, 5.0, 10.0, 15.0, 25.0}};

    double volume_floor = 0.1;  // MWh, smallest tradable increment
    double tick = 0.01;         // EUR, price grid step

    /// Throws ValidationError naming the first violated constraint.
    void validate() const;

    bool operator==(const ModelParams&) const = default;
};

} // namespace sparselob
