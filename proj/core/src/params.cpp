#include "sparselob/params.hpp"

#include <cmath>
#include <string>

namespace sparselob {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ValidationError(msg);
}

void check_rate(double v, const std::string& key) {
    require(std::isfinite(v) && v >= 0.0, key + " must be a finite non-negative rate");
}

void check_distribution(const DiscreteVolumeDistribution& d, const std::string& key) {
    require(!d.probs.empty(), key + ".probs must not be empty");
    require(d.probs.size() == d.volumes.size(),
            key + ".probs and " + key + ".values_mwh must have the same length");
    double sum = 0.0;
    for (double p : d.probs) {
        require(std::isfinite(p) && p >= 0.0, key + ".probs must be non-negative");
        sum += p;
    }
    require(std::abs(sum - 1.0) <= 1e-12, key + ".probs must sum to 1");
    for (std::size_t i = 0; i < d.volumes.size(); ++i) {
        require(std::isfinite(d.volumes[i]) && d.volumes[i] > 0.0,
                key + ".values_mwh must be strictly positive");
        if (i > 0)
            require(d.volumes[i] > d.volumes[i - 1],
                    key + ".values_mwh must be strictly increasing");
    }
}

} // namespace

void ModelParams::validate() const {
    require(std::isfinite(horizon_hours) && horizon_hours > 0.0, "horizon_hours must be positive");
    require(levels_per_side >= 2, "levels_per_side must be at least 2");

    check_rate(market.base_rate, "market.base_rate");
    check_rate(market.time_decay, "market.time_decay");
    check_rate(market.spread_sensitivity, "market.spread_sensitivity");
    check_rate(limit.base_rate, "limit.base_rate");
    check_rate(limit.time_decay, "limit.time_decay");
    require(std::isfinite(limit.distance_rate_scale) && limit.distance_rate_scale > 0.0,
            "limit.distance_rate_scale must be strictly positive");
    check_rate(limit.distance_rate_decay, "limit.distance_rate_decay");
    check_rate(cancel.base_rate, "cancel.base_rate");
    check_rate(cancel.time_decay, "cancel.time_decay");

    check_distribution(market_volume, "market_volume");
    check_distribution(limit_volume, "limit_volume");

    require(std::isfinite(volume_floor) && volume_floor > 0.0,
            "volume_floor_mwh must be strictly positive");
    require(std::isfinite(tick) && tick > 0.0, "tick_eur must be strictly positive");
}

} // namespace sparselob
