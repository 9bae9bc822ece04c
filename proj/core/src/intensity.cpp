#include "sparselob/intensity.hpp"

#include <cmath>

namespace sparselob {

double market_intensity(double t, double spread_eur, const ModelParams& params) {
    const double to_horizon = params.horizon_hours - t;
    return params.market.base_rate * std::exp(-params.market.time_decay * to_horizon) *
           std::exp(-params.market.spread_sensitivity * spread_eur);
}

double limit_intensity(double t, const ModelParams& params) {
    return params.limit.base_rate * std::exp(-params.limit.time_decay * (params.horizon_hours - t));
}

double cancel_intensity(double t, const ModelParams& params) {
    return params.cancel.base_rate * std::exp(-params.cancel.time_decay * (params.horizon_hours - t));
}

IntensityBreakdown total_intensity(double t, const BookState& book, const ModelParams& params) {
    IntensityBreakdown bd;
    const double m = market_intensity(t, spread(book), params);
    const double l = limit_intensity(t, params);
    const double c = cancel_intensity(t, params);
    bd.market_bid = m;
    bd.market_ask = m;
    bd.limit_bid = l;
    bd.limit_ask = l;
    bd.cancel_bid_level = c;
    bd.cancel_ask_level = c;
    bd.levels = book.levels();
    return bd;
}

} // namespace sparselob
