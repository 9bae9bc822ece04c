#pragma once

#include "sparselob/book.hpp"
#include "sparselob/params.hpp"

namespace sparselob {

/// Market-order arrival rate for one side, 1/h. Increasing in t, decreasing
/// in the spread.
double market_intensity(double t, double spread_eur, const ModelParams& params);

/// Limit-order arrival rate for one side, 1/h. Increasing in t.
double limit_intensity(double t, const ModelParams& params);

/// Cancellation rate of a single level on one side, 1/h; every level carries
/// an independent stream, so a side cancels at levels() times this rate.
double cancel_intensity(double t, const ModelParams& params);

/// Per-kind rates of the superposed order flow at time t with the spread
/// frozen at the given book's value. The breakdown doubles as the categorical
/// weight vector for event-kind selection.
struct IntensityBreakdown {
    double market_bid = 0.0;
    double market_ask = 0.0;
    double limit_bid = 0.0;
    double limit_ask = 0.0;
    double cancel_bid_level = 0.0;  // one bid level
    double cancel_ask_level = 0.0;  // one ask level
    int levels = 0;

    double total() const {
        return market_bid + market_ask + limit_bid + limit_ask +
               static_cast<double>(levels) * (cancel_bid_level + cancel_ask_level);
    }
};

IntensityBreakdown total_intensity(double t, const BookState& book, const ModelParams& params);

} // namespace sparselob
