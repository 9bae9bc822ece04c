#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sparselob/errors.hpp"

namespace sparselob {

enum class Side : std::uint8_t { Bid, Ask };

const char* to_string(Side side);
Side opposite(Side side);

/// Marks attached to a market order: the traded volume plus the regeneration
/// sequences used to refill the tail of the ladder when levels are consumed.
/// Both regeneration lists carry exactly K-1 entries and are consumed front
/// to back; entries beyond the number of consumed levels are discarded.
struct MarketOrderMarks {
    double volume = 0.0;                  // MWh
    std::vector<double> regen_distances;  // EUR, gap to the previous appended level
    std::vector<double> regen_volumes;    // MWh
};

/// Marks of a limit insertion. The distance is measured from the best price
/// on the *opposite* side of the book.
struct LimitOrderMarks {
    double distance = 0.0;  // EUR
    double volume = 0.0;    // MWh
};

/// Marks of a full cancellation: which rank disappears and how the ladder
/// tail is regenerated.
struct CancelMarks {
    int level = 1;                // 1-based rank of the cancelled limit
    double regen_distance = 0.0;  // EUR beyond the previous outermost price
    double regen_volume = 0.0;    // MWh at the regenerated outermost level
};

/// Bookkeeping returned by the transition functions; carries no model
/// semantics, only what tests and trajectory logs want to record.
struct TransitionReport {
    int levels_consumed = 0;
    double executed_volume = 0.0;
    std::optional<int> inserted_rank;  // empty when a limit order was rejected
    int regenerated_levels = 0;
    double limit_price = 0.0;  // final candidate price of a limit insertion
};

/// Price/volume state of the K visible levels per side at a point in time.
///
/// Prices live on a fixed tick grid and are stored internally as integer
/// tick counts, so ordering comparisons and serialization are exact.
/// Ranks are 1-based: rank 1 is the best level of its side. A valid book has
/// strictly decreasing bid prices, strictly increasing ask prices, a strictly
/// positive spread and strictly positive volumes; see validate().
class BookState {
public:
    /// Empty book; fails validate(). Exists so that containers and record
    /// types can hold a BookState before one is assigned.
    BookState() = default;

    /// Builds a book from prices in EUR. Throws ValidationError if a price is
    /// not on the tick grid or the vectors disagree in length. Ordering and
    /// positivity are *not* enforced here so that validate() can report them.
    BookState(double time, double tick,
              const std::vector<double>& bid_prices,
              const std::vector<double>& ask_prices,
              std::vector<double> bid_volumes,
              std::vector<double> ask_volumes);

    static BookState from_ticks(double time, double tick,
                                std::vector<std::int64_t> bid_ticks,
                                std::vector<std::int64_t> ask_ticks,
                                std::vector<double> bid_volumes,
                                std::vector<double> ask_volumes);

    int levels() const { return static_cast<int>(bid_ticks_.size()); }
    double time() const { return time_; }
    double tick() const { return tick_; }

    double price(Side side, int rank) const;
    double volume(Side side, int rank) const;
    std::int64_t price_ticks(Side side, int rank) const;

    double bid_price(int rank) const { return price(Side::Bid, rank); }
    double ask_price(int rank) const { return price(Side::Ask, rank); }
    double bid_volume(int rank) const { return volume(Side::Bid, rank); }
    double ask_volume(int rank) const { return volume(Side::Ask, rank); }

    const std::vector<std::int64_t>& side_ticks(Side side) const;
    const std::vector<double>& side_volumes(Side side) const;

    BookState with_time(double time) const;
    BookState with_side(Side side, std::vector<std::int64_t> ticks,
                        std::vector<double> volumes) const;

    bool operator==(const BookState&) const = default;

private:
    double time_ = 0.0;
    double tick_ = 0.01;
    std::vector<std::int64_t> bid_ticks_;
    std::vector<std::int64_t> ask_ticks_;
    std::vector<double> bid_volumes_;
    std::vector<double> ask_volumes_;
};

/// Arithmetic mean of best bid and best ask. May sit half a tick off-grid.
double mid_price(const BookState& book);

/// Best ask minus best bid, strictly positive on a valid book.
double spread(const BookState& book);

/// Running sums of the side's volumes from the best level outward.
std::vector<double> cumulative_volumes(const BookState& book, Side side);

/// Executes a market order against `side`. The order consumes the i best
/// levels where i is determined by the cumulative volumes (an order whose
/// volume equals the cumulative volume of the first i levels consumes all i
/// of them); the next level keeps the residual volume, deeper levels move up,
/// and i regenerated levels are appended beyond the previous outermost price
/// at cumulative offsets taken from the marks.
///
/// Throws VolumeExceedsSide when the order is not strictly smaller than the
/// side's total volume, InvalidMarks on non-positive or missized marks.
std::pair<BookState, TransitionReport>
apply_market_order(const BookState& book, Side side, const MarketOrderMarks& marks);

/// Inserts a limit order on `side` at distance `marks.distance` from the
/// opposite best. The candidate price is rounded toward the mid-price onto
/// the tick grid; a price colliding with a surviving level moves one tick
/// toward the mid until free. Orders landing strictly beyond the outermost
/// level, or forced onto/through the opposite best, are rejected and leave
/// the book unchanged (reported via an empty inserted_rank). An accepted
/// insertion shifts deeper levels down and drops the previous outermost one.
std::pair<BookState, TransitionReport>
apply_limit_order(const BookState& book, Side side, const LimitOrderMarks& marks);

/// Removes level `marks.level` entirely, shifts deeper levels up and appends
/// a regenerated outermost level at `marks.regen_distance` beyond the
/// previous outermost price. Throws InvalidLevel / InvalidMarks.
BookState apply_cancel(const BookState& book, Side side, const CancelMarks& marks);

/// Returns one human-readable violation per broken invariant (empty when the
/// book is valid): price ordering per side, positive spread, positive
/// volumes, matching level counts.
std::vector<std::string> validate(const BookState& book);

} // namespace sparselob
