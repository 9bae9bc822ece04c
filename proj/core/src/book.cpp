#include "sparselob/book.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sparselob {

namespace {

bool finite(double x) { return std::isfinite(x); }

std::int64_t price_to_ticks(double price_eur, double tick) {
    const double q = price_eur / tick;
    const double r = std::round(q);
    if (std::abs(q - r) > 1e-6) {
        std::ostringstream os;
        os << "price " << price_eur << " is not on the " << tick << " tick grid";
        throw ValidationError(os.str());
    }
    return static_cast<std::int64_t>(r);
}

// Smallest number of ticks >= distance, never less than one tick. Distances
// already on the grid stay put (1e-9 slack absorbs representation error).
std::int64_t outward_tick_distance(double distance_eur, double tick) {
    const double q = distance_eur / tick;
    const auto t = static_cast<std::int64_t>(std::ceil(q - 1e-9));
    return std::max<std::int64_t>(t, 1);
}

// Grid rounding for insertion candidates: floor when above the mid, ceil when
// below, so the candidate never moves away from the mid-price.
std::int64_t ticks_toward_mid(double price_eur, double tick, double mid_eur) {
    const double q = price_eur / tick;
    if (price_eur > mid_eur) return static_cast<std::int64_t>(std::floor(q + 1e-9));
    if (price_eur < mid_eur) return static_cast<std::int64_t>(std::ceil(q - 1e-9));
    return static_cast<std::int64_t>(std::llround(q));
}

void check_rank(const BookState& book, int rank) {
    if (rank < 1 || rank > book.levels())
        throw InvalidLevel("rank " + std::to_string(rank) + " out of range 1.." +
                           std::to_string(book.levels()));
}

} // namespace

const char* to_string(Side side) { return side == Side::Bid ? "bid" : "ask"; }

Side opposite(Side side) { return side == Side::Bid ? Side::Ask : Side::Bid; }

BookState::BookState(double time, double tick,
                     const std::vector<double>& bid_prices,
                     const std::vector<double>& ask_prices,
                     std::vector<double> bid_volumes,
                     std::vector<double> ask_volumes) {
    if (!(tick > 0.0) || !finite(tick)) throw ValidationError("tick must be positive");
    if (bid_prices.empty() || bid_prices.size() != ask_prices.size() ||
        bid_prices.size() != bid_volumes.size() || bid_prices.size() != ask_volumes.size())
        throw ValidationError("book sides must carry the same, non-zero number of levels");
    time_ = time;
    tick_ = tick;
    bid_ticks_.reserve(bid_prices.size());
    ask_ticks_.reserve(ask_prices.size());
    for (double p : bid_prices) bid_ticks_.push_back(price_to_ticks(p, tick));
    for (double p : ask_prices) ask_ticks_.push_back(price_to_ticks(p, tick));
    bid_volumes_ = std::move(bid_volumes);
    ask_volumes_ = std::move(ask_volumes);
}

BookState BookState::from_ticks(double time, double tick,
                                std::vector<std::int64_t> bid_ticks,
                                std::vector<std::int64_t> ask_ticks,
                                std::vector<double> bid_volumes,
                                std::vector<double> ask_volumes) {
    if (!(tick > 0.0) || !finite(tick)) throw ValidationError("tick must be positive");
    if (bid_ticks.empty() || bid_ticks.size() != ask_ticks.size() ||
        bid_ticks.size() != bid_volumes.size() || bid_ticks.size() != ask_volumes.size())
        throw ValidationError("book sides must carry the same, non-zero number of levels");
    BookState b;
    b.time_ = time;
    b.tick_ = tick;
    b.bid_ticks_ = std::move(bid_ticks);
    b.ask_ticks_ = std::move(ask_ticks);
    b.bid_volumes_ = std::move(bid_volumes);
    b.ask_volumes_ = std::move(ask_volumes);
    return b;
}

double BookState::price(Side side, int rank) const {
    check_rank(*this, rank);
    return static_cast<double>(side_ticks(side)[rank - 1]) * tick_;
}

double BookState::volume(Side side, int rank) const {
    check_rank(*this, rank);
    return side_volumes(side)[rank - 1];
}

std::int64_t BookState::price_ticks(Side side, int rank) const {
    check_rank(*this, rank);
    return side_ticks(side)[rank - 1];
}

const std::vector<std::int64_t>& BookState::side_ticks(Side side) const {
    return side == Side::Bid ? bid_ticks_ : ask_ticks_;
}

const std::vector<double>& BookState::side_volumes(Side side) const {
    return side == Side::Bid ? bid_volumes_ : ask_volumes_;
}

BookState BookState::with_time(double time) const {
    BookState b = *this;
    b.time_ = time;
    return b;
}

BookState BookState::with_side(Side side, std::vector<std::int64_t> ticks,
                               std::vector<double> volumes) const {
    if (ticks.size() != bid_ticks_.size() || volumes.size() != ticks.size())
        throw InternalError("with_side: level count changed");
    BookState b = *this;
    if (side == Side::Bid) {
        b.bid_ticks_ = std::move(ticks);
        b.bid_volumes_ = std::move(volumes);
    } else {
        b.ask_ticks_ = std::move(ticks);
        b.ask_volumes_ = std::move(volumes);
    }
    return b;
}

double mid_price(const BookState& book) {
    const auto sum = book.side_ticks(Side::Bid)[0] + book.side_ticks(Side::Ask)[0];
    return static_cast<double>(sum) * book.tick() * 0.5;
}

double spread(const BookState& book) {
    const auto d = book.side_ticks(Side::Ask)[0] - book.side_ticks(Side::Bid)[0];
    return static_cast<double>(d) * book.tick();
}

std::vector<double> cumulative_volumes(const BookState& book, Side side) {
    const auto& v = book.side_volumes(side);
    std::vector<double> cum(v.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        acc += v[i];
        cum[i] = acc;
    }
    return cum;
}

std::pair<BookState, TransitionReport>
apply_market_order(const BookState& book, Side side, const MarketOrderMarks& marks) {
    const int k_levels = book.levels();
    if (!(marks.volume > 0.0) || !finite(marks.volume))
        throw InvalidMarks("market order volume must be strictly positive");
    if (static_cast<int>(marks.regen_distances.size()) != k_levels - 1 ||
        static_cast<int>(marks.regen_volumes.size()) != k_levels - 1)
        throw InvalidMarks("market order marks must carry K-1 regeneration entries");
    for (double z : marks.regen_distances)
        if (!(z > 0.0) || !finite(z)) throw InvalidMarks("regeneration distance must be positive");
    for (double v : marks.regen_volumes)
        if (!(v > 0.0) || !finite(v)) throw InvalidMarks("regeneration volume must be positive");

    const auto& ticks = book.side_ticks(side);
    const auto& vols = book.side_volumes(side);
    const std::vector<double> cum = cumulative_volumes(book, side);
    if (!(marks.volume < cum.back()))
        throw VolumeExceedsSide("market order volume must stay below the side total");

    // cum[i] <= volume means levels 1..i+1 are fully consumed.
    int consumed = 0;
    while (consumed < k_levels - 1 && cum[consumed] <= marks.volume) ++consumed;
    const double residual = cum[consumed] - marks.volume;

    std::vector<std::int64_t> new_ticks;
    std::vector<double> new_vols;
    new_ticks.reserve(k_levels);
    new_vols.reserve(k_levels);
    for (int j = consumed; j < k_levels; ++j) {
        new_ticks.push_back(ticks[j]);
        new_vols.push_back(vols[j]);
    }
    new_vols[0] = residual;

    const std::int64_t direction = (side == Side::Ask) ? 1 : -1;
    std::int64_t outer = ticks[k_levels - 1];
    for (int m = 0; m < consumed; ++m) {
        outer += direction * outward_tick_distance(marks.regen_distances[m], book.tick());
        new_ticks.push_back(outer);
        new_vols.push_back(marks.regen_volumes[m]);
    }

    TransitionReport report;
    report.levels_consumed = consumed;
    report.executed_volume = marks.volume;
    report.regenerated_levels = consumed;
    return {book.with_side(side, std::move(new_ticks), std::move(new_vols)), report};
}

std::pair<BookState, TransitionReport>
apply_limit_order(const BookState& book, Side side, const LimitOrderMarks& marks) {
    if (!(marks.distance > 0.0) || !finite(marks.distance))
        throw InvalidMarks("limit order distance must be strictly positive");
    if (!(marks.volume > 0.0) || !finite(marks.volume))
        throw InvalidMarks("limit order volume must be strictly positive");

    const int k_levels = book.levels();
    const double tick = book.tick();
    const auto& own = book.side_ticks(side);
    const std::int64_t opp_best = book.side_ticks(opposite(side))[0];

    const double raw_price = (side == Side::Bid)
                                 ? book.ask_price(1) - marks.distance
                                 : book.bid_price(1) + marks.distance;
    std::int64_t p = ticks_toward_mid(raw_price, tick, mid_price(book));

    // Toward-mid direction: up for a bid, down for an ask.
    const std::int64_t toward_mid = (side == Side::Bid) ? 1 : -1;
    auto beyond_tail = [&](std::int64_t q) {
        return side == Side::Bid ? q < own[k_levels - 1] : q > own[k_levels - 1];
    };
    auto crosses_opposite = [&](std::int64_t q) {
        // A bid may not touch the best ask; an ask may not touch the best bid.
        return side == Side::Bid ? q >= opp_best : q <= opp_best;
    };

    TransitionReport report;
    report.limit_price = static_cast<double>(p) * tick;
    auto rejected = [&] {
        report.inserted_rank.reset();
        return std::pair<BookState, TransitionReport>{book, report};
    };

    if (beyond_tail(p) || crosses_opposite(p)) return rejected();

    // Tick collision with a level that survives the insertion (the outermost
    // level is dropped, so matching it is a plain replacement, not a clash).
    for (bool moved = true; moved;) {
        moved = false;
        for (int j = 0; j < k_levels - 1; ++j) {
            if (own[j] == p) {
                p += toward_mid;
                moved = true;
                break;
            }
        }
        if (crosses_opposite(p)) return rejected();
    }
    report.limit_price = static_cast<double>(p) * tick;

    int rank0 = 0;  // number of surviving levels strictly better than p
    for (int j = 0; j < k_levels; ++j) {
        const bool better = (side == Side::Bid) ? own[j] > p : own[j] < p;
        if (better) ++rank0;
    }

    std::vector<std::int64_t> new_ticks;
    std::vector<double> new_vols;
    new_ticks.reserve(k_levels);
    new_vols.reserve(k_levels);
    const auto& own_vols = book.side_volumes(side);
    for (int j = 0; j < rank0; ++j) {
        new_ticks.push_back(own[j]);
        new_vols.push_back(own_vols[j]);
    }
    new_ticks.push_back(p);
    new_vols.push_back(marks.volume);
    for (int j = rank0; j < k_levels - 1; ++j) {
        new_ticks.push_back(own[j]);
        new_vols.push_back(own_vols[j]);
    }

    report.inserted_rank = rank0 + 1;
    return {book.with_side(side, std::move(new_ticks), std::move(new_vols)), report};
}

BookState apply_cancel(const BookState& book, Side side, const CancelMarks& marks) {
    const int k_levels = book.levels();
    if (marks.level < 1 || marks.level > k_levels)
        throw InvalidLevel("cancel level " + std::to_string(marks.level) +
                           " out of range 1.." + std::to_string(k_levels));
    if (!(marks.regen_distance > 0.0) || !finite(marks.regen_distance))
        throw InvalidMarks("cancel regeneration distance must be positive");
    if (!(marks.regen_volume > 0.0) || !finite(marks.regen_volume))
        throw InvalidMarks("cancel regeneration volume must be positive");

    const auto& ticks = book.side_ticks(side);
    const auto& vols = book.side_volumes(side);
    const std::int64_t direction = (side == Side::Ask) ? 1 : -1;
    // The regenerated level is measured from the pre-cancel outermost price,
    // also when the outermost level itself is the one cancelled.
    const std::int64_t outer =
        ticks[k_levels - 1] + direction * outward_tick_distance(marks.regen_distance, book.tick());

    std::vector<std::int64_t> new_ticks;
    std::vector<double> new_vols;
    new_ticks.reserve(k_levels);
    new_vols.reserve(k_levels);
    for (int j = 0; j < k_levels; ++j) {
        if (j == marks.level - 1) continue;
        new_ticks.push_back(ticks[j]);
        new_vols.push_back(vols[j]);
    }
    new_ticks.push_back(outer);
    new_vols.push_back(marks.regen_volume);

    return book.with_side(side, std::move(new_ticks), std::move(new_vols));
}

std::vector<std::string> validate(const BookState& book) {
    std::vector<std::string> out;
    const auto& bid = book.side_ticks(Side::Bid);
    const auto& ask = book.side_ticks(Side::Ask);
    const auto& bid_v = book.side_volumes(Side::Bid);
    const auto& ask_v = book.side_volumes(Side::Ask);

    auto add = [&out](const std::string& msg) { out.push_back(msg); };

    if (bid.size() != ask.size() || bid.size() != bid_v.size() || bid.size() != ask_v.size())
        add("level counts differ between sides");
    if (bid.empty()) {
        add("book has no levels");
        return out;
    }
    for (std::size_t i = 0; i + 1 < bid.size(); ++i)
        if (!(bid[i] > bid[i + 1]))
            add("bid prices not strictly decreasing at ranks " + std::to_string(i + 1) + "/" +
                std::to_string(i + 2));
    for (std::size_t i = 0; i + 1 < ask.size(); ++i)
        if (!(ask[i] < ask[i + 1]))
            add("ask prices not strictly increasing at ranks " + std::to_string(i + 1) + "/" +
                std::to_string(i + 2));
    if (!(bid[0] < ask[0])) add("spread not strictly positive");
    for (std::size_t i = 0; i < bid_v.size(); ++i)
        if (!(bid_v[i] > 0.0) || !finite(bid_v[i]))
            add("bid volume not strictly positive at rank " + std::to_string(i + 1));
    for (std::size_t i = 0; i < ask_v.size(); ++i)
        if (!(ask_v[i] > 0.0) || !finite(ask_v[i]))
            add("ask volume not strictly positive at rank " + std::to_string(i + 1));
    if (!finite(book.time())) add("time is not finite");
    return out;
}

} // namespace sparselob
