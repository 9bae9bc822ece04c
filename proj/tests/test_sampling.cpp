#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "helpers.hpp"
#include "sparselob/sampling.hpp"

using namespace sparselob;
using sparselob::testing::reference_book;

TEST_CASE("market volume truncation keeps draws strictly inside the side") {
    const ModelParams params;
    // Index 2 carries 5 MWh; untouched when the side is deep.
    CHECK(market_volume_from_index(2, params, 100.0) == doctest::Approx(5.0));
    // A 25 MWh draw against a 4 MWh side truncates to 4 - volume_floor.
    CHECK(market_volume_from_index(5, params, 4.0) == doctest::Approx(3.9));

    RngStream rng(42, 0);
    CHECK_THROWS_AS((void)sample_market_volume(rng, params, 0.05), SideTooThin);
    for (int i = 0; i < 1000; ++i) {
        const double v = sample_market_volume(rng, params, 3.0);
        CHECK(v > 0.0);
        CHECK(v < 3.0);
    }
}

TEST_CASE("degenerate categorical draws are deterministic") {
    ModelParams params;
    params.limit_volume.probs = {1, 0, 0, 0, 0, 0};
    RngStream rng(7, 0);
    for (int i = 0; i < 100; ++i) CHECK(sample_volume_mark(rng, params) == doctest::Approx(1.0));

    const double weights[3] = {0.2, 0.5, 0.3};
    std::set<std::size_t> seen;
    for (int i = 0; i < 2000; ++i) seen.insert(sample_categorical(rng, weights));
    CHECK(seen == std::set<std::size_t>{0, 1, 2});
}

TEST_CASE("limit distance law follows the time-varying exponential rate") {
    const ModelParams params;
    CHECK(limit_distance_rate(4.0, params) == doctest::Approx(0.145));
    CHECK(limit_distance_rate(0.0, params) == doctest::Approx(0.145 * std::exp(-0.08)));

    RngStream rng(11, 0);
    for (int i = 0; i < 1000; ++i) CHECK(sample_limit_distance(2.0, rng, params) > 0.0);
}

TEST_CASE("regeneration marks carry count pairs from the limit-order laws") {
    const ModelParams params;
    RngStream rng(3, 1);
    const RegenMarks marks = sample_regen_marks(1.0, rng, params, 4);
    REQUIRE(marks.distances.size() == 4);
    REQUIRE(marks.volumes.size() == 4);
    const std::set<double> allowed(params.limit_volume.volumes.begin(),
                                   params.limit_volume.volumes.end());
    for (double z : marks.distances) CHECK(z > 0.0);
    for (double v : marks.volumes) CHECK(allowed.count(v) == 1);
}

TEST_CASE("event kind selection respects degenerate weights") {
    RngStream rng(5, 0);
    IntensityBreakdown bd;
    bd.levels = 5;
    bd.limit_ask = 3.0;
    for (int i = 0; i < 50; ++i) {
        const EventKind kind = pick_event_kind(bd, rng);
        CHECK(kind.cls == EventClass::Limit);
        CHECK(kind.side == Side::Ask);
    }
    bd.limit_ask = 0.0;
    bd.cancel_bid_level = 1.0;
    for (int i = 0; i < 50; ++i) {
        const EventKind kind = pick_event_kind(bd, rng);
        CHECK(kind.cls == EventClass::Cancel);
        CHECK(kind.side == Side::Bid);
        CHECK(kind.level >= 1);
        CHECK(kind.level <= 5);
    }
}

TEST_CASE("zero total intensity yields session end") {
    ModelParams params;
    params.market.base_rate = 0.0;
    params.limit.base_rate = 0.0;
    params.cancel.base_rate = 0.0;
    RngStream rng(1, 0);
    CHECK_FALSE(sample_next_event(0.0, reference_book(), params, 3.0, rng).has_value());
}

TEST_CASE("next-event sampling is reproducible and time-ordered") {
    const ModelParams params;
    const BookState book = reference_book();

    auto draw_sequence = [&](std::uint64_t seed) {
        RngStream rng(seed, 3);
        std::vector<NextEvent> events;
        double t = 0.0;
        for (int i = 0; i < 200; ++i) {
            const auto next = sample_next_event(t, book, params, 3.0, rng);
            if (!next) break;
            CHECK(next->time > t);
            CHECK(next->time <= 3.0);
            events.push_back(*next);
            t = next->time;
        }
        return events;
    };

    const auto a = draw_sequence(99);
    const auto b = draw_sequence(99);
    const auto c = draw_sequence(100);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].time == b[i].time);
        CHECK(a[i].kind == b[i].kind);
    }
    CHECK(a.size() > 0);
    bool differs = a.size() != c.size();
    for (std::size_t i = 0; !differs && i < a.size(); ++i) differs = a[i].time != c[i].time;
    CHECK(differs);
}
