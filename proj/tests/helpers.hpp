#pragma once

#include <vector>

#include "sparselob/book.hpp"
#include "sparselob/engine.hpp"

namespace sparselob::testing {

// The symmetric reference ladder: mid 50, spread 10, 5 MWh per level.
inline BookState reference_book(double time = 0.0) {
    return BookState(time, 0.01, {45, 44, 42, 39, 35}, {55, 56, 58, 61, 65},
                     std::vector<double>(5, 5.0), std::vector<double>(5, 5.0));
}

inline MarketOrderMarks market_marks(double volume,
                                     std::vector<double> distances = {4, 3, 2, 1},
                                     std::vector<double> volumes = {5, 6, 7, 8}) {
    return {volume, std::move(distances), std::move(volumes)};
}

inline std::vector<double> prices_of(const BookState& book, Side side) {
    std::vector<double> out;
    for (int k = 1; k <= book.levels(); ++k) out.push_back(book.price(side, k));
    return out;
}

inline std::vector<double> volumes_of(const BookState& book, Side side) {
    std::vector<double> out;
    for (int k = 1; k <= book.levels(); ++k) out.push_back(book.volume(side, k));
    return out;
}

} // namespace sparselob::testing
