#pragma once

#include <cstdint>

#include "sparselob/book.hpp"

namespace sparselob {

enum class EventClass : std::uint8_t { Market, Limit, Cancel };

const char* to_string(EventClass cls);

/// One realized point of the order-flow processes. `level` is the 1-based
/// target rank for cancellations and zero otherwise.
struct EventKind {
    EventClass cls = EventClass::Market;
    Side side = Side::Bid;
    int level = 0;

    bool operator==(const EventKind&) const = default;
};

/// Dense index over (class, side): market bid/ask, limit bid/ask, cancel
/// bid/ask. Cancellations of different levels share one slot.
inline constexpr int kEventClassCount = 6;
int event_class_index(const EventKind& kind);
const char* event_class_label(int index);

} // namespace sparselob
