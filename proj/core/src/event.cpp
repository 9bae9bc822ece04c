#include "sparselob/event.hpp"

namespace sparselob {

const char* to_string(EventClass cls) {
    switch (cls) {
    case EventClass::Market: return "market";
    case EventClass::Limit: return "limit";
    case EventClass::Cancel: return "cancel";
    }
    return "?";
}

int event_class_index(const EventKind& kind) {
    const int base = kind.cls == EventClass::Market ? 0 : kind.cls == EventClass::Limit ? 2 : 4;
    return base + (kind.side == Side::Bid ? 0 : 1);
}

const char* event_class_label(int index) {
    static const char* labels[kEventClassCount] = {"market_bid", "market_ask", "limit_bid",
                                                   "limit_ask",  "cancel_bid", "cancel_ask"};
    return (index >= 0 && index < kEventClassCount) ? labels[index] : "?";
}

} // namespace sparselob
