#pragma once

#include <cstdint>

namespace cpa {

// Infect and Block identify a directed edge, Recover a vertex. A Recover
// additionally reactivates every blocked out-edge of the recovering vertex;
// that reactivation is an instantaneous side effect, not a rated event.
enum class EventKind : std::uint8_t { Infect, Recover, Block };

struct Event {
    EventKind kind;
    std::int32_t index; // edge index for Infect/Block, vertex index for Recover

    bool operator==(const Event&) const = default;
};

} // namespace cpa
