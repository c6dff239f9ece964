#pragma once

#include <cstdint>
#include <optional>

namespace cpa {

enum class Outcome : std::uint8_t { Extinct, AliveAtCutoff, BoundaryHit };

// Result of one replica. extinction_time is engaged exactly when the
// outcome is Extinct; censored runs report the censoring time via t_max
// (AliveAtCutoff) or the hitting time (BoundaryHit) in censor_time.
struct SurvivalRecord {
    Outcome outcome = Outcome::Extinct;
    std::optional<double> extinction_time;
    double censor_time = 0.0;
    std::uint64_t event_count = 0;
    std::uint64_t master_seed = 0;
    std::uint64_t replica_index = 0;

    double observed_time() const
    {
        return extinction_time ? *extinction_time : censor_time;
    }

    bool operator==(const SurvivalRecord&) const = default;
};

inline const char* outcome_name(Outcome o)
{
    switch (o) {
    case Outcome::Extinct:
        return "extinct";
    case Outcome::AliveAtCutoff:
        return "alive_at_tmax";
    case Outcome::BoundaryHit:
        return "boundary_hit";
    }
    return "unknown";
}

} // namespace cpa
