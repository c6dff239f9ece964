#pragma once

#include "cpa/configuration.hpp"
#include "cpa/params.hpp"
#include "cpa/rng.hpp"
#include "cpa/topology.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace cpa {

// Pre-sampled Poisson clocks: per directed edge an infection clock (rate
// lambda) and an avoidance clock (rate alpha), per vertex a recovery clock
// (rate 1), all on [0, horizon]. The process is read off deterministically,
// which makes coupling different initial states on shared randomness possible.
struct HarrisTrace {
    double horizon = 0.0;
    std::vector<std::vector<double>> infection;  // by edge index
    std::vector<std::vector<double>> avoidance;  // by edge index
    std::vector<std::vector<double>> recovery;   // by vertex index

    std::size_t arrival_count() const;
};

HarrisTrace harris_sample(const Topology& topo, const Params& params, double horizon, RngStream& rng);

// Deterministic replay: arrivals are processed in global time order and each
// takes effect only if its enabling condition holds just before it fires.
// Equal times (never seen with continuous clocks) break by event kind then index.
Configuration harris_replay(const HarrisTrace& trace, const Configuration& cfg0, const Topology& topo);

struct NonmonotoneWitness {
    HarrisTrace trace;
    std::vector<std::int32_t> initial_small; // infected vertices, subset of initial_large
    std::vector<std::int32_t> initial_large;
    std::vector<std::int32_t> final_small;
    std::vector<std::int32_t> final_large;
    std::uint64_t traces_examined = 0;
};

// Samples traces and replays every initial infected subset (all edges active)
// looking for a nested pair whose final infected sets are not nested. With
// alpha = 0 the dynamics are attractive and the search provably comes back
// empty. Only practical for small graphs (replays 2^V subsets per trace).
std::optional<NonmonotoneWitness> nonmonotone_witness_search(const Topology& topo, const Params& params,
                                                             double horizon, std::uint64_t budget,
                                                             RngStream& rng);

} // namespace cpa
