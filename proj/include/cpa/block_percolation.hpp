#pragma once

#include "cpa/configuration.hpp"
#include "cpa/params.hpp"
#include "cpa/rng.hpp"
#include "cpa/topology.hpp"

#include <cstdint>
#include <vector>

namespace cpa::block {

// Classes of 4-vertex path configurations. The letter picks the state of the
// edge pair just beyond the infected run: O = open both ways, L = the
// outgoing direction is blocked (the healthy neighbor avoids the run),
// R = the incoming direction is blocked (the run avoids an infected
// neighbor). A4 = all four infected, every edge active.
enum class BlockClassKind : std::uint8_t { A2L, A2R, A2O, A3L, A3R, A3O, A4, Other };

struct BlockClass {
    BlockClassKind kind = BlockClassKind::Other;
    bool reflected = false; // pattern matched right-to-left

    int level() const
    {
        switch (kind) {
        case BlockClassKind::A2L:
        case BlockClassKind::A2R:
        case BlockClassKind::A2O:
            return 2;
        case BlockClassKind::A3L:
        case BlockClassKind::A3R:
        case BlockClassKind::A3O:
            return 3;
        case BlockClassKind::A4:
            return 4;
        case BlockClassKind::Other:
            return 0;
        }
        return 0;
    }
};

const char* block_class_name(BlockClassKind kind);

// The 4-vertex path the block construction lives on.
Topology block_topology();

// Classifies a valid configuration on block_topology(). Higher classes win
// when patterns overlap, unreflected orientation before reflected.
BlockClass classify_block(const Configuration& cfg, const Topology& topo);

// Canonical representative of an A2 start class: wildcard vertices healthy,
// unconstrained edge pairs active.
Configuration block_start_configuration(BlockClassKind kind, const Topology& topo);

enum class BoundaryMode : std::uint8_t {
    Closed, // block isolated from the rest of the line
    Hostile // permanently infected outside neighbors push Poisson(lambda)
            // infections into vertices 0 and 3, gated by an avoidable
            // pseudo-edge exactly like an interior edge
};

struct GoodBlockEstimate {
    double probability = 0.0;
    double standard_error = 0.0;
    std::uint64_t replicas = 0;
};

// Monte Carlo frequency that the block sits in A4 at time tau when started
// from the given A2 class representative.
GoodBlockEstimate block_good_probability(const Params& params, double tau, BlockClassKind start_class,
                                         std::uint64_t replicas, BoundaryMode boundary_mode, RngStream& rng);

} // namespace cpa::block
