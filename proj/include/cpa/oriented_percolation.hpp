#pragma once

#include "cpa/rng.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cpa::block {

// Oriented site percolation on {(x, t) : x + t even, t >= 0}: a site is
// occupied with probability p independently, and a site at level t >= 1 is
// wet when it is occupied and has a wet neighbor (|dx| = 1) at level t - 1.
// Level-0 sites of the initial row are wet by fiat.
struct OPLattice {
    double p = 0.5;
    int width = 1;  // number of level-0 sites in the initial row (spacing 2)
    int height = 1; // levels to simulate beyond level 0
};

struct OPRunResult {
    int survival_height = 0;            // last level with a wet site
    std::vector<int> right_edge;        // per level, max wet x (INT32_MIN when empty)
    std::vector<int> wet_counts;        // per level, number of wet sites
    bool survived_to(int level) const
    {
        return survival_height >= level;
    }
};

OPRunResult op_run(const OPLattice& lattice, RngStream& rng);

struct NoEstimateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EdgeSpeedEstimate {
    double speed = 0.0;         // median of r_n / n over surviving replicas
    std::uint64_t surviving = 0;
    std::uint64_t replicas = 0;
};

// Right-edge speed of the cluster grown from the single site (0, 0).
// Throws NoEstimateError when every replica dies before the target height.
EdgeSpeedEstimate op_edge_speed(double p, int height, std::uint64_t replicas, RngStream& rng);

// Coupled comparison of bond percolation at p_b with site percolation at
// p_s = p_b (2 - p_b) on shared uniforms. Returns true when the site cluster
// contains the bond cluster at every level of every replica.
bool op_site_dominates_bond(double p_b, int width, int height, std::uint64_t replicas, RngStream& rng);

} // namespace cpa::block
