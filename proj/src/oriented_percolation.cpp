#include "cpa/oriented_percolation.hpp"

#include <algorithm>
#include <climits>

namespace cpa::block {

// Skewed indexing: site (x, t) maps to j = (x + t) / 2, so level t holds
// j in [0, width - 1 + t] and wet(j, t) needs wet(j-1, t-1) or wet(j, t-1).
OPRunResult op_run(const OPLattice& lattice, RngStream& rng)
{
    if (lattice.width < 1 || lattice.height < 1)
        throw std::invalid_argument("op_run: width and height must be >= 1");
    if (lattice.p < 0.0 || lattice.p > 1.0)
        throw std::invalid_argument("op_run: p must lie in [0, 1]");

    OPRunResult result;
    result.right_edge.reserve(static_cast<std::size_t>(lattice.height) + 1);
    result.wet_counts.reserve(static_cast<std::size_t>(lattice.height) + 1);

    std::vector<std::uint8_t> wet(static_cast<std::size_t>(lattice.width), 1);
    result.right_edge.push_back(2 * (lattice.width - 1)); // x = 2j - t at t = 0
    result.wet_counts.push_back(lattice.width);
    result.survival_height = 0;

    std::vector<std::uint8_t> next;
    for (int t = 1; t <= lattice.height; ++t) {
        const int level_size = lattice.width + t;
        next.assign(static_cast<std::size_t>(level_size), 0);
        int count = 0;
        int right = INT_MIN;
        for (int j = 0; j < level_size; ++j) {
            // full-window draw keeps streams aligned across coupled runs
            const bool occupied = rng.uniform() < lattice.p;
            const bool left_parent = j >= 1 && j - 1 < static_cast<int>(wet.size()) && wet[static_cast<std::size_t>(j - 1)];
            const bool right_parent = j < static_cast<int>(wet.size()) && wet[static_cast<std::size_t>(j)];
            if (occupied && (left_parent || right_parent)) {
                next[static_cast<std::size_t>(j)] = 1;
                ++count;
                right = std::max(right, 2 * j - t);
            }
        }
        result.right_edge.push_back(count > 0 ? right : INT_MIN);
        result.wet_counts.push_back(count);
        if (count == 0)
            break;
        result.survival_height = t;
        wet.swap(next);
    }
    return result;
}

EdgeSpeedEstimate op_edge_speed(double p, int height, std::uint64_t replicas, RngStream& rng)
{
    if (height < 1 || replicas < 1)
        throw std::invalid_argument("op_edge_speed: height and replicas must be >= 1");

    OPLattice lattice{p, 1, height};
    std::vector<double> speeds;
    for (std::uint64_t r = 0; r < replicas; ++r) {
        OPRunResult run = op_run(lattice, rng);
        if (run.survival_height >= height)
            speeds.push_back(static_cast<double>(run.right_edge[static_cast<std::size_t>(height)]) /
                             static_cast<double>(height));
    }
    if (speeds.empty())
        throw NoEstimateError("op_edge_speed: every replica died before the target height");

    std::sort(speeds.begin(), speeds.end());
    EdgeSpeedEstimate est;
    est.replicas = replicas;
    est.surviving = speeds.size();
    const std::size_t m = speeds.size();
    est.speed = m % 2 == 1 ? speeds[m / 2] : 0.5 * (speeds[m / 2 - 1] + speeds[m / 2]);
    return est;
}

bool op_site_dominates_bond(double p_b, int width, int height, std::uint64_t replicas, RngStream& rng)
{
    for (std::uint64_t r = 0; r < replicas; ++r) {
        std::vector<std::uint8_t> bond_wet(static_cast<std::size_t>(width), 1);
        std::vector<std::uint8_t> site_wet(static_cast<std::size_t>(width), 1);
        std::vector<std::uint8_t> bond_next, site_next;

        for (int t = 1; t <= height; ++t) {
            const int level_size = width + t;
            bond_next.assign(static_cast<std::size_t>(level_size), 0);
            site_next.assign(static_cast<std::size_t>(level_size), 0);
            for (int j = 0; j < level_size; ++j) {
                const double u1 = rng.uniform();
                const double u2 = rng.uniform();
                const bool bp_left = j >= 1 && j - 1 < static_cast<int>(bond_wet.size()) &&
                                     bond_wet[static_cast<std::size_t>(j - 1)];
                const bool bp_right = j < static_cast<int>(bond_wet.size()) && bond_wet[static_cast<std::size_t>(j)];
                const bool sp_left = j >= 1 && j - 1 < static_cast<int>(site_wet.size()) &&
                                     site_wet[static_cast<std::size_t>(j - 1)];
                const bool sp_right = j < static_cast<int>(site_wet.size()) && site_wet[static_cast<std::size_t>(j)];

                const bool bond = (bp_left && u1 < p_b) || (bp_right && u2 < p_b);
                const bool site_occupied = u1 < p_b || u2 < p_b; // probability p_b (2 - p_b)
                const bool site = site_occupied && (sp_left || sp_right);
                if (bond && !site)
                    return false;
                bond_next[static_cast<std::size_t>(j)] = bond;
                site_next[static_cast<std::size_t>(j)] = site;
            }
            bond_wet.swap(bond_next);
            site_wet.swap(site_next);
        }
    }
    return true;
}

} // namespace cpa::block
