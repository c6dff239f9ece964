#pragma once

#include "cpa/topology.hpp"

#include <cstdint>
#include <vector>

namespace cpa {

// Joint vertex/edge state. x[i] = 1 means vertex i is infected, e[k] = 1
// means directed edge k is active. Reachable states satisfy two facts:
// a blocked edge always has an infected source (instant reactivation
// otherwise), and the two directions of a pair are never both blocked.
struct Configuration {
    std::vector<std::uint8_t> x;
    std::vector<std::uint8_t> e;

    static Configuration all_healthy(const Topology& topo)
    {
        Configuration c;
        c.x.assign(static_cast<std::size_t>(topo.vertex_count()), 0);
        c.e.assign(static_cast<std::size_t>(topo.edge_count()), 1);
        return c;
    }

    static Configuration all_infected(const Topology& topo)
    {
        Configuration c = all_healthy(topo);
        c.x.assign(c.x.size(), 1);
        return c;
    }

    static Configuration single_infected(const Topology& topo, int vertex)
    {
        Configuration c = all_healthy(topo);
        c.x[static_cast<std::size_t>(vertex)] = 1;
        return c;
    }

    int infected_count() const
    {
        int k = 0;
        for (auto b : x)
            k += b;
        return k;
    }

    bool operator==(const Configuration& o) const = default;
};

// Throws std::invalid_argument when the reachability invariants fail.
void validate_configuration(const Configuration& cfg, const Topology& topo);
bool configuration_is_valid(const Configuration& cfg, const Topology& topo);

} // namespace cpa
