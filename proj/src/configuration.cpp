#include "cpa/configuration.hpp"

#include <stdexcept>
#include <string>

namespace cpa {

static const char* check_invariants(const Configuration& cfg, const Topology& topo)
{
    if (cfg.x.size() != static_cast<std::size_t>(topo.vertex_count()))
        return "vertex state size does not match topology";
    if (cfg.e.size() != static_cast<std::size_t>(topo.edge_count()))
        return "edge state size does not match topology";
    for (int k = 0; k < topo.edge_count(); ++k) {
        if (cfg.e[static_cast<std::size_t>(k)])
            continue;
        if (!cfg.x[static_cast<std::size_t>(topo.edge(k).src)])
            return "blocked edge with healthy source";
        int rev = topo.reverse_edge(k);
        if (rev >= 0 && !cfg.e[static_cast<std::size_t>(rev)])
            return "both directions of an edge pair blocked";
    }
    return nullptr;
}

void validate_configuration(const Configuration& cfg, const Topology& topo)
{
    if (const char* msg = check_invariants(cfg, topo))
        throw std::invalid_argument(std::string("invalid configuration: ") + msg);
}

bool configuration_is_valid(const Configuration& cfg, const Topology& topo)
{
    return check_invariants(cfg, topo) == nullptr;
}

} // namespace cpa
