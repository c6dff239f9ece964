#include "cpa/block_percolation.hpp"

#include "cpa/event.hpp"
#include "cpa/gillespie.hpp"

#include <cmath>
#include <stdexcept>

namespace cpa::block {

const char* block_class_name(BlockClassKind kind)
{
    switch (kind) {
    case BlockClassKind::A2L:
        return "A2L";
    case BlockClassKind::A2R:
        return "A2R";
    case BlockClassKind::A2O:
        return "A2O";
    case BlockClassKind::A3L:
        return "A3L";
    case BlockClassKind::A3R:
        return "A3R";
    case BlockClassKind::A3O:
        return "A3O";
    case BlockClassKind::A4:
        return "A4";
    case BlockClassKind::Other:
        return "Other";
    }
    return "?";
}

Topology block_topology()
{
    return Topology::custom(4, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 3}, {3, 2}});
}

namespace {

// Pair state of the undirected edge {i, i+1}: Open = both directions active,
// RightBlocked = e(i, i+1) = 0, LeftBlocked = e(i+1, i) = 0.
enum class PairState : std::uint8_t { Open, RightBlocked, LeftBlocked };

struct BlockView {
    bool x[4];
    PairState pair[3];
};

BlockView view_of(const Configuration& cfg, const Topology& topo)
{
    validate_configuration(cfg, topo);
    BlockView view{};
    for (int v = 0; v < 4; ++v)
        view.x[v] = cfg.x[static_cast<std::size_t>(v)] != 0;
    for (int i = 0; i < 3; ++i) {
        int fwd = topo.edge_index(i, i + 1);
        int bwd = topo.edge_index(i + 1, i);
        bool f = cfg.e[static_cast<std::size_t>(fwd)] != 0;
        bool b = cfg.e[static_cast<std::size_t>(bwd)] != 0;
        view.pair[i] = f ? (b ? PairState::Open : PairState::LeftBlocked) : PairState::RightBlocked;
    }
    return view;
}

BlockView reflect(const BlockView& v)
{
    BlockView r{};
    for (int i = 0; i < 4; ++i)
        r.x[i] = v.x[3 - i];
    for (int i = 0; i < 3; ++i) {
        PairState p = v.pair[2 - i];
        r.pair[i] = p == PairState::Open ? PairState::Open
                    : p == PairState::RightBlocked ? PairState::LeftBlocked
                                                   : PairState::RightBlocked;
    }
    return r;
}

bool matches(const BlockView& v, BlockClassKind kind)
{
    switch (kind) {
    case BlockClassKind::A4:
        return v.x[0] && v.x[1] && v.x[2] && v.x[3] && v.pair[0] == PairState::Open &&
               v.pair[1] == PairState::Open && v.pair[2] == PairState::Open;
    case BlockClassKind::A3O:
        return v.x[0] && v.x[1] && v.x[2] && v.pair[0] == PairState::Open && v.pair[1] == PairState::Open &&
               v.pair[2] == PairState::Open;
    case BlockClassKind::A3L:
        return v.x[0] && v.x[1] && v.x[2] && v.pair[0] == PairState::Open && v.pair[1] == PairState::Open &&
               v.pair[2] == PairState::RightBlocked;
    case BlockClassKind::A3R:
        return v.x[0] && v.x[1] && v.x[2] && v.x[3] && v.pair[0] == PairState::Open &&
               v.pair[1] == PairState::Open && v.pair[2] == PairState::LeftBlocked;
    case BlockClassKind::A2O:
        return v.x[0] && v.x[1] && v.pair[0] == PairState::Open && v.pair[1] == PairState::Open;
    case BlockClassKind::A2L:
        return v.x[0] && v.x[1] && v.pair[0] == PairState::Open && v.pair[1] == PairState::RightBlocked;
    case BlockClassKind::A2R:
        return v.x[0] && v.x[1] && v.x[2] && v.pair[0] == PairState::Open &&
               v.pair[1] == PairState::LeftBlocked;
    case BlockClassKind::Other:
        return false;
    }
    return false;
}

} // namespace

BlockClass classify_block(const Configuration& cfg, const Topology& topo)
{
    BlockView v = view_of(cfg, topo);
    BlockView r = reflect(v);

    if (matches(v, BlockClassKind::A4))
        return {BlockClassKind::A4, false};

    static constexpr BlockClassKind order[] = {BlockClassKind::A3O, BlockClassKind::A3L, BlockClassKind::A3R,
                                               BlockClassKind::A2O, BlockClassKind::A2L, BlockClassKind::A2R};
    for (BlockClassKind kind : order) {
        if (matches(v, kind))
            return {kind, false};
        if (matches(r, kind))
            return {kind, true};
    }
    return {BlockClassKind::Other, false};
}

Configuration block_start_configuration(BlockClassKind kind, const Topology& topo)
{
    Configuration cfg = Configuration::all_healthy(topo);
    auto block_edge = [&](int src, int dst) { cfg.e[static_cast<std::size_t>(topo.edge_index(src, dst))] = 0; };
    switch (kind) {
    case BlockClassKind::A2O:
        cfg.x = {1, 1, 0, 0};
        break;
    case BlockClassKind::A2L:
        cfg.x = {1, 1, 0, 0};
        block_edge(1, 2);
        break;
    case BlockClassKind::A2R:
        cfg.x = {1, 1, 1, 0};
        block_edge(2, 1);
        break;
    default:
        throw std::invalid_argument("block start class must be one of A2O, A2L, A2R");
    }
    validate_configuration(cfg, topo);
    return cfg;
}

GoodBlockEstimate block_good_probability(const Params& params, double tau, BlockClassKind start_class,
                                         std::uint64_t replicas, BoundaryMode boundary_mode, RngStream& rng)
{
    if (!(tau > 0.0))
        throw std::invalid_argument("block_good_probability: tau must be positive");
    if (replicas < 1)
        throw std::invalid_argument("block_good_probability: replicas must be >= 1");
    params.validate();

    Topology topo = block_topology();
    Configuration start = block_start_configuration(start_class, topo);
    const bool hostile = boundary_mode == BoundaryMode::Hostile;

    std::uint64_t good = 0;
    for (std::uint64_t rep = 0; rep < replicas; ++rep) {
        Configuration cfg = start;
        // pseudo-edges from the permanently infected outside neighbors into
        // vertices 0 and 3; they block like interior edges but never reopen
        // because their source never recovers
        bool ext_open[2] = {true, true};
        double t = 0.0;

        for (;;) {
            RateTable table = enabled_rates(cfg, topo, params);
            double total = table.total;
            double ext_rate[2] = {0.0, 0.0};
            if (hostile) {
                const int target[2] = {0, 3};
                for (int s = 0; s < 2; ++s) {
                    if (!cfg.x[static_cast<std::size_t>(target[s])] && ext_open[s]) {
                        ext_rate[s] = params.lambda + params.alpha;
                        total += ext_rate[s];
                    }
                }
            }
            if (total <= 0.0)
                break;
            double dt = -std::log(rng.uniform_pos()) / total;
            if (t + dt > tau)
                break;
            t += dt;

            double r = rng.uniform() * total;
            if (r < table.total) {
                for (const auto& [ev, rate] : table.entries) {
                    if (r < rate) {
                        apply_event(cfg, topo, ev);
                        break;
                    }
                    r -= rate;
                }
            } else {
                r -= table.total;
                const int target[2] = {0, 3};
                for (int s = 0; s < 2; ++s) {
                    if (ext_rate[s] <= 0.0)
                        continue;
                    if (r < ext_rate[s]) {
                        if (r < params.lambda)
                            cfg.x[static_cast<std::size_t>(target[s])] = 1; // outside infection lands
                        else
                            ext_open[s] = false; // the block vertex avoids the outside
                        break;
                    }
                    r -= ext_rate[s];
                }
            }
        }

        if (classify_block(cfg, topo).kind == BlockClassKind::A4)
            ++good;
    }

    GoodBlockEstimate est;
    est.replicas = replicas;
    est.probability = static_cast<double>(good) / static_cast<double>(replicas);
    est.standard_error =
        std::sqrt(std::max(est.probability * (1.0 - est.probability), 1e-300) / static_cast<double>(replicas));
    return est;
}

} // namespace cpa::block
