#include "cpa/harris.hpp"

#include "cpa/event.hpp"
#include "cpa/gillespie.hpp"

#include <algorithm>
#include <stdexcept>

namespace cpa {

std::size_t HarrisTrace::arrival_count() const
{
    std::size_t n = 0;
    for (const auto& v : infection)
        n += v.size();
    for (const auto& v : avoidance)
        n += v.size();
    for (const auto& v : recovery)
        n += v.size();
    return n;
}

static std::vector<double> poisson_arrivals(double rate, double horizon, RngStream& rng)
{
    std::vector<double> times;
    if (rate <= 0.0)
        return times;
    double t = rng.exponential(rate);
    while (t <= horizon) {
        times.push_back(t);
        t += rng.exponential(rate);
    }
    return times;
}

HarrisTrace harris_sample(const Topology& topo, const Params& params, double horizon, RngStream& rng)
{
    if (!(horizon > 0.0))
        throw std::invalid_argument("harris_sample: horizon must be positive");
    params.validate();
    HarrisTrace trace;
    trace.horizon = horizon;
    trace.infection.resize(static_cast<std::size_t>(topo.edge_count()));
    trace.avoidance.resize(static_cast<std::size_t>(topo.edge_count()));
    trace.recovery.resize(static_cast<std::size_t>(topo.vertex_count()));
    for (int k = 0; k < topo.edge_count(); ++k)
        trace.infection[static_cast<std::size_t>(k)] = poisson_arrivals(params.lambda, horizon, rng);
    for (int v = 0; v < topo.vertex_count(); ++v)
        trace.recovery[static_cast<std::size_t>(v)] = poisson_arrivals(1.0, horizon, rng);
    for (int k = 0; k < topo.edge_count(); ++k)
        trace.avoidance[static_cast<std::size_t>(k)] = poisson_arrivals(params.alpha, horizon, rng);
    return trace;
}

namespace {

struct Arrival {
    double time;
    EventKind kind;
    std::int32_t index;
};

std::vector<Arrival> merged_arrivals(const HarrisTrace& trace)
{
    std::vector<Arrival> all;
    all.reserve(trace.arrival_count());
    for (std::size_t k = 0; k < trace.infection.size(); ++k)
        for (double t : trace.infection[k])
            all.push_back({t, EventKind::Infect, static_cast<std::int32_t>(k)});
    for (std::size_t v = 0; v < trace.recovery.size(); ++v)
        for (double t : trace.recovery[v])
            all.push_back({t, EventKind::Recover, static_cast<std::int32_t>(v)});
    for (std::size_t k = 0; k < trace.avoidance.size(); ++k)
        for (double t : trace.avoidance[k])
            all.push_back({t, EventKind::Block, static_cast<std::int32_t>(k)});
    std::sort(all.begin(), all.end(), [](const Arrival& a, const Arrival& b) {
        if (a.time != b.time)
            return a.time < b.time;
        if (a.kind != b.kind)
            return static_cast<int>(a.kind) < static_cast<int>(b.kind);
        return a.index < b.index;
    });
    return all;
}

void replay_into(const std::vector<Arrival>& arrivals, Configuration& cfg, const Topology& topo)
{
    for (const Arrival& a : arrivals) {
        Event ev{a.kind, a.index};
        if (event_enabled(cfg, topo, ev))
            apply_event(cfg, topo, ev);
    }
}

} // namespace

Configuration harris_replay(const HarrisTrace& trace, const Configuration& cfg0, const Topology& topo)
{
    if (trace.infection.size() != static_cast<std::size_t>(topo.edge_count()) ||
        trace.recovery.size() != static_cast<std::size_t>(topo.vertex_count()))
        throw std::invalid_argument("harris_replay: trace does not match topology");
    validate_configuration(cfg0, topo);
    Configuration cfg = cfg0;
    replay_into(merged_arrivals(trace), cfg, topo);
    return cfg;
}

std::optional<NonmonotoneWitness> nonmonotone_witness_search(const Topology& topo, const Params& params,
                                                             double horizon, std::uint64_t budget,
                                                             RngStream& rng)
{
    const int n = topo.vertex_count();
    if (n > 16)
        throw std::invalid_argument("witness search enumerates subsets; need <= 16 vertices");
    const std::uint32_t n_subsets = 1u << n;

    std::vector<std::uint32_t> finals(n_subsets);
    std::vector<Configuration> cfgs(n_subsets, Configuration::all_healthy(topo));
    for (std::uint32_t s = 0; s < n_subsets; ++s)
        for (int v = 0; v < n; ++v)
            cfgs[s].x[static_cast<std::size_t>(v)] = (s >> v) & 1u;

    for (std::uint64_t it = 0; it < budget; ++it) {
        HarrisTrace trace = harris_sample(topo, params, horizon, rng);
        auto arrivals = merged_arrivals(trace);

        for (std::uint32_t s = 0; s < n_subsets; ++s) {
            Configuration cfg = cfgs[s];
            replay_into(arrivals, cfg, topo);
            std::uint32_t f = 0;
            for (int v = 0; v < n; ++v)
                f |= static_cast<std::uint32_t>(cfg.x[static_cast<std::size_t>(v)]) << v;
            finals[s] = f;
        }

        for (std::uint32_t small = 0; small < n_subsets; ++small) {
            for (std::uint32_t large = small + 1; large < n_subsets; ++large) {
                if ((small & large) != small || small == large)
                    continue;
                // violation: the final set of the larger start misses a vertex
                // that the smaller start infects
                if ((finals[small] & ~finals[large]) != 0) {
                    NonmonotoneWitness w;
                    w.trace = std::move(trace);
                    w.traces_examined = it + 1;
                    for (int v = 0; v < n; ++v) {
                        if ((small >> v) & 1u)
                            w.initial_small.push_back(v);
                        if ((large >> v) & 1u)
                            w.initial_large.push_back(v);
                        if ((finals[small] >> v) & 1u)
                            w.final_small.push_back(v);
                        if ((finals[large] >> v) & 1u)
                            w.final_large.push_back(v);
                    }
                    return w;
                }
            }
        }
    }
    return std::nullopt;
}

} // namespace cpa
