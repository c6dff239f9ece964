#include "cpa/gillespie.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cpa {

bool event_enabled(const Configuration& cfg, const Topology& topo, const Event& ev)
{
    switch (ev.kind) {
    case EventKind::Infect:
    case EventKind::Block: {
        const auto& ed = topo.edge(ev.index);
        return cfg.x[static_cast<std::size_t>(ed.src)] && !cfg.x[static_cast<std::size_t>(ed.dst)] &&
               cfg.e[static_cast<std::size_t>(ev.index)];
    }
    case EventKind::Recover:
        return cfg.x[static_cast<std::size_t>(ev.index)] != 0;
    }
    return false;
}

RateTable enabled_rates(const Configuration& cfg, const Topology& topo, const Params& params)
{
    validate_configuration(cfg, topo);
    RateTable table;
    for (int v = 0; v < topo.vertex_count(); ++v) {
        if (cfg.x[static_cast<std::size_t>(v)]) {
            table.entries.push_back({{EventKind::Recover, v}, 1.0});
            table.total += 1.0;
        }
    }
    for (int k = 0; k < topo.edge_count(); ++k) {
        Event infect{EventKind::Infect, k};
        if (!event_enabled(cfg, topo, infect))
            continue;
        if (params.lambda > 0.0) {
            table.entries.push_back({infect, params.lambda});
            table.total += params.lambda;
        }
        if (params.alpha > 0.0) {
            table.entries.push_back({{EventKind::Block, k}, params.alpha});
            table.total += params.alpha;
        }
    }
    return table;
}

void apply_event(Configuration& cfg, const Topology& topo, const Event& ev)
{
    if (!event_enabled(cfg, topo, ev))
        throw std::logic_error("apply_event: event not enabled");
    switch (ev.kind) {
    case EventKind::Infect:
        cfg.x[static_cast<std::size_t>(topo.edge(ev.index).dst)] = 1;
        break;
    case EventKind::Recover:
        cfg.x[static_cast<std::size_t>(ev.index)] = 0;
        // rule-4 side effect: out-edges of a healthy source reopen at once
        for (int k : topo.out_edges(ev.index))
            cfg.e[static_cast<std::size_t>(k)] = 1;
        break;
    case EventKind::Block:
        cfg.e[static_cast<std::size_t>(ev.index)] = 0;
        break;
    }
}

GillespieEngine::GillespieEngine(const Topology& topo, const Params& params) : topo_(topo), params_(params)
{
    params_.validate();
    boundary_flag_.assign(static_cast<std::size_t>(topo.vertex_count()), 0);
}

void GillespieEngine::reset(const Configuration& cfg0)
{
    validate_configuration(cfg0, topo_);
    cfg_ = cfg0;
    t_ = 0.0;
    events_ = 0;
    infected_.reset(topo_.vertex_count());
    frontier_.reset(topo_.edge_count());
    for (int v = 0; v < topo_.vertex_count(); ++v)
        if (cfg_.x[static_cast<std::size_t>(v)])
            infected_.insert(v);
    for (int k = 0; k < topo_.edge_count(); ++k)
        if (event_enabled(cfg_, topo_, {EventKind::Infect, k}))
            frontier_.insert(k);
}

double GillespieEngine::total_rate() const
{
    return static_cast<double>(infected_.size()) +
           (params_.lambda + params_.alpha) * static_cast<double>(frontier_.size());
}

// r is uniform on [0, total); category thresholds are [infect | recover | block].
Event GillespieEngine::select_event(double r) const
{
    const double lam = params_.lambda;
    const double alp = params_.alpha;
    const double n_front = static_cast<double>(frontier_.size());
    const double inf_cut = lam * n_front;
    const double rec_cut = inf_cut + static_cast<double>(infected_.size());

    if (r < inf_cut && frontier_.size() > 0) {
        int i = std::min(frontier_.size() - 1, static_cast<int>(r / lam));
        return {EventKind::Infect, frontier_.at(i)};
    }
    if (r < rec_cut && infected_.size() > 0) {
        int i = std::min(infected_.size() - 1, std::max(0, static_cast<int>(r - inf_cut)));
        return {EventKind::Recover, infected_.at(i)};
    }
    if (alp > 0.0 && frontier_.size() > 0) {
        int i = std::min(frontier_.size() - 1, std::max(0, static_cast<int>((r - rec_cut) / alp)));
        return {EventKind::Block, frontier_.at(i)};
    }
    // r rounded up to the total: fall back to the last nonempty category
    if (infected_.size() > 0)
        return {EventKind::Recover, infected_.at(infected_.size() - 1)};
    return {EventKind::Infect, frontier_.at(frontier_.size() - 1)};
}

void GillespieEngine::apply_and_update(const Event& ev)
{
    switch (ev.kind) {
    case EventKind::Infect: {
        int v = topo_.edge(ev.index).dst;
        cfg_.x[static_cast<std::size_t>(v)] = 1;
        infected_.insert(v);
        refresh_frontier_after_vertex_change(v);
        break;
    }
    case EventKind::Recover: {
        int v = ev.index;
        cfg_.x[static_cast<std::size_t>(v)] = 0;
        infected_.erase(v);
        for (int k : topo_.out_edges(v))
            cfg_.e[static_cast<std::size_t>(k)] = 1;
        refresh_frontier_after_vertex_change(v);
        break;
    }
    case EventKind::Block: {
        cfg_.e[static_cast<std::size_t>(ev.index)] = 0;
        frontier_.erase(ev.index);
        break;
    }
    }
    ++events_;
}

void GillespieEngine::refresh_frontier_after_vertex_change(int v)
{
    for (int k : topo_.out_edges(v)) {
        if (event_enabled(cfg_, topo_, {EventKind::Infect, k}))
            frontier_.insert(k);
        else
            frontier_.erase(k);
    }
    for (int k : topo_.in_edges(v)) {
        if (event_enabled(cfg_, topo_, {EventKind::Infect, k}))
            frontier_.insert(k);
        else
            frontier_.erase(k);
    }
}

bool GillespieEngine::step(RngStream& rng, Event* applied, double* dt_out)
{
    const double total = total_rate();
    if (total <= 0.0)
        return false;
    double dt = -std::log(rng.uniform_pos()) / total;
    Event ev = select_event(rng.uniform() * total);
    t_ += dt;
    apply_and_update(ev);
    if (applied)
        *applied = ev;
    if (dt_out)
        *dt_out = dt;
    return true;
}

SurvivalRecord GillespieEngine::run_to_absorption(const StopCondition& stop, RngStream& rng)
{
    SurvivalRecord rec;
    for (int v : stop.boundary_set)
        boundary_flag_[static_cast<std::size_t>(v)] = 1;

    for (;;) {
        if (infected_.size() == 0) {
            rec.outcome = Outcome::Extinct;
            rec.extinction_time = t_;
            break;
        }
        const double total = total_rate();
        double dt = -std::log(rng.uniform_pos()) / total;
        if (t_ + dt > stop.t_max) {
            t_ = stop.t_max;
            rec.outcome = Outcome::AliveAtCutoff;
            rec.censor_time = stop.t_max;
            break;
        }
        Event ev = select_event(rng.uniform() * total);
        t_ += dt;
        apply_and_update(ev);

        if (ev.kind == EventKind::Infect && boundary_flag_[static_cast<std::size_t>(topo_.edge(ev.index).dst)]) {
            rec.outcome = Outcome::BoundaryHit;
            rec.censor_time = t_;
            break;
        }
    }

    rec.event_count = events_;
    for (int v : stop.boundary_set)
        boundary_flag_[static_cast<std::size_t>(v)] = 0;
    return rec;
}

Configuration GillespieEngine::state_at_time(double t, RngStream& rng)
{
    for (;;) {
        const double total = total_rate();
        if (total <= 0.0)
            return cfg_;
        double dt = -std::log(rng.uniform_pos()) / total;
        if (t_ + dt > t) {
            t_ = t;
            return cfg_;
        }
        Event ev = select_event(rng.uniform() * total);
        t_ += dt;
        apply_and_update(ev);
    }
}

SurvivalRecord run_to_absorption(const Configuration& cfg0, const Topology& topo, const Params& params,
                                 const StopCondition& stop, RngStream& rng)
{
    GillespieEngine engine(topo, params);
    engine.reset(cfg0);
    return engine.run_to_absorption(stop, rng);
}

} // namespace cpa
