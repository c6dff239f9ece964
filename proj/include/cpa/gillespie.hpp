#pragma once

#include "cpa/configuration.hpp"
#include "cpa/event.hpp"
#include "cpa/params.hpp"
#include "cpa/rng.hpp"
#include "cpa/survival.hpp"
#include "cpa/topology.hpp"

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace cpa {

// List of currently enabled events with their rates. Reference path used by
// tests, the exact enumerator and the block simulator; the production engine
// keeps incremental index sets instead of rebuilding this table.
struct RateTable {
    std::vector<std::pair<Event, double>> entries;
    double total = 0.0;
};

RateTable enabled_rates(const Configuration& cfg, const Topology& topo, const Params& params);

// Applies one event including the reactivation side effect of Recover.
// Throws std::logic_error if the event is not enabled in cfg.
void apply_event(Configuration& cfg, const Topology& topo, const Event& ev);

bool event_enabled(const Configuration& cfg, const Topology& topo, const Event& ev);

struct StopCondition {
    double t_max = std::numeric_limits<double>::infinity();
    std::vector<std::int32_t> boundary_set; // run censors when any becomes infected
};

// Set of small integers with O(1) insert/erase/uniform-sample.
class IndexSet {
public:
    void reset(int universe)
    {
        items_.clear();
        pos_.assign(static_cast<std::size_t>(universe), -1);
    }
    bool contains(std::int32_t id) const { return pos_[static_cast<std::size_t>(id)] >= 0; }
    int size() const { return static_cast<int>(items_.size()); }
    std::int32_t at(int i) const { return items_[static_cast<std::size_t>(i)]; }

    void insert(std::int32_t id)
    {
        if (contains(id))
            return;
        pos_[static_cast<std::size_t>(id)] = static_cast<std::int32_t>(items_.size());
        items_.push_back(id);
    }

    void erase(std::int32_t id)
    {
        std::int32_t p = pos_[static_cast<std::size_t>(id)];
        if (p < 0)
            return;
        std::int32_t last = items_.back();
        items_[static_cast<std::size_t>(p)] = last;
        pos_[static_cast<std::size_t>(last)] = p;
        items_.pop_back();
        pos_[static_cast<std::size_t>(id)] = -1;
    }

private:
    std::vector<std::int32_t> items_;
    std::vector<std::int32_t> pos_;
};

// Direct-method engine. The indexed rate structure exploits that every
// enabled event has one of three rates: lambda and alpha both act on the
// frontier (active edges from infected to healthy), recovery on the
// infected set, so sampling is O(1) and updates are O(degree).
class GillespieEngine {
public:
    GillespieEngine(const Topology& topo, const Params& params);

    void reset(const Configuration& cfg0);

    const Configuration& configuration() const { return cfg_; }
    double time() const { return t_; }
    std::uint64_t event_count() const { return events_; }
    int infected_count() const { return infected_.size(); }
    double total_rate() const;

    // Advances one event. Returns false when the state is absorbing.
    bool step(RngStream& rng, Event* applied = nullptr, double* dt = nullptr);

    SurvivalRecord run_to_absorption(const StopCondition& stop, RngStream& rng);

    // State at a fixed time (the last event before t survives to t).
    Configuration state_at_time(double t, RngStream& rng);

private:
    Event select_event(double r) const;
    void apply_and_update(const Event& ev);
    void refresh_frontier_after_vertex_change(int v);

    const Topology& topo_;
    Params params_;
    Configuration cfg_;
    IndexSet infected_;
    IndexSet frontier_; // edge ids with x[src]=1, x[dst]=0, e=1
    std::vector<std::int32_t> boundary_flag_;
    double t_ = 0.0;
    std::uint64_t events_ = 0;
};

// One-call wrapper matching the operation signature used throughout.
SurvivalRecord run_to_absorption(const Configuration& cfg0, const Topology& topo, const Params& params,
                                 const StopCondition& stop, RngStream& rng);

} // namespace cpa
