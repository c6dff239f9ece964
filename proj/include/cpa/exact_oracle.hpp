#pragma once

#include "cpa/configuration.hpp"
#include "cpa/params.hpp"
#include "cpa/rng.hpp"
#include "cpa/topology.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cpa::oracle {

struct StateSpaceTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AbsorbingUnreachable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Reachable closure from an initial configuration under single events,
// with the recover-and-reactivate side effect folded into one transition.
struct StateSpace {
    std::vector<Configuration> states;
    std::vector<std::uint8_t> absorbing; // all-healthy flags
    int initial_index = 0;

    std::size_t size() const { return states.size(); }
};

struct GeneratorMatrix {
    struct Entry {
        int from;
        int to;
        double rate;
    };
    std::vector<Entry> off_diagonal;
    std::vector<double> diagonal; // negative row sums
};

StateSpace enumerate_state_space(const Topology& topo, const Configuration& cfg0, const Params& params,
                                 std::size_t state_cap = 200000);

GeneratorMatrix build_generator(const StateSpace& space, const Topology& topo, const Params& params);

// Expected hitting time of the absorbing set from cfg0: solves
// (-Q_transient) m = 1 with a sparse direct factorization.
double mean_absorption_time(const StateSpace& space, const GeneratorMatrix& generator);

// Probability that an infection along one edge beats both the source's
// recovery and the target's avoidance: lambda / (lambda + 1 + alpha).
double edge_escape_probability(const Params& params);

struct DriftEstimate {
    double step_left_frequency = 0.0;
    double standard_error = 0.0;
    std::uint64_t steps_observed = 0;
};

// Empirical frequency that the leftmost infected vertex steps left, measured
// on a finite window of the line via the event engine. Bounded above by
// edge_escape_probability: an already-blocked left edge can only resolve
// through a recovery, which retracts the edge further right.
DriftEstimate edge_drift_experiment(const Params& params, std::uint64_t replicas, RngStream& rng,
                                    int half_width = 4, int max_steps_per_replica = 32);

} // namespace cpa::oracle
