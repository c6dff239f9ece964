#include "cpa/exact_oracle.hpp"

#include "cpa/event.hpp"
#include "cpa/gillespie.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <unordered_map>

namespace cpa::oracle {

namespace {

std::uint64_t pack_state(const Configuration& cfg)
{
    std::uint64_t key = 0;
    std::size_t bit = 0;
    for (auto b : cfg.x)
        key |= static_cast<std::uint64_t>(b) << bit++;
    for (auto b : cfg.e)
        key |= static_cast<std::uint64_t>(b) << bit++;
    return key;
}

} // namespace

StateSpace enumerate_state_space(const Topology& topo, const Configuration& cfg0, const Params& params,
                                 std::size_t state_cap)
{
    params.validate();
    validate_configuration(cfg0, topo);
    if (static_cast<std::size_t>(topo.vertex_count() + topo.edge_count()) > 63)
        throw StateSpaceTooLarge("state packing supports at most 63 state bits");

    StateSpace space;
    std::unordered_map<std::uint64_t, int> index;
    std::deque<int> queue;

    auto intern = [&](const Configuration& cfg) {
        auto [it, inserted] = index.emplace(pack_state(cfg), static_cast<int>(space.states.size()));
        if (inserted) {
            if (space.states.size() >= state_cap)
                throw StateSpaceTooLarge("reachable state space exceeds cap");
            space.states.push_back(cfg);
            space.absorbing.push_back(cfg.infected_count() == 0 ? 1 : 0);
            queue.push_back(it->second);
        }
        return it->second;
    };

    space.initial_index = intern(cfg0);
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        RateTable table = enabled_rates(space.states[static_cast<std::size_t>(s)], topo, params);
        for (const auto& [ev, rate] : table.entries) {
            Configuration next = space.states[static_cast<std::size_t>(s)];
            apply_event(next, topo, ev);
            intern(next);
        }
    }
    return space;
}

GeneratorMatrix build_generator(const StateSpace& space, const Topology& topo, const Params& params)
{
    std::unordered_map<std::uint64_t, int> index;
    for (std::size_t i = 0; i < space.states.size(); ++i)
        index.emplace(pack_state(space.states[i]), static_cast<int>(i));

    GeneratorMatrix gen;
    gen.diagonal.assign(space.states.size(), 0.0);
    for (std::size_t s = 0; s < space.states.size(); ++s) {
        RateTable table = enabled_rates(space.states[s], topo, params);
        for (const auto& [ev, rate] : table.entries) {
            Configuration next = space.states[s];
            apply_event(next, topo, ev);
            int to = index.at(pack_state(next));
            gen.off_diagonal.push_back({static_cast<int>(s), to, rate});
            gen.diagonal[s] -= rate;
        }
    }
    return gen;
}

double mean_absorption_time(const StateSpace& space, const GeneratorMatrix& generator)
{
    const int n = static_cast<int>(space.size());
    std::vector<int> transient_id(static_cast<std::size_t>(n), -1);
    int n_transient = 0;
    for (int s = 0; s < n; ++s)
        if (!space.absorbing[static_cast<std::size_t>(s)])
            transient_id[static_cast<std::size_t>(s)] = n_transient++;

    if (transient_id[static_cast<std::size_t>(space.initial_index)] < 0)
        return 0.0;

    // every transient state must be able to reach the absorbing set
    {
        std::vector<std::vector<int>> rev(static_cast<std::size_t>(n));
        for (const auto& e : generator.off_diagonal)
            rev[static_cast<std::size_t>(e.to)].push_back(e.from);
        std::vector<std::uint8_t> seen(static_cast<std::size_t>(n), 0);
        std::deque<int> queue;
        for (int s = 0; s < n; ++s)
            if (space.absorbing[static_cast<std::size_t>(s)]) {
                seen[static_cast<std::size_t>(s)] = 1;
                queue.push_back(s);
            }
        if (queue.empty())
            throw AbsorbingUnreachable("no absorbing state in the enumerated space");
        while (!queue.empty()) {
            int s = queue.front();
            queue.pop_front();
            for (int p : rev[static_cast<std::size_t>(s)])
                if (!seen[static_cast<std::size_t>(p)]) {
                    seen[static_cast<std::size_t>(p)] = 1;
                    queue.push_back(p);
                }
        }
        for (int s = 0; s < n; ++s)
            if (!seen[static_cast<std::size_t>(s)])
                throw AbsorbingUnreachable("a transient state cannot reach absorption");
    }

    Eigen::SparseMatrix<double> A(n_transient, n_transient);
    std::vector<Eigen::Triplet<double>> triplets;
    for (const auto& e : generator.off_diagonal) {
        int fi = transient_id[static_cast<std::size_t>(e.from)];
        int ti = transient_id[static_cast<std::size_t>(e.to)];
        if (fi >= 0 && ti >= 0)
            triplets.emplace_back(fi, ti, -e.rate);
    }
    for (int s = 0; s < n; ++s) {
        int fi = transient_id[static_cast<std::size_t>(s)];
        if (fi >= 0)
            triplets.emplace_back(fi, fi, -generator.diagonal[static_cast<std::size_t>(s)]);
    }
    A.setFromTriplets(triplets.begin(), triplets.end());
    A.makeCompressed();

    Eigen::SparseLU<Eigen::SparseMatrix<double>> solver;
    solver.analyzePattern(A);
    solver.factorize(A);
    if (solver.info() != Eigen::Success)
        throw AbsorbingUnreachable("singular transient generator");
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(n_transient);
    Eigen::VectorXd m = solver.solve(ones);
    if (solver.info() != Eigen::Success)
        throw AbsorbingUnreachable("linear solve failed");
    return m(transient_id[static_cast<std::size_t>(space.initial_index)]);
}

double edge_escape_probability(const Params& params)
{
    params.validate();
    double denom = params.lambda + 1.0 + params.alpha;
    if (denom <= 0.0)
        throw std::invalid_argument("edge_escape_probability: lambda + 1 + alpha must be positive");
    return params.lambda / denom;
}

DriftEstimate edge_drift_experiment(const Params& params, std::uint64_t replicas, RngStream& rng,
                                    int half_width, int max_steps_per_replica)
{
    if (replicas < 1)
        throw std::invalid_argument("edge_drift_experiment: replicas must be >= 1");
    params.validate();
    Topology topo = Topology::path_window(half_width);

    std::uint64_t steps = 0;
    std::uint64_t lefts = 0;

    for (std::uint64_t r = 0; r < replicas; ++r) {
        // right half infected, all edges active; leftmost infected at label 0
        Configuration cfg = Configuration::all_healthy(topo);
        for (int lbl = 0; lbl <= half_width; ++lbl)
            cfg.x[static_cast<std::size_t>(topo.vertex_of_label(lbl))] = 1;

        GillespieEngine engine(topo, params);
        engine.reset(cfg);

        int leftmost_label = 0;
        for (int s = 0; s < max_steps_per_replica; ++s) {
            if (leftmost_label - 1 < -half_width)
                break; // next left step would leave the window
            Event ev{};
            bool moved = false;
            while (engine.step(rng, &ev)) {
                const Configuration& c = engine.configuration();
                int new_leftmost = std::numeric_limits<int>::max();
                for (int v = 0; v < topo.vertex_count(); ++v)
                    if (c.x[static_cast<std::size_t>(v)])
                        new_leftmost = std::min(new_leftmost, topo.vertex_label(v));
                if (new_leftmost == std::numeric_limits<int>::max()) {
                    // extinct: counts as a non-left step
                    ++steps;
                    moved = false;
                    leftmost_label = std::numeric_limits<int>::max();
                    break;
                }
                if (new_leftmost != leftmost_label) {
                    ++steps;
                    if (new_leftmost < leftmost_label)
                        ++lefts;
                    leftmost_label = new_leftmost;
                    moved = true;
                    break;
                }
            }
            if (!moved)
                break; // extinct or absorbing
        }
    }

    DriftEstimate est;
    est.steps_observed = steps;
    if (steps > 0) {
        double p = static_cast<double>(lefts) / static_cast<double>(steps);
        est.step_left_frequency = p;
        est.standard_error = std::sqrt(std::max(p * (1.0 - p), 1e-300) / static_cast<double>(steps));
    }
    return est;
}

} // namespace cpa::oracle
