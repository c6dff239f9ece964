#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cpa/exact_oracle.hpp"
#include "cpa/gillespie.hpp"
#include "cpa/stats.hpp"

#include <cmath>

using namespace cpa;
using namespace cpa::oracle;

namespace {

Topology two_path()
{
    return Topology::custom(2, {{0, 1}, {1, 0}});
}

Topology path_of(int n)
{
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) {
        edges.push_back({i, i + 1});
        edges.push_back({i + 1, i});
    }
    return Topology::custom(n, edges);
}

} // namespace

TEST_CASE("single vertex enumerates two states with mean time one")
{
    Topology topo = Topology::custom(1, {});
    auto space = enumerate_state_space(topo, Configuration::single_infected(topo, 0), Params{1, 1});
    CHECK(space.size() == 2);
    auto gen = build_generator(space, topo, Params{1, 1});
    CHECK(mean_absorption_time(space, gen) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("2-path reachable state counts")
{
    Topology topo = two_path();
    Configuration cfg0 = Configuration::single_infected(topo, 0);
    CHECK(enumerate_state_space(topo, cfg0, Params{1.0, 0.5}).size() == 6);
    CHECK(enumerate_state_space(topo, cfg0, Params{1.0, 0.0}).size() == 4);
}

TEST_CASE("alpha = 0 state count equals the classical vertex-only count")
{
    for (int n : {2, 3, 4}) {
        Topology topo = path_of(n);
        auto space = enumerate_state_space(topo, Configuration::single_infected(topo, 0), Params{1.0, 0.0});
        // with no avoidance every edge stays active, so states are exactly
        // the reachable infection sets; from one infected vertex on a path
        // that is every subset
        CHECK(space.size() == (1u << n));
        for (const auto& s : space.states)
            for (auto bit : s.e)
                CHECK(bit == 1);
    }
}

TEST_CASE("2-path mean absorption times match hand solves")
{
    Topology topo = two_path();
    Configuration cfg0 = Configuration::single_infected(topo, 0);

    auto solve = [&](Params p) {
        auto space = enumerate_state_space(topo, cfg0, p);
        return mean_absorption_time(space, build_generator(space, topo, p));
    };
    CHECK(solve(Params{1.0, 0.0}) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(solve(Params{1.0, 1.0}) == doctest::Approx(1.25).epsilon(1e-12));
}

TEST_CASE("generator rows sum to zero")
{
    Topology topo = path_of(3);
    Params p{1.7, 0.9};
    auto space = enumerate_state_space(topo, Configuration::single_infected(topo, 1), p);
    auto gen = build_generator(space, topo, p);
    std::vector<double> row_sum = gen.diagonal;
    for (const auto& e : gen.off_diagonal)
        row_sum[static_cast<std::size_t>(e.from)] += e.rate;
    for (double s : row_sum)
        CHECK(std::fabs(s) < 1e-12);
}

TEST_CASE("state cap raises the documented error")
{
    Topology topo = path_of(4);
    CHECK_THROWS_AS(enumerate_state_space(topo, Configuration::all_infected(topo), Params{1, 1}, 5),
                    StateSpaceTooLarge);
}

TEST_CASE("escape probability closed form")
{
    CHECK(edge_escape_probability(Params{2.0, 1.0}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(edge_escape_probability(Params{0.0, 3.0}) == 0.0);
    CHECK(edge_escape_probability(Params{1.0, 1.0}) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("escape probability agrees with a min-of-exponentials experiment")
{
    // independent oracle: infection happens first among three clocks
    Params p{1.0, 1.0};
    RngStream rng(77, 0);
    const std::uint64_t reps = 1000000;
    std::uint64_t wins = 0;
    for (std::uint64_t r = 0; r < reps; ++r) {
        double infect = rng.exponential(p.lambda);
        double recover = rng.exponential(1.0);
        double avoid = rng.exponential(p.alpha);
        if (infect < recover && infect < avoid)
            ++wins;
    }
    double emp = static_cast<double>(wins) / static_cast<double>(reps);
    double se = std::sqrt(emp * (1.0 - emp) / static_cast<double>(reps));
    CHECK(std::fabs(emp - edge_escape_probability(p)) < 3.0 * se);
}

TEST_CASE("drift experiment lies below the escape probability")
{
    SUBCASE("lambda zero never steps left")
    {
        RngStream rng(78, 0);
        auto est = edge_drift_experiment(Params{0.0, 1.0}, 2000, rng);
        CHECK(est.step_left_frequency == 0.0);
    }

    SUBCASE("moderate parameters respect the bound")
    {
        Params p{1.0, 1.0};
        RngStream rng(79, 0);
        auto est = edge_drift_experiment(p, 20000, rng);
        CHECK(est.steps_observed > 10000);
        CHECK(est.step_left_frequency <= edge_escape_probability(p) + 3.0 * est.standard_error);
    }

    SUBCASE("large lambda approaches the closed form")
    {
        Params p{60.0, 1.0};
        RngStream rng(80, 0);
        auto est = edge_drift_experiment(p, 4000, rng);
        double cf = edge_escape_probability(p);
        CHECK(est.step_left_frequency <= cf + 3.0 * est.standard_error);
        CHECK(est.step_left_frequency > cf - 0.03);
    }
}

TEST_CASE("monte carlo extinction times agree with the solver on small graphs")
{
    // trimmed grid here; the acceptance suite runs the full one
    const std::uint64_t reps = 20000;
    for (const Topology& topo : {two_path(), path_of(3)}) {
        for (double lambda : {0.0, 1.0, 2.0}) {
            for (double alpha : {0.0, 1.0}) {
                Params p{lambda, alpha};
                Configuration cfg0 = Configuration::single_infected(topo, 0);
                auto space = enumerate_state_space(topo, cfg0, p);
                double exact = mean_absorption_time(space, build_generator(space, topo, p));

                std::vector<double> times;
                times.reserve(reps);
                for (std::uint64_t r = 0; r < reps; ++r) {
                    RngStream rng(1234, r);
                    times.push_back(*run_to_absorption(cfg0, topo, p, {}, rng).extinction_time);
                }
                auto m = cpa::stats::moments(times);
                INFO("lambda=", lambda, " alpha=", alpha, " exact=", exact, " mc=", m.mean);
                CHECK(std::fabs(m.mean - exact) < 3.0 * m.standard_error + 1e-12);
            }
        }
    }
}
