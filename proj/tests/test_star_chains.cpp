#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cpa/exact_oracle.hpp"
#include "cpa/gillespie.hpp"
#include "cpa/star_chains.hpp"
#include "cpa/stats.hpp"

#include <cmath>

using namespace cpa;
using namespace cpa::star;

TEST_CASE("zchain law parameters")
{
    Params p{1.0, 1.0};

    SUBCASE("z = 0 gives a zero-trial first component")
    {
        auto law = zchain_law(0, 10, p, 0.7);
        CHECK(law.x_trials == 0);
        CHECK(law.y_trials == 10);
    }

    SUBCASE("t = 0 pins u = 1 and v = 0")
    {
        auto law = zchain_law(4, 10, p, 0.0);
        CHECK(law.x_prob == 1.0);
        CHECK(law.y_prob == 0.0);
        CHECK(law.n_success == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    }

    SUBCASE("geometric mean matches (1 - p) / p")
    {
        RngStream rng(50, 0);
        const double lh = lambda_hat(p);
        const std::uint64_t reps = 1000000;
        double sum = 0.0, sumsq = 0.0;
        for (std::uint64_t r = 0; r < reps; ++r) {
            double n = static_cast<double>(rng.shifted_geometric(lh));
            sum += n;
            sumsq += n * n;
        }
        double mean = sum / reps;
        double expected = (1.0 - lh) / lh;
        double se = std::sqrt((sumsq / reps - mean * mean) / reps);
        CHECK(std::fabs(mean - expected) < 3.0 * se);
    }
}

TEST_CASE("zchain is absorbing at zero and dies immediately when lambda = 0")
{
    ZChain chain(50, Params{1.0, 1.0});
    RngStream rng(51, 0);
    CHECK(chain.step(0, rng) == 0);

    ZChain dead(50, Params{0.0, 0.5});
    CHECK(dead.step(50, rng) == 0);
    CHECK(dead.run(rng) == 1);
}

TEST_CASE("zchain run terminates and returns at least one phase")
{
    ZChain chain(64, Params{1.0, 1.0});
    for (std::uint64_t r = 0; r < 200; ++r) {
        RngStream rng(52, r);
        std::uint64_t tau = chain.run(rng);
        CHECK(tau >= 1);
        CHECK(tau < kNoPhaseCap);
    }
}

TEST_CASE("shared-randomness coupling is monotone after one step")
{
    ZChain chain(40, Params{1.0, 1.0});
    for (std::uint64_t r = 0; r < 10000; ++r) {
        RngStream rng(53, r);
        std::int64_t zs[2] = {12, 30}; // small, large
        chain.step_shared(zs, rng);
        CHECK(zs[0] <= zs[1]);
    }
}

TEST_CASE("klchain reduces to zchain when alpha = 0")
{
    const std::int64_t leaves = 16;
    Params p{1.0, 0.0};
    ZChain z(leaves, p);
    KLChain kl(leaves, p);
    const std::uint64_t reps = 4000;
    std::vector<double> tz, tk;
    for (std::uint64_t r = 0; r < reps; ++r) {
        RngStream ra(54, r);
        tz.push_back(static_cast<double>(z.run(ra)));
        RngStream rb(55, r);
        tk.push_back(static_cast<double>(kl.run(rb)));
    }
    auto ks = cpa::stats::ks_two_sample(tz, tk);
    CHECK(ks.p_value > 0.001);
}

TEST_CASE("klchain matches the reduced star's one-phase count")
{
    // 4 leaves = star on 5 vertices
    Params p{1.0, 1.0};
    KLChain kl(4, p);
    const std::uint64_t reps = 10000;
    std::vector<double> chain_phases, star_phases;
    for (std::uint64_t r = 0; r < reps; ++r) {
        RngStream ra(56, r);
        chain_phases.push_back(static_cast<double>(kl.run(ra)));
        RngStream rb(57, r);
        star_phases.push_back(static_cast<double>(reduced_star_run(5, p, rb).one_phase_count));
    }
    auto ks = cpa::stats::ks_two_sample(chain_phases, star_phases);
    CHECK(ks.p_value > 0.001);
}

TEST_CASE("reduced star on two vertices matches the exact 2-path solve")
{
    Params p{1.0, 1.0};
    Topology topo = Topology::custom(2, {{0, 1}, {1, 0}});
    Configuration cfg0 = Configuration::all_infected(topo);
    auto space = oracle::enumerate_state_space(topo, cfg0, p);
    double exact = oracle::mean_absorption_time(space, oracle::build_generator(space, topo, p));

    std::vector<double> times;
    const std::uint64_t reps = 100000;
    times.reserve(reps);
    for (std::uint64_t r = 0; r < reps; ++r) {
        RngStream rng(58, r);
        times.push_back(*reduced_star_run(2, p, rng).record.extinction_time);
    }
    auto m = cpa::stats::moments(times);
    CHECK(std::fabs(m.mean - exact) < 3.0 * m.standard_error);
}

TEST_CASE("reduced star extinction law equals the full engine on star(3)")
{
    Params p{1.0, 1.0};
    Topology topo = Topology::star(3);
    const std::uint64_t reps = 10000;
    std::vector<double> reduced, full;
    for (std::uint64_t r = 0; r < reps; ++r) {
        RngStream ra(59, r);
        reduced.push_back(*reduced_star_run(3, p, ra).record.extinction_time);
        RngStream rb(60, r);
        full.push_back(*run_to_absorption(Configuration::all_infected(topo), topo, p, {}, rb).extinction_time);
    }
    auto ks = cpa::stats::ks_two_sample(reduced, full);
    CHECK(ks.p_value > 0.001);
}

TEST_CASE("lambda = 0 reduces to the maximum of n recovery clocks")
{
    const int n = 6;
    Params p{0.0, 0.8};
    std::vector<double> times;
    const std::uint64_t reps = 100000;
    for (std::uint64_t r = 0; r < reps; ++r) {
        RngStream rng(61, r);
        times.push_back(*reduced_star_run(n, p, rng).record.extinction_time);
    }
    auto m = cpa::stats::moments(times);
    CHECK(std::fabs(m.mean - cpa::stats::harmonic_number(n)) < 3.0 * m.standard_error);
}

TEST_CASE("t_max censors the reduced run")
{
    Params p{5.0, 0.1};
    RngStream rng(62, 0);
    auto res = reduced_star_run(50, p, rng, 0.5);
    // strongly supercritical short run: expect censoring
    CHECK(res.record.outcome == Outcome::AliveAtCutoff);
    CHECK(res.record.censor_time == 0.5);
}
