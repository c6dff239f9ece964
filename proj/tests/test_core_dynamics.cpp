#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cpa/gillespie.hpp"
#include "cpa/stats.hpp"

#include <cmath>
#include <map>

using namespace cpa;

namespace {

Topology two_path()
{
    return Topology::custom(2, {{0, 1}, {1, 0}});
}

std::map<std::pair<int, int>, double> table_map(const RateTable& t, const Topology& topo)
{
    // key: (kind, vertex-or-dst) for readable assertions
    std::map<std::pair<int, int>, double> m;
    for (const auto& [ev, rate] : t.entries) {
        int id = ev.kind == EventKind::Recover ? ev.index : topo.edge(ev.index).dst;
        m[{static_cast<int>(ev.kind), id}] += rate;
    }
    return m;
}

} // namespace

TEST_CASE("enabled rates on the 2-path match the hand table")
{
    Topology topo = two_path();
    Params p{1.0, 1.0};

    SUBCASE("one infected, all edges active")
    {
        Configuration cfg = Configuration::single_infected(topo, 0);
        RateTable t = enabled_rates(cfg, topo, p);
        auto m = table_map(t, topo);
        CHECK(t.total == doctest::Approx(3.0));
        CHECK(m.at({static_cast<int>(EventKind::Infect), 1}) == doctest::Approx(1.0));
        CHECK(m.at({static_cast<int>(EventKind::Recover), 0}) == doctest::Approx(1.0));
        CHECK(m.at({static_cast<int>(EventKind::Block), 1}) == doctest::Approx(1.0));
        CHECK(t.entries.size() == 3);
    }

    SUBCASE("all healthy is absorbing")
    {
        RateTable t = enabled_rates(Configuration::all_healthy(topo), topo, p);
        CHECK(t.total == 0.0);
        CHECK(t.entries.empty());
    }

    SUBCASE("both infected: only recoveries, no block without a healthy target")
    {
        RateTable t = enabled_rates(Configuration::all_infected(topo), topo, p);
        CHECK(t.total == doctest::Approx(2.0));
        for (const auto& [ev, rate] : t.entries)
            CHECK(ev.kind == EventKind::Recover);
        CHECK(t.entries.size() == 2);
    }

    SUBCASE("blocked edge disables infect and block")
    {
        Configuration cfg = Configuration::single_infected(topo, 0);
        cfg.e[static_cast<std::size_t>(topo.edge_index(0, 1))] = 0;
        RateTable t = enabled_rates(cfg, topo, p);
        CHECK(t.total == doctest::Approx(1.0));
        CHECK(t.entries.size() == 1);
        CHECK(t.entries[0].first.kind == EventKind::Recover);
    }

    SUBCASE("full hand enumeration over every reachable state")
    {
        // states: (x0 x1, blocked-edge description) -> expected total rate
        // reachable set per the exact enumerator: 6 states for alpha > 0
        Configuration a = Configuration::single_infected(topo, 0);
        Configuration b = Configuration::all_infected(topo);
        Configuration c = Configuration::all_healthy(topo);
        Configuration d = a;
        d.e[static_cast<std::size_t>(topo.edge_index(0, 1))] = 0;
        Configuration e = Configuration::single_infected(topo, 1);
        Configuration f = e;
        f.e[static_cast<std::size_t>(topo.edge_index(1, 0))] = 0;

        CHECK(enabled_rates(a, topo, p).total == doctest::Approx(3.0));
        CHECK(enabled_rates(b, topo, p).total == doctest::Approx(2.0));
        CHECK(enabled_rates(c, topo, p).total == doctest::Approx(0.0));
        CHECK(enabled_rates(d, topo, p).total == doctest::Approx(1.0));
        CHECK(enabled_rates(e, topo, p).total == doctest::Approx(3.0));
        CHECK(enabled_rates(f, topo, p).total == doctest::Approx(1.0));
    }
}

TEST_CASE("alpha = 0 or lambda = 0 drop the matching rows")
{
    Topology topo = two_path();
    Configuration cfg = Configuration::single_infected(topo, 0);
    RateTable no_block = enabled_rates(cfg, topo, Params{1.0, 0.0});
    CHECK(no_block.entries.size() == 2);
    CHECK(no_block.total == doctest::Approx(2.0));
    RateTable no_infect = enabled_rates(cfg, topo, Params{0.0, 1.0});
    CHECK(no_infect.entries.size() == 2);
    CHECK(no_infect.total == doctest::Approx(2.0));
}

TEST_CASE("invariant-violating configuration is rejected")
{
    Topology topo = two_path();
    Configuration cfg = Configuration::all_healthy(topo);
    cfg.e[0] = 0; // blocked edge with healthy source
    CHECK_THROWS_AS(enabled_rates(cfg, topo, Params{1, 1}), std::invalid_argument);

    Configuration both = Configuration::all_infected(topo);
    both.e[0] = 0;
    both.e[1] = 0;
    CHECK_THROWS_AS(validate_configuration(both, topo), std::invalid_argument);
}

TEST_CASE("event application rules")
{
    Topology topo = two_path();
    int e01 = topo.edge_index(0, 1);

    SUBCASE("recover heals the vertex and keeps edges active")
    {
        Configuration cfg = Configuration::single_infected(topo, 0);
        apply_event(cfg, topo, {EventKind::Recover, 0});
        CHECK(cfg == Configuration::all_healthy(topo));
    }

    SUBCASE("block deactivates only the edge")
    {
        Configuration cfg = Configuration::single_infected(topo, 0);
        apply_event(cfg, topo, {EventKind::Block, e01});
        CHECK(cfg.x[0] == 1);
        CHECK(cfg.x[1] == 0);
        CHECK(cfg.e[static_cast<std::size_t>(e01)] == 0);
    }

    SUBCASE("recover reactivates the previously blocked out-edge")
    {
        Configuration cfg = Configuration::single_infected(topo, 0);
        apply_event(cfg, topo, {EventKind::Block, e01});
        apply_event(cfg, topo, {EventKind::Recover, 0});
        CHECK(cfg == Configuration::all_healthy(topo));
    }

    SUBCASE("disabled events are rejected")
    {
        Configuration cfg = Configuration::all_healthy(topo);
        CHECK_THROWS_AS(apply_event(cfg, topo, {EventKind::Recover, 0}), std::logic_error);
        CHECK_THROWS_AS(apply_event(cfg, topo, {EventKind::Infect, e01}), std::logic_error);
    }
}

TEST_CASE("engine preserves configuration invariants and matches the rate table")
{
    Topology topo = Topology::cycle(6);
    Params p{1.3, 2.1};
    GillespieEngine engine(topo, p);
    RngStream rng(99, 0);

    engine.reset(Configuration::single_infected(topo, 0));
    for (int i = 0; i < 2000; ++i) {
        RateTable ref = enabled_rates(engine.configuration(), topo, p);
        CHECK(engine.total_rate() == doctest::Approx(ref.total).epsilon(1e-12));
        if (!engine.step(rng))
            break;
        CHECK(configuration_is_valid(engine.configuration(), topo));
    }
}

TEST_CASE("single infected vertex dies at an Exp(1) time")
{
    Topology topo = Topology::custom(1, {});
    Params p{2.0, 3.0};
    std::vector<double> times;
    for (std::uint64_t r = 0; r < 100000; ++r) {
        RngStream rng(7, r);
        auto rec = run_to_absorption(Configuration::single_infected(topo, 0), topo, p, {}, rng);
        REQUIRE(rec.outcome == Outcome::Extinct);
        times.push_back(*rec.extinction_time);
    }
    auto m = cpa::stats::moments(times);
    CHECK(std::fabs(m.mean - 1.0) < 3.0 * m.standard_error);
}

TEST_CASE("all-healthy start is extinct at time zero")
{
    Topology topo = two_path();
    RngStream rng(1, 2);
    auto rec = run_to_absorption(Configuration::all_healthy(topo), topo, Params{1, 1}, {}, rng);
    CHECK(rec.outcome == Outcome::Extinct);
    CHECK(*rec.extinction_time == 0.0);
}

TEST_CASE("2-path mean extinction time matches the exact chain solve")
{
    Topology topo = two_path();
    // 4-state chain by hand: 5/4 for lambda = alpha = 1, 3/2 for alpha = 0
    struct Case {
        Params p;
        double expected;
    };
    for (const Case& c : {Case{{1.0, 1.0}, 1.25}, Case{{1.0, 0.0}, 1.5}}) {
        std::vector<double> times;
        for (std::uint64_t r = 0; r < 100000; ++r) {
            RngStream rng(11, r);
            auto rec = run_to_absorption(Configuration::single_infected(topo, 0), topo, c.p, {}, rng);
            times.push_back(*rec.extinction_time);
        }
        auto m = cpa::stats::moments(times);
        CHECK(std::fabs(m.mean - c.expected) < 3.0 * m.standard_error);
    }
}

TEST_CASE("identical seeds give bit-identical records")
{
    Topology topo = Topology::cycle(8);
    Params p{2.0, 0.7};
    StopCondition stop;
    stop.t_max = 50.0;
    RngStream r1(42, 17), r2(42, 17);
    auto a = run_to_absorption(Configuration::all_infected(topo), topo, p, stop, r1);
    auto b = run_to_absorption(Configuration::all_infected(topo), topo, p, stop, r2);
    CHECK(a == b);

    RngStream r3(42, 18);
    auto c = run_to_absorption(Configuration::all_infected(topo), topo, p, stop, r3);
    CHECK(a.event_count != c.event_count); // different stream actually differs
}

TEST_CASE("boundary censoring reports a hit on the window edge")
{
    Topology topo = Topology::path_window(2);
    Params p{50.0, 0.0}; // strong push outward
    StopCondition stop;
    stop.t_max = 1000.0;
    stop.boundary_set = {topo.vertex_of_label(-2), topo.vertex_of_label(2)};
    int hits = 0;
    for (std::uint64_t r = 0; r < 200; ++r) {
        RngStream rng(5, r);
        auto rec = run_to_absorption(Configuration::single_infected(topo, topo.vertex_of_label(0)), topo, p,
                                     stop, rng);
        if (rec.outcome == Outcome::BoundaryHit) {
            ++hits;
            CHECK(!rec.extinction_time.has_value());
            CHECK(rec.censor_time > 0.0);
        }
    }
    CHECK(hits > 150); // lambda = 50 reaches the edge almost surely
}
