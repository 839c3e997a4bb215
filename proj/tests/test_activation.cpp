#include <doctest.h>

#include "frog/errors.hpp"
#include "frog/kernel.hpp"
#include "support.hpp"

using namespace frog;
using namespace frog::testing;

namespace {

std::shared_ptr<ExplicitTrajectories> explicit_source() { return std::make_shared<ExplicitTrajectories>(); }

std::vector<Site> line(std::initializer_list<Coord> xs) {
    std::vector<Site> out;
    for (Coord x : xs) out.push_back(Site::of({x}));
    return out;
}

ActivationTrace iterate_reference(const FrogConfig& config, const Site& v, Step horizon, std::vector<Site> targets) {
    auto trace = initial_trace(config, v, targets);
    for (Step j = 0; j < horizon; ++j) trace = wavefront_step(config, trace);
    return trace;
}

} // namespace

TEST_SUITE("activation") {

TEST_CASE("one frog walking right activates one site per step") {
    auto src = explicit_source();
    src->set(Site::of({0}), 1, line({0, 1, 2, 3, 4, 5}));
    const auto w = Window::from_sites(Space::lattice(1), line({0, 1, 2, 3, 4, 5}));
    FrogConfig config(FrogCounts(w, {1, 0, 0, 0, 0, 0}), src);
    const auto trace = activate(config, Site::of({0}), 4, {Site::of({0})});
    CHECK(trace.waves[0] == line({0}));
    CHECK(trace.waves[1] == line({1}));
    CHECK(trace.waves[4] == line({4}));
    // Only the origin frog touches the origin.
    REQUIRE(trace.visitors.at(Site::of({0})).size() == 1);
    CHECK(trace.visitors.at(Site::of({0}))[0] == Visit{Site::of({0}), 1, 0});
    CHECK(trace.distinct_visitor_origins(Site::of({0})) == 0);
}

TEST_CASE("no frogs at the origin leaves the trace at {v}") {
    auto src = explicit_source();
    const auto w = Window::from_sites(Space::lattice(1), line({0, 1}));
    FrogConfig config(FrogCounts(w, {0, 3}), src);
    const auto trace = activate(config, Site::of({0}), 6);
    CHECK(trace.waves.size() == 7);
    CHECK(trace.waves[0] == line({0}));
    for (std::size_t j = 1; j < trace.waves.size(); ++j) CHECK(trace.waves[j].empty());
    CHECK(trace.quiescent);
}

TEST_CASE("woken frogs start moving one step after activation") {
    // 0's frog reaches 2 at time 2; 2's frog goes 2 -> 5 one step per unit.
    auto src = explicit_source();
    src->set(Site::of({0}), 1, line({0, 1, 2}));
    src->set(Site::of({2}), 1, line({2, 3, 4, 5}));
    const auto w = Window::from_sites(Space::lattice(1), line({0, 2}));
    FrogConfig config(FrogCounts(w, {1, 1}), src);
    const auto trace = activate(config, Site::of({0}), 6, {Site::of({5})});
    CHECK(trace.activation_time.at(Site::of({3})) == 3);
    CHECK(trace.activation_time.at(Site::of({5})) == 5);
    REQUIRE(trace.visitors.at(Site::of({5})).size() == 1);
    CHECK(trace.visitors.at(Site::of({5}))[0] == Visit{Site::of({2}), 1, 5});
    CHECK(trace.quiescent);
}

TEST_CASE("engine and reference recursion agree with the chain-enumeration oracle") {
    std::mt19937_64 gen(20240611);
    for (int rep = 0; rep < 150; ++rep) {
        const auto sc = random_small_config(gen);
        const Step horizon = std::uniform_int_distribution<Step>(0, 10)(gen);
        const std::vector<Site> targets = {sc.v, sc.sites.front(), sc.sites.back()};
        const auto engine = activate(sc.config, sc.v, horizon, targets);
        const auto reference = iterate_reference(sc.config, sc.v, horizon, targets);
        const auto oracle = waves_from_times(chain_activation_times(sc.config, sc.v, horizon), horizon);
        REQUIRE(engine.waves == oracle);
        REQUIRE(reference.waves == oracle);
        CHECK(engine.visitors == reference.visitors);
        CHECK(engine.quiescent == reference.quiescent);
        CHECK(waves_disjoint(engine));

        // Visits: first hit per frog among all activated frogs.
        const auto times = chain_activation_times(sc.config, sc.v, horizon);
        for (const auto& t : targets) {
            std::vector<Visit> expect;
            for (const auto& [y, ty] : times)
                for (FrogIndex i = 1; i <= sc.config.count(y); ++i)
                    for (Step k = 0; ty + k <= horizon; ++k)
                        if (sc.config.position(y, i, k) == t) {
                            expect.push_back({y, i, ty + k});
                            break;
                        }
            CHECK(engine.visitors.at(t) == expect);
        }
    }
}

TEST_CASE("seven-site path with three frogs per site matches the oracle") {
    std::mt19937_64 gen(7);
    for (int rep = 0; rep < 50; ++rep) {
        auto src = explicit_source();
        std::vector<Site> sites = line({0, 1, 2, 3, 4, 5, 6});
        std::vector<FrogCount> counts;
        for (const auto& x : sites) {
            counts.push_back(3);
            for (FrogIndex i = 1; i <= 3; ++i) {
                std::vector<Site> path{x};
                for (int j = 0; j < 6; ++j) {
                    Coord next = path.back()[0] + std::uniform_int_distribution<Coord>(-1, 1)(gen);
                    path.push_back(Site::of({std::clamp<Coord>(next, 0, 6)}));
                }
                src->set(x, i, path);
            }
        }
        FrogConfig config(FrogCounts(Window::from_sites(Space::lattice(1), sites), counts), src);
        const Site v = sites[static_cast<std::size_t>(rep % 7)];
        CHECK(activate(config, v, 5).waves == waves_from_times(chain_activation_times(config, v, 5), 5));
    }
}

TEST_CASE("frog cap keeps only the first min(n, cap) frogs") {
    std::mt19937_64 gen(99);
    for (int rep = 0; rep < 60; ++rep) {
        const auto sc = random_small_config(gen, 4);
        const FrogCount cap = std::uniform_int_distribution<FrogCount>(0, 3)(gen);
        std::vector<FrogCount> counts(sc.config.counts().values().begin(), sc.config.counts().values().end());
        for (auto& n : counts) n = std::min(n, cap);
        const auto reduced = with_counts(sc.config, FrogCounts(sc.config.counts().window(), counts));
        ActivationOptions options;
        options.horizon = 8;
        options.frog_cap = cap;
        CHECK(run_activation(sc.config, sc.v, options).waves == activate(reduced, sc.v, 8).waves);
    }
}

TEST_CASE("active subset at v gives a sub-trace of the full run") {
    std::mt19937_64 gen(5);
    for (int rep = 0; rep < 100; ++rep) {
        const auto sc = random_small_config(gen);
        const FrogCount n = sc.config.count(sc.v);
        if (n == 0) continue;
        ActivationOptions options;
        options.horizon = 10;
        options.targets = {sc.v};
        options.active_subset = std::vector<FrogIndex>{1};
        const auto part = run_activation(sc.config, sc.v, options);
        const auto full = activate(sc.config, sc.v, 10, {sc.v});
        const auto part_sites = activated_set(part);
        CHECK(subset_of(std::vector<Site>(part_sites.begin(), part_sites.end()), activated_set(full)));
        // Every partial visitor also visits in the full run, no later.
        const auto& all = full.visitors.at(sc.v);
        for (const auto& visit : part.visitors.at(sc.v)) {
            const auto it = std::find_if(all.begin(), all.end(), [&](const Visit& w) {
                return w.origin == visit.origin && w.index == visit.index;
            });
            REQUIRE(it != all.end());
            CHECK(it->time <= visit.time);
        }
        CHECK(part.waves ==
              waves_from_times(chain_activation_times(sc.config, sc.v, 10, std::vector<FrogIndex>{1}), 10));
    }
}

TEST_CASE("active subset outside 1..n(v) is rejected") {
    auto src = explicit_source();
    FrogConfig config(FrogCounts(Window::from_sites(Space::lattice(1), line({0})), {1}), src);
    ActivationOptions options;
    options.horizon = 1;
    options.active_subset = std::vector<FrogIndex>{2};
    CHECK_THROWS_AS(run_activation(config, Site::of({0}), options), PreconditionError);
}

TEST_CASE("max radius raises WindowExhausted with the offending site") {
    auto k = std::make_shared<ShiftKernel>(Site::of({1}));
    FrogConfig config(FrogCounts::constant(Window::l1_ball(1, 2), 1), make_sampler(k, RngStream(1)));
    ActivationOptions options;
    options.horizon = 20;
    options.max_radius = 5;
    try {
        (void)run_activation(config, Site::of({0}), options);
        FAIL("expected WindowExhausted");
    } catch (const WindowExhausted& e) {
        CHECK(e.site() == Site::of({6}));
    }
}

TEST_CASE("drifted 1D walk: distinct visitors equal a brute-force replay") {
    auto k = std::make_shared<EllipticDriftKernel>(1, 0.3, StepLaw::single(Site::of({1})));
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto w = Window::l1_ball(1, 20);
        FrogConfig config(FrogCounts::constant(w, 1), make_sampler(k, RngStream(seed)));
        const Site v = Site::of({0});
        const auto trace = activate(config, v, 200, {v});
        const auto times = chain_activation_times(config, v, 200);
        std::set<Site> origins;
        for (const auto& [y, ty] : times)
            if (y != v && config.count(y) > 0)
                for (Step kstep = 0; ty + kstep <= 200; ++kstep)
                    if (config.position(y, 1, kstep) == v) {
                        origins.insert(y);
                        break;
                    }
        CHECK(trace.distinct_visitor_origins(v) == origins.size());
    }
}

TEST_CASE("engine matches the oracle on sampled lattice trajectories") {
    auto k = std::make_shared<EllipticDriftKernel>(2, 0.2, StepLaw::single(Site::of({1, 0})));
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto w = Window::l1_ball(2, 4);
        FrogConfig config(FrogCounts::constant(w, 2), make_sampler(k, RngStream(seed)));
        const Site v = Site::origin(2);
        CHECK(activate(config, v, 12).waves == waves_from_times(chain_activation_times(config, v, 12), 12));
    }
}

TEST_CASE("distinct visitor count is nondecreasing in the horizon") {
    auto k = std::make_shared<EllipticDriftKernel>(1, 0.35, StepLaw::single(Site::of({1})));
    FrogConfig config(FrogCounts::constant(Window::l1_ball(1, 30), 2), make_sampler(k, RngStream(3)));
    std::size_t prev = 0;
    for (Step J = 0; J <= 120; J += 10) {
        const auto n = activate(config, Site::of({0}), J, {Site::of({0})}).distinct_visitor_origins(Site::of({0}));
        CHECK(n >= prev);
        prev = n;
    }
}

TEST_CASE("all-awake visitors: serial and parallel agree with direct replay") {
    auto k = std::make_shared<OutwardDriftKernel>(2, 0.8);
    FrogConfig config(FrogCounts::constant(Window::l1_ball(2, 10), 2), make_sampler(k, RngStream(11)));
    const Site v = Site::origin(2);
    const auto serial = all_awake_visitors_serial(config, v, 60);
    CHECK(all_awake_visitors(config, v, 60, kSaturatedCount, 4) == serial);
    std::vector<Visit> expect;
    for (const auto& x : config.counts().window().sites())
        for (FrogIndex i = 1; i <= 2; ++i)
            for (Step j = 0; j <= 60; ++j)
                if (config.position(x, i, j) == v) {
                    expect.push_back({x, i, j});
                    break;
                }
    std::sort(expect.begin(), expect.end(), [](const Visit& a, const Visit& b) {
        return std::tie(a.origin, a.index) < std::tie(b.origin, b.index);
    });
    CHECK(serial == expect);
    std::set<Site> origins;
    for (const auto& e : expect)
        if (e.origin != v) origins.insert(e.origin);
    CHECK(distinct_origins(serial, v) == origins.size());
}

TEST_CASE("traces are deterministic for a fixed seed") {
    auto k = std::make_shared<EllipticDriftKernel>(2, 0.125, StepLaw::single(Site::of({1, 0})));
    auto run = [&] {
        FrogConfig config(FrogCounts::constant(Window::l1_ball(2, 8), 3), make_sampler(k, RngStream(42)));
        return activate(config, Site::origin(2), 40, {Site::origin(2)});
    };
    const auto a = run();
    const auto b = run();
    CHECK(a.waves == b.waves);
    CHECK(a.visitors == b.visitors);
}

} // TEST_SUITE
