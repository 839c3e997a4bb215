#include <doctest.h>

#include <cmath>
#include <map>

#include "frog/errors.hpp"
#include "frog/kernel.hpp"

using namespace frog;

namespace {

double row_sum(const Kernel& k, const Site& x) {
    double s = 0.0;
    for (const auto& t : k.row(x)) s += t.prob;
    return s;
}

double row_prob(const Kernel& k, const Site& x, const Site& y) {
    double p = 0.0;
    for (const auto& t : k.row(x))
        if (t.to == y) p += t.prob;
    return p;
}

// Empirical frequencies of sample() at x against row(x), within 4 sigma.
void check_sampling(const Kernel& k, const Site& x, int draws, std::uint64_t seed) {
    const RngStream rng(seed);
    std::map<Site, int> hits;
    for (int j = 0; j < draws; ++j) ++hits[k.sample(x, rng.uniform(Stream::step, x, 1, static_cast<std::uint64_t>(j)))];
    for (const auto& t : k.row(x)) {
        const double sigma = std::sqrt(t.prob * (1.0 - t.prob) / draws);
        CHECK(std::abs(hits[t.to] / static_cast<double>(draws) - t.prob) <= 4.0 * sigma + 1e-12);
        hits.erase(t.to);
    }
    CHECK(hits.empty());
}

} // namespace

TEST_SUITE("kernels") {

TEST_CASE("elliptic drift rows are stochastic and give each unit step at least eps") {
    const EllipticDriftKernel k(2, 0.125, StepLaw{{{Site::of({1, 0}), 0.7}, {Site::of({0, 2}), 0.3}}});
    const auto ball = Window::l1_ball(2, 3);
    for (const auto& x : ball.sites()) {
        CHECK(std::abs(row_sum(k, x) - 1.0) <= 1e-12);
        for (int m = 0; m < 4; ++m) CHECK(row_prob(k, x, x + k.bin_step(m)) >= 0.125);
    }
    CHECK(row_prob(k, Site::origin(2), Site::of({1, 0})) == doctest::Approx(0.125 + 0.5 * 0.7));
    CHECK(k.max_jump() == 2);
    check_sampling(k, Site::of({3, -1}), 100000, 9);
}

TEST_CASE("elliptic bins: u in [m eps, (m+1) eps) picks bin m exactly") {
    for (double eps : {0.125, 0.1, 0.2, 1.0 / 6.0}) {
        const int d = eps > 0.125 ? 1 : 2;
        const EllipticDriftKernel k(d, eps, StepLaw::single(Site::unit(d, 0, 1)));
        for (int m = 0; m < 2 * d; ++m) {
            const double lo = m * eps, hi = (m + 1) * eps;
            CHECK(k.bin(lo) == m);
            CHECK(k.bin(std::nextafter(hi, 0.0)) == m);
            if (m + 1 < 2 * d) CHECK(k.bin(hi) == m + 1);
        }
        CHECK(k.sample(Site::origin(d), std::nextafter(k.forced_mass(), 0.0)) == Site::origin(d) + k.bin_step(2 * d - 1));
        CHECK(k.sample(Site::origin(d), k.forced_mass()) == Site::unit(d, 0, 1));
        CHECK(k.bin_step(0) == Site::unit(d, 0, 1));
        CHECK(k.bin_step(1) == Site::unit(d, 0, -1));
    }
}

TEST_CASE("elliptic parameter validation") {
    CHECK_THROWS_AS(EllipticDriftKernel(2, 0.0, StepLaw::single(Site::of({1, 0}))), ParameterError);
    CHECK_THROWS_AS(EllipticDriftKernel(2, 0.3, StepLaw::single(Site::of({1, 0}))), ParameterError);
    CHECK_THROWS_AS(EllipticDriftKernel(2, 0.1, StepLaw::single(Site::of({1}))), ParameterError);
    CHECK_THROWS_AS(EllipticDriftKernel(2, 0.1, StepLaw{{{Site::of({1, 0}), 0.5}}}), ParameterError);
    CHECK_THROWS_AS(EllipticDriftKernel(4, 0.1, StepLaw::single(Site::of({1, 0}))), ParameterError);
    CHECK_NOTHROW(EllipticDriftKernel(2, 0.25, StepLaw::single(Site::of({1, 0}))));
}

TEST_CASE("comb kernel rows and step frequencies") {
    const CombKernel k(0.3, 0.2);
    CHECK(std::abs(row_sum(k, Site::of({4, 0})) - 1.0) <= 1e-12);
    CHECK(std::abs(row_sum(k, Site::of({4, 3})) - 1.0) <= 1e-12);
    CHECK(row_prob(k, Site::of({0, 0}), Site::of({1, 0})) == 0.3);
    CHECK(row_prob(k, Site::of({0, 0}), Site::of({-1, 0})) == doctest::Approx(0.5));
    CHECK(row_prob(k, Site::of({0, 0}), Site::of({0, 1})) == 0.2);
    CHECK(row_prob(k, Site::of({0, 2}), Site::of({0, 1})) == doctest::Approx(0.8));
    check_sampling(k, Site::of({2, 0}), 100000, 17);
    check_sampling(k, Site::of({2, 5}), 100000, 18);
    CHECK_THROWS_AS(CombKernel(0.6, 0.4), ParameterError);
    CHECK_THROWS_AS(k.row(Site::of({0, -1})), PreconditionError);
}

TEST_CASE("outward drift kernel is certified with delta 0.6 and range 2") {
    const OutwardDriftKernel k(2, 0.8);
    check_sampling(k, Site::of({-3, 2}), 100000, 23);
    const auto ball = Window::l1_ball(2, 25);
    const auto report = check_drift_condition(k, ball.sites(), 0.6);
    CHECK(report.holds);
    CHECK(report.range == 2);
    CHECK(report.worst_margin == doctest::Approx(0.6));
    CHECK(report.sites_checked == ball.size());
    // delta beyond the margin or outside (0, range] fails.
    CHECK_FALSE(check_drift_condition(k, ball.sites(), 0.7).holds);
    CHECK_FALSE(check_drift_condition(k, ball.sites(), 3.0).holds);
}

TEST_CASE("the symmetric walk fails the drift condition") {
    const EllipticDriftKernel k(2, 0.25, StepLaw::single(Site::of({1, 0})));
    const auto report = check_drift_condition(k, Window::l1_ball(2, 10).sites(), 0.6);
    CHECK_FALSE(report.holds);
    CHECK(report.worst_margin == doctest::Approx(0.0));
}

TEST_CASE("sampler: deterministic shift kernel and repeatable paths") {
    auto shift = std::make_shared<ShiftKernel>(Site::of({1, 0}));
    FrogConfig config(FrogCounts::constant(Window::l1_ball(2, 1), 1), make_sampler(shift, RngStream(5)));
    for (Step j = 0; j <= 10; ++j) CHECK(config.position(Site::of({0, 1}), 1, j) == Site::of({static_cast<Coord>(j), 1}));

    auto k = std::make_shared<EllipticDriftKernel>(2, 0.125, StepLaw::single(Site::of({1, 0})));
    FrogConfig a(FrogCounts::constant(Window::l1_ball(2, 1), 2), make_sampler(k, RngStream(77)));
    FrogConfig b(FrogCounts::constant(Window::l1_ball(2, 1), 2), make_sampler(k, RngStream(77)));
    FrogConfig c(FrogCounts::constant(Window::l1_ball(2, 1), 2), make_sampler(k, RngStream(78)));
    CHECK(a.path(Site::origin(2), 1, 50) == b.path(Site::origin(2), 1, 50));
    CHECK(a.path(Site::origin(2), 1, 50) != c.path(Site::origin(2), 1, 50));
    // The extra frog's stream differs from frog 1's.
    CHECK(a.path(Site::origin(2), 0, 50) != a.path(Site::origin(2), 1, 50));
    // Querying in a different order gives the same positions.
    FrogConfig d(FrogCounts::constant(Window::l1_ball(2, 1), 2), make_sampler(k, RngStream(77)));
    const Site late = d.position(Site::origin(2), 1, 50);
    CHECK(late == a.position(Site::origin(2), 1, 50));
}

TEST_CASE("stream isolation: other frogs are untouched by one frog's stream") {
    // Overriding one frog's path leaves every other frog bit-identical.
    auto k = std::make_shared<EllipticDriftKernel>(1, 0.2, StepLaw::single(Site::of({1})));
    const auto base = make_sampler(k, RngStream(3));
    struct Override final : TrajectorySource {
        std::shared_ptr<const TrajectorySource> inner;
        Site next(const Site& o, FrogIndex i, Step j, const Site& here) const override {
            if (o == Site::of({2}) && i == 1) return here + Site::of({-1});
            return inner->next(o, i, j, here);
        }
    };
    auto over = std::make_shared<Override>();
    over->inner = base;
    FrogConfig a(FrogCounts::constant(Window::l1_ball(1, 5), 2), base);
    FrogConfig b(FrogCounts::constant(Window::l1_ball(1, 5), 2), over);
    const auto ball = Window::l1_ball(1, 5);
    for (const auto& x : ball.sites())
        for (FrogIndex i = 0; i <= 2; ++i) {
            if (x == Site::of({2}) && i == 1) {
                CHECK(a.path(x, i, 30) != b.path(x, i, 30));
                continue;
            }
            CHECK(a.path(x, i, 30) == b.path(x, i, 30));
        }
}

TEST_CASE("stop times: infinite at eps = 1/(2d); geometric otherwise") {
    const RngStream rng(11);
    CHECK(sample_stop_times(0.25, 2, rng).at(Site::of({0, 0}), 1) == kNever);

    // d = 1, eps = 0.25: P[T = 0] = 1/2.
    const auto half = sample_stop_times(0.25, 1, rng);
    int zero = 0;
    const int n = 100000;
    for (int x = 0; x < n; ++x) zero += half.at(Site::of({x}), 1) == 0 ? 1 : 0;
    CHECK(std::abs(zero / static_cast<double>(n) - 0.5) <= 4.0 * std::sqrt(0.25 / n));

    // d = 1, eps = 0.2: E[T] = 0.4 / 0.6 within 1%.
    const auto geo = sample_stop_times(0.2, 1, rng);
    double sum = 0.0;
    for (int x = 0; x < n; ++x) sum += static_cast<double>(geo.at(Site::of({x}), 1));
    CHECK(std::abs(sum / n - 0.4 / 0.6) <= 0.01 * (0.4 / 0.6));
    CHECK_THROWS_AS(sample_stop_times(0.3, 2, rng), ParameterError);
}

TEST_CASE("a frog stops exactly at its first residual step") {
    auto k = std::make_shared<EllipticDriftKernel>(1, 0.2, StepLaw::single(Site::of({3})));
    const RngStream rng(8);
    const auto stop = sample_stop_times(0.2, 1, rng);
    FrogConfig config(FrogCounts::constant(Window::l1_ball(1, 50), 1), make_sampler(k, rng));
    for (const auto& x : config.counts().window().sites()) {
        const Step T = stop.at(x, 1);
        const auto path = config.path(x, 1, T + 1);
        for (Step j = 0; j < T; ++j) CHECK(std::abs(path[static_cast<std::size_t>(j + 1)][0] - path[static_cast<std::size_t>(j)][0]) == 1);
        CHECK(path[static_cast<std::size_t>(T + 1)][0] - path[static_cast<std::size_t>(T)][0] == 3);
    }
}

} // TEST_SUITE
