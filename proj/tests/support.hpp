#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <vector>

#include "frog/activation.hpp"
#include "frog/config.hpp"
#include "frog/reach_weight.hpp"

namespace frog::testing {

/// A random configuration on a small set of sites with explicit paths for
/// frogs 0..n(x) (frog 0 is the extra frog), every path of length `path_len`.
struct SmallConfig {
    std::vector<Site> sites;
    FrogConfig config;
    Site v;
};

inline std::vector<Site> small_sites(std::mt19937_64& gen, int& d) {
    d = std::uniform_int_distribution<int>(1, 2)(gen);
    std::vector<Site> sites;
    if (d == 1) {
        const int n = std::uniform_int_distribution<int>(3, 30)(gen);
        for (int x = 0; x < n; ++x) sites.push_back(Site::of({x}));
    } else {
        const int w = std::uniform_int_distribution<int>(2, 5)(gen);
        for (int x = 0; x < w; ++x)
            for (int y = 0; y < w; ++y) sites.push_back(Site::of({x, y}));
    }
    return sites;
}

/// Nearest-neighbour walks (staying put allowed) on the given sites.
inline SmallConfig random_small_config(std::mt19937_64& gen, int max_frogs = 3, int path_len = 12,
                                       int extra_counts = 0) {
    int d = 1;
    auto sites = small_sites(gen, d);
    std::set<Site> in(sites.begin(), sites.end());
    auto source = std::make_shared<ExplicitTrajectories>();
    std::vector<FrogCount> counts;
    std::uniform_int_distribution<int> nfrogs(0, max_frogs);
    std::uniform_int_distribution<int> move(0, 2 * d);
    for (const auto& x : sites) {
        const int n = nfrogs(gen);
        counts.push_back(static_cast<FrogCount>(n));
        for (int i = 0; i <= n + extra_counts; ++i) {
            std::vector<Site> path{x};
            for (int j = 0; j < path_len; ++j) {
                const int m = move(gen);
                Site next = path.back();
                if (m > 0) next = next + Site::unit(d, (m - 1) / 2, (m % 2) ? 1 : -1);
                path.push_back(in.count(next) ? next : path.back());
            }
            source->set(x, static_cast<FrogIndex>(i), std::move(path));
        }
    }
    const Site v = sites[std::uniform_int_distribution<std::size_t>(0, sites.size() - 1)(gen)];
    const Space space = Space::lattice(d);
    return SmallConfig{sites, FrogConfig(FrogCounts(Window::from_sites(space, sites), counts), source), v};
}

/// Independent oracle: first activation times from exhaustive enumeration of
/// activation chains v = y_0 -> y_1 -> ... (frog i of y_k reaches y_{k+1}).
inline std::map<Site, Step> chain_activation_times(const FrogConfig& config, const Site& v, Step horizon,
                                                   std::optional<std::vector<FrogIndex>> subset = std::nullopt) {
    std::map<Site, Step> best{{v, 0}};
    // Explore a chain ending at y, activated at time t.
    auto explore = [&](auto&& self, const Site& y, Step t) -> void {
        std::vector<FrogIndex> frogs;
        if (subset && y == v) frogs = *subset;
        else
            for (FrogIndex i = 1; i <= config.count(y); ++i) frogs.push_back(i);
        for (FrogIndex i : frogs)
            for (Step k = 1; t + k <= horizon; ++k) {
                const Site z = config.position(y, i, k);
                const auto it = best.find(z);
                if (it != best.end() && it->second <= t + k) continue;
                best[z] = t + k;
                self(self, z, t + k);
            }
    };
    explore(explore, v, 0);
    return best;
}

inline std::vector<std::vector<Site>> waves_from_times(const std::map<Site, Step>& times, Step horizon) {
    std::vector<std::vector<Site>> waves(static_cast<std::size_t>(horizon + 1));
    for (const auto& [s, t] : times) waves[static_cast<std::size_t>(t)].push_back(s);
    for (auto& w : waves) std::sort(w.begin(), w.end());
    return waves;
}

inline std::set<Site> activated_set(const ActivationTrace& trace) {
    std::set<Site> out;
    for (const auto& w : trace.waves) out.insert(w.begin(), w.end());
    return out;
}

inline bool subset_of(const std::vector<Site>& a, const std::set<Site>& b) {
    return std::all_of(a.begin(), a.end(), [&](const Site& s) { return b.count(s) != 0; });
}

inline bool waves_disjoint(const ActivationTrace& trace) {
    std::set<Site> seen;
    for (const auto& w : trace.waves)
        for (const auto& s : w)
            if (!seen.insert(s).second) return false;
    return true;
}

inline ActivationTrace activate(const FrogConfig& config, const Site& v, Step horizon,
                                std::vector<Site> targets = {}) {
    ActivationOptions options;
    options.horizon = horizon;
    options.targets = std::move(targets);
    return run_activation(config, v, options);
}

// Exhaustive path enumeration with the documented preference order.
inline ReachWeight brute_reach(const MarkedGraph& g, int x, int m_max) {
    ReachWeight best;
    best.m_max = m_max;
    std::vector<int> path{x};
    std::function<void(double)> walk = [&](double product) {
        const int m = static_cast<int>(path.size()) - 1;
        if (g.marked(path.back())) {
            const double value = product / (m + 1);
            const bool better = value > best.value ||
                                (value == best.value && value > 0.0 &&
                                 (path.size() < best.witness.size() ||
                                  (path.size() == best.witness.size() && path < best.witness)));
            if (better) {
                best.value = value;
                best.witness = path;
            }
        }
        if (m == m_max) return;
        for (const auto& a : g.arcs(path.back())) {
            if (a.weight == 0.0) continue;
            path.push_back(a.to);
            walk(product * a.weight);
            path.pop_back();
        }
    };
    walk(1.0);
    return best;
}

inline MarkedGraph random_graph(std::mt19937_64& gen, bool dyadic) {
    const int n = std::uniform_int_distribution<int>(1, 25)(gen);
    MarkedGraph g(n);
    std::bernoulli_distribution arc(std::min(0.9, 3.0 / n)), mark(0.15);
    std::uniform_int_distribution<int> level(0, 4);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v)
            if (u != v && arc(gen)) g.add_arc(u, v, dyadic ? level(gen) / 4.0 : unif(gen));
        if (mark(gen)) g.set_mark(u);
    }
    return g;
}

inline Permutation random_permutation(std::mt19937_64& gen, const std::vector<Site>& sites) {
    if (std::bernoulli_distribution(0.3)(gen)) {
        Site by = Site::origin(sites.front().dim);
        for (int k = 0; k < by.dim; ++k) by[k] = std::uniform_int_distribution<Coord>(-5, 5)(gen);
        return Permutation::shift(by);
    }
    auto image = sites;
    std::shuffle(image.begin(), image.end(), gen);
    std::vector<std::pair<Site, Site>> pairs;
    for (std::size_t k = 0; k < sites.size(); ++k) pairs.emplace_back(sites[k], image[k]);
    return Permutation::finite(pairs);
}

inline std::vector<Site> mapped(const std::vector<Site>& wave, const Permutation& phi) {
    std::vector<Site> out;
    for (const auto& s : wave) out.push_back(phi(s));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace frog::testing
