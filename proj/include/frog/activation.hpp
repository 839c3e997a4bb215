#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "frog/config.hpp"

namespace frog {

/// First hit of a target by frog (origin, index) at absolute time `time`.
struct Visit {
    Site origin;
    FrogIndex index = 0;
    Step time = 0;

    friend bool operator==(const Visit&, const Visit&) = default;
};

struct ActivationTrace {
    Site origin;
    Step horizon = 0;
    /// waves[j] = W_j, sorted. Always horizon + 1 entries.
    std::vector<std::vector<Site>> waves;
    std::unordered_map<Site, Step, SiteHash> activation_time;
    /// One entry per (origin, index) that reached the target, sorted by (origin, index).
    std::map<Site, std::vector<Visit>> visitors;
    std::optional<std::vector<FrogIndex>> active_subset;
    FrogCount frog_cap = kSaturatedCount;
    /// No awake frog can move any more; later waves are empty.
    bool quiescent = false;

    bool activated(const Site& s) const { return activation_time.count(s) != 0; }
    std::size_t activated_count() const { return activation_time.size(); }
    /// Number of distinct origins x != target with a recorded visit to target.
    std::size_t distinct_visitor_origins(const Site& target) const;
};

struct ActivationOptions {
    Step horizon = 0;
    std::vector<Site> targets;
    /// Frog indices awake at v at time 0; the others at v never wake.
    std::optional<std::vector<FrogIndex>> active_subset;
    /// Only frogs 1..min(n(x), frog_cap) exist at x.
    FrogCount frog_cap = kSaturatedCount;
    /// Frogs that reach a site with |x - v|_1 > max_radius raise WindowExhausted.
    std::optional<std::int64_t> max_radius;
};

/// Frogs that take part at x: min(n(x), cap).
inline FrogCount effective_count(const FrogConfig& config, const Site& x, FrogCount cap) {
    const FrogCount n = config.count(x);
    return n < cap ? n : cap;
}

/// The trace through horizon 0: W_0 = {v} plus the visits of v's own frogs.
ActivationTrace initial_trace(const FrogConfig& config, const Site& v, const std::vector<Site>& targets,
                              std::optional<std::vector<FrogIndex>> active_subset = std::nullopt,
                              FrogCount frog_cap = kSaturatedCount);

/// Reference recursion: extends a trace by one wave, straight from the definition.
ActivationTrace wavefront_step(const FrogConfig& config, const ActivationTrace& trace);

/// Time-stepped engine; produces the same trace as iterating wavefront_step.
ActivationTrace run_activation(const FrogConfig& config, const Site& v, const ActivationOptions& options);

/// Every frog in the window awake at time 0 (no activation needed).
/// Returns the first visit of each frog that reaches target within the horizon,
/// sorted by (origin, index).
std::vector<Visit> all_awake_visitors(const FrogConfig& config, const Site& target, Step horizon,
                                      FrogCount frog_cap = kSaturatedCount, int jobs = 0);
std::vector<Visit> all_awake_visitors_serial(const FrogConfig& config, const Site& target, Step horizon,
                                             FrogCount frog_cap = kSaturatedCount);

/// Distinct origins x != target among the visits.
std::size_t distinct_origins(const std::vector<Visit>& visits, const Site& target);

} // namespace frog
