#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "frog/site.hpp"

namespace frog {

using FrogCount = std::uint64_t;
using FrogIndex = std::uint64_t;
using Step = std::int64_t;

/// Counts that overflow 64 bits are stored as this value.
inline constexpr FrogCount kSaturatedCount = std::numeric_limits<FrogCount>::max();
inline constexpr Step kNever = std::numeric_limits<Step>::max();
/// Index of the extra frog at every site.
inline constexpr FrogIndex kExtraFrog = 0;

/// Initial frog numbers n(x); zero outside the window.
class FrogCounts {
public:
    FrogCounts() = default;
    explicit FrogCounts(Window window);
    FrogCounts(Window window, std::vector<FrogCount> counts);
    static FrogCounts constant(Window window, FrogCount m);

    const Window& window() const { return window_; }
    std::span<const FrogCount> values() const { return counts_; }
    FrogCount operator()(const Site& s) const;

    /// Copy with n(s) replaced; the window grows to include s if needed.
    FrogCounts with(const Site& s, FrogCount n) const;

    friend bool operator==(const FrogCounts& a, const FrogCounts& b);

private:
    Window window_;
    std::vector<FrogCount> counts_;
};

/// Frog paths as a step function: given s_j(x, i), produce s_{j+1}(x, i).
/// Implementations are pure; s_0(x, i) = x is implied.
class TrajectorySource {
public:
    virtual ~TrajectorySource() = default;

    virtual Site next(const Site& origin, FrogIndex i, Step j, const Site& here) const = 0;

    /// A step count T with s_j = s_T for all j >= T, or kNever.
    virtual Step freeze_step(const Site& origin, FrogIndex i) const {
        (void)origin;
        (void)i;
        return kNever;
    }

    /// Bound on |s_{j+1} - s_j|_1 when one is known.
    virtual std::optional<int> max_jump() const { return std::nullopt; }
};

/// Hand-specified paths. A path is s_0, s_1, ..., s_m; the frog stays at s_m
/// afterwards. Querying a frog without a path is a precondition error.
class ExplicitTrajectories final : public TrajectorySource {
public:
    void set(const Site& origin, FrogIndex i, std::vector<Site> path);

    Site next(const Site& origin, FrogIndex i, Step j, const Site& here) const override;
    Step freeze_step(const Site& origin, FrogIndex i) const override;
    std::optional<int> max_jump() const override { return max_jump_; }

private:
    struct Key {
        Site origin;
        FrogIndex index;
        friend bool operator==(const Key&, const Key&) = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept;
    };
    const std::vector<Site>& find(const Site& origin, FrogIndex i) const;

    std::unordered_map<Key, std::vector<Site>, KeyHash> paths_;
    int max_jump_ = 0;
};

/// A frog configuration (n, s) together with the extra frogs s(x, 0).
/// Immutable; copies share the trajectory cache.
class FrogConfig {
public:
    FrogConfig(FrogCounts counts, std::shared_ptr<const TrajectorySource> source);

    const FrogCounts& counts() const { return counts_; }
    FrogCount count(const Site& s) const { return counts_(s); }
    const TrajectorySource& source() const { return *source_; }
    const std::shared_ptr<const TrajectorySource>& source_ptr() const { return source_; }

    /// s_j(origin, i), evaluated lazily and memoized.
    Site position(const Site& origin, FrogIndex i, Step j) const;
    /// s_0 .. s_steps
    std::vector<Site> path(const Site& origin, FrogIndex i, Step steps) const;

private:
    struct Cache;

    FrogCounts counts_;
    std::shared_ptr<const TrajectorySource> source_;
    std::shared_ptr<Cache> cache_;
};

/// Per-frog stopping times T(x, i), i >= 1. Unlisted frogs use the rule if
/// one is installed and are never stopped otherwise.
class StopTimes {
public:
    using Rule = std::function<Step(const Site&, FrogIndex)>;

    StopTimes() = default;
    explicit StopTimes(Rule rule) : rule_(std::move(rule)) {}
    static StopTimes constant(Step t);

    void set(const Site& origin, FrogIndex i, Step t);
    Step at(const Site& origin, FrogIndex i) const;

private:
    struct KeyHash {
        std::size_t operator()(const std::pair<Site, FrogIndex>& k) const noexcept;
    };
    std::unordered_map<std::pair<Site, FrogIndex>, Step, KeyHash> explicit_;
    Rule rule_;
};

/// A bijection of the state space: a translation of Z^d, or a finite
/// permutation extended by the identity.
class Permutation {
public:
    static Permutation identity();
    static Permutation shift(const Site& by);
    /// Throws ParameterError unless the pairs define a bijection of a finite set.
    static Permutation finite(const std::vector<std::pair<Site, Site>>& pairs);

    Site operator()(const Site& s) const;
    Site inverse(const Site& s) const;
    Permutation inverted() const;
    bool is_shift() const { return shift_.has_value(); }

private:
    std::optional<Site> shift_;
    std::unordered_map<Site, Site, SiteHash> forward_;
    std::unordered_map<Site, Site, SiteHash> backward_;
};

/// theta_phi(n, s): counts n(phi(x)), paths phi^{-1}(s_j(phi(x), i)).
FrogConfig apply_permutation(const FrogConfig& config, const Permutation& phi);

/// Paths stopped at T(x, i) for i >= 1; extra frogs keep moving.
FrogConfig stop_config(const FrogConfig& config, const StopTimes& stop);

/// a_v: the extra frog at v becomes frog 1 there and the former frogs shift
/// up by one. The result has no extra frog at v.
FrogConfig add_extra_frog(const FrogConfig& config, const Site& v);

/// t_v: frog 1 at v follows the extra frog's path. Requires n(v) >= 1.
FrogConfig swap_in_extra_frog(const FrogConfig& config, const Site& v);

/// Same trajectories, different counts.
FrogConfig with_counts(const FrogConfig& config, FrogCounts counts);

} // namespace frog
