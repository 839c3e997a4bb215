#include "frog/config.hpp"

#include <algorithm>
#include <mutex>

#include "frog/errors.hpp"
#include "frog/rng.hpp"

namespace frog {

// ---------------------------------------------------------------------------
// FrogCounts

FrogCounts::FrogCounts(Window window) : window_(std::move(window)), counts_(window_.size(), 0) {}

FrogCounts::FrogCounts(Window window, std::vector<FrogCount> counts)
    : window_(std::move(window)), counts_(std::move(counts)) {
    if (counts_.size() != window_.size()) throw ParameterError("one count per window site is required");
}

FrogCounts FrogCounts::constant(Window window, FrogCount m) {
    std::vector<FrogCount> counts(window.size(), m);
    return FrogCounts(std::move(window), std::move(counts));
}

FrogCount FrogCounts::operator()(const Site& s) const {
    auto idx = window_.index_of(s);
    return idx ? counts_[*idx] : 0;
}

FrogCounts FrogCounts::with(const Site& s, FrogCount n) const {
    if (auto idx = window_.index_of(s)) {
        FrogCounts out = *this;
        out.counts_[*idx] = n;
        return out;
    }
    Window w = window_.with_site(s);
    std::vector<FrogCount> counts(w.size(), 0);
    for (std::size_t k = 0; k < w.size(); ++k) counts[k] = (*this)(w.sites()[k]);
    counts[*w.index_of(s)] = n;
    return FrogCounts(std::move(w), std::move(counts));
}

bool operator==(const FrogCounts& a, const FrogCounts& b) {
    if (a.window_.space() != b.window_.space()) return false;
    return std::equal(a.window_.sites().begin(), a.window_.sites().end(), b.window_.sites().begin(),
                      b.window_.sites().end()) &&
           a.counts_ == b.counts_;
}

// ---------------------------------------------------------------------------
// ExplicitTrajectories

std::size_t ExplicitTrajectories::KeyHash::operator()(const Key& k) const noexcept {
    return SiteHash{}(k.origin) ^ static_cast<std::size_t>(mix64(k.index));
}

void ExplicitTrajectories::set(const Site& origin, FrogIndex i, std::vector<Site> path) {
    if (path.empty() || path.front() != origin)
        throw ParameterError("an explicit path must start at its origin " + to_string(origin));
    for (std::size_t j = 1; j < path.size(); ++j)
        max_jump_ = std::max<int>(max_jump_, static_cast<int>(l1_norm(path[j] - path[j - 1])));
    paths_[Key{origin, i}] = std::move(path);
}

const std::vector<Site>& ExplicitTrajectories::find(const Site& origin, FrogIndex i) const {
    auto it = paths_.find(Key{origin, i});
    if (it == paths_.end())
        throw PreconditionError("no trajectory for frog " + std::to_string(i) + " at " + to_string(origin));
    return it->second;
}

Site ExplicitTrajectories::next(const Site& origin, FrogIndex i, Step j, const Site& here) const {
    const auto& p = find(origin, i);
    const auto k = static_cast<std::size_t>(j + 1);
    (void)here;
    return k < p.size() ? p[k] : p.back();
}

Step ExplicitTrajectories::freeze_step(const Site& origin, FrogIndex i) const {
    return static_cast<Step>(find(origin, i).size()) - 1;
}

// ---------------------------------------------------------------------------
// FrogConfig

struct FrogConfig::Cache {
    struct KeyHash {
        std::size_t operator()(const std::pair<Site, FrogIndex>& k) const noexcept {
            return SiteHash{}(k.first) ^ static_cast<std::size_t>(mix64(k.second));
        }
    };
    std::mutex mutex;
    std::unordered_map<std::pair<Site, FrogIndex>, std::vector<Site>, KeyHash> paths;
};

FrogConfig::FrogConfig(FrogCounts counts, std::shared_ptr<const TrajectorySource> source)
    : counts_(std::move(counts)), source_(std::move(source)), cache_(std::make_shared<Cache>()) {
    if (!source_) throw ParameterError("a frog configuration needs a trajectory source");
}

Site FrogConfig::position(const Site& origin, FrogIndex i, Step j) const {
    if (j < 0) throw PreconditionError("negative step");
    const Step freeze = source_->freeze_step(origin, i);
    const Step target = std::min(j, freeze);
    std::lock_guard lock(cache_->mutex);
    auto& p = cache_->paths[{origin, i}];
    if (p.empty()) p.push_back(origin);
    while (static_cast<Step>(p.size()) <= target) {
        const Step at = static_cast<Step>(p.size()) - 1;
        p.push_back(source_->next(origin, i, at, p.back()));
    }
    return p[static_cast<std::size_t>(target)];
}

std::vector<Site> FrogConfig::path(const Site& origin, FrogIndex i, Step steps) const {
    std::vector<Site> out;
    out.reserve(static_cast<std::size_t>(steps + 1));
    for (Step j = 0; j <= steps; ++j) out.push_back(position(origin, i, j));
    return out;
}

// ---------------------------------------------------------------------------
// StopTimes

std::size_t StopTimes::KeyHash::operator()(const std::pair<Site, FrogIndex>& k) const noexcept {
    return SiteHash{}(k.first) ^ static_cast<std::size_t>(mix64(k.second));
}

StopTimes StopTimes::constant(Step t) {
    if (t < 0) throw ParameterError("stopping times are nonnegative");
    return StopTimes([t](const Site&, FrogIndex) { return t; });
}

void StopTimes::set(const Site& origin, FrogIndex i, Step t) {
    if (t < 0) throw ParameterError("stopping times are nonnegative");
    if (i == kExtraFrog) throw ParameterError("extra frogs are never stopped");
    explicit_[{origin, i}] = t;
}

Step StopTimes::at(const Site& origin, FrogIndex i) const {
    if (i == kExtraFrog) return kNever;
    if (auto it = explicit_.find({origin, i}); it != explicit_.end()) return it->second;
    return rule_ ? rule_(origin, i) : kNever;
}

// ---------------------------------------------------------------------------
// Permutation

Permutation Permutation::identity() { return Permutation{}; }

Permutation Permutation::shift(const Site& by) {
    Permutation p;
    p.shift_ = by;
    return p;
}

Permutation Permutation::finite(const std::vector<std::pair<Site, Site>>& pairs) {
    Permutation p;
    for (const auto& [from, to] : pairs) {
        if (!p.forward_.emplace(from, to).second)
            throw ParameterError("permutation lists " + to_string(from) + " twice");
        if (!p.backward_.emplace(to, from).second)
            throw ParameterError("permutation is not invertible at " + to_string(to));
    }
    for (const auto& [from, to] : pairs)
        if (!p.backward_.count(from))
            throw ParameterError("permutation is not invertible: " + to_string(from) + " has no preimage");
    return p;
}

Site Permutation::operator()(const Site& s) const {
    if (shift_) return s + *shift_;
    auto it = forward_.find(s);
    return it == forward_.end() ? s : it->second;
}

Site Permutation::inverse(const Site& s) const {
    if (shift_) return s - *shift_;
    auto it = backward_.find(s);
    return it == backward_.end() ? s : it->second;
}

Permutation Permutation::inverted() const {
    Permutation p;
    if (shift_) {
        p.shift_ = Site::origin(shift_->dim) - *shift_;
        return p;
    }
    p.forward_ = backward_;
    p.backward_ = forward_;
    return p;
}

// ---------------------------------------------------------------------------
// Configuration surgery

namespace {

class PermutedSource final : public TrajectorySource {
public:
    PermutedSource(std::shared_ptr<const TrajectorySource> inner, Permutation phi)
        : inner_(std::move(inner)), phi_(std::move(phi)) {}

    Site next(const Site& origin, FrogIndex i, Step j, const Site& here) const override {
        return phi_.inverse(inner_->next(phi_(origin), i, j, phi_(here)));
    }
    Step freeze_step(const Site& origin, FrogIndex i) const override { return inner_->freeze_step(phi_(origin), i); }
    std::optional<int> max_jump() const override {
        return phi_.is_shift() ? inner_->max_jump() : std::nullopt;
    }

private:
    std::shared_ptr<const TrajectorySource> inner_;
    Permutation phi_;
};

class StoppedSource final : public TrajectorySource {
public:
    StoppedSource(std::shared_ptr<const TrajectorySource> inner, StopTimes stop)
        : inner_(std::move(inner)), stop_(std::move(stop)) {}

    Site next(const Site& origin, FrogIndex i, Step j, const Site& here) const override {
        if (i != kExtraFrog && j >= stop_.at(origin, i)) return here;
        return inner_->next(origin, i, j, here);
    }
    Step freeze_step(const Site& origin, FrogIndex i) const override {
        const Step inner = inner_->freeze_step(origin, i);
        return i == kExtraFrog ? inner : std::min(inner, stop_.at(origin, i));
    }
    std::optional<int> max_jump() const override { return inner_->max_jump(); }

private:
    std::shared_ptr<const TrajectorySource> inner_;
    StopTimes stop_;
};

/// Index remapping at a single site; `map` returns the inner index.
template <class Map>
class ReindexedSource final : public TrajectorySource {
public:
    ReindexedSource(std::shared_ptr<const TrajectorySource> inner, Site v, Map map)
        : inner_(std::move(inner)), v_(v), map_(map) {}

    Site next(const Site& origin, FrogIndex i, Step j, const Site& here) const override {
        return inner_->next(origin, origin == v_ ? map_(i) : i, j, here);
    }
    Step freeze_step(const Site& origin, FrogIndex i) const override {
        return inner_->freeze_step(origin, origin == v_ ? map_(i) : i);
    }
    std::optional<int> max_jump() const override { return inner_->max_jump(); }

private:
    std::shared_ptr<const TrajectorySource> inner_;
    Site v_;
    Map map_;
};

template <class Map>
std::shared_ptr<const TrajectorySource> reindex(const FrogConfig& config, const Site& v, Map map) {
    return std::make_shared<ReindexedSource<Map>>(config.source_ptr(), v, map);
}

[[noreturn]] void consumed_extra_frog() {
    throw PreconditionError("the extra frog at this site was consumed by the surgery");
}

} // namespace

FrogConfig apply_permutation(const FrogConfig& config, const Permutation& phi) {
    const auto& counts = config.counts();
    std::vector<Site> sites;
    sites.reserve(counts.window().size());
    for (const auto& x : counts.window().sites()) sites.push_back(phi.inverse(x));
    Window w = Window::from_sites(counts.window().space(), std::move(sites));
    std::vector<FrogCount> values(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) values[k] = counts(phi(w.sites()[k]));
    return FrogConfig(FrogCounts(std::move(w), std::move(values)),
                      std::make_shared<PermutedSource>(config.source_ptr(), phi));
}

FrogConfig stop_config(const FrogConfig& config, const StopTimes& stop) {
    return FrogConfig(config.counts(), std::make_shared<StoppedSource>(config.source_ptr(), stop));
}

FrogConfig add_extra_frog(const FrogConfig& config, const Site& v) {
    const FrogCount n = config.count(v);
    if (n == kSaturatedCount) throw PreconditionError("cannot add a frog to a saturated count");
    auto source = reindex(config, v, [](FrogIndex i) {
        if (i == kExtraFrog) consumed_extra_frog();
        return i - 1;
    });
    return FrogConfig(config.counts().with(v, n + 1), std::move(source));
}

FrogConfig swap_in_extra_frog(const FrogConfig& config, const Site& v) {
    if (config.count(v) == 0) throw PreconditionError("t_v needs at least one frog at " + to_string(v));
    auto source = reindex(config, v, [](FrogIndex i) {
        if (i == kExtraFrog) consumed_extra_frog();
        return i == 1 ? kExtraFrog : i;
    });
    return FrogConfig(config.counts(), std::move(source));
}

FrogConfig with_counts(const FrogConfig& config, FrogCounts counts) {
    return FrogConfig(std::move(counts), config.source_ptr());
}

} // namespace frog
