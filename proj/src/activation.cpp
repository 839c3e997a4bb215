#include "frog/activation.hpp"

#include <algorithm>
#include <set>

#include "frog/errors.hpp"
#include "frog/parallel.hpp"

namespace frog {

namespace {

// Activation times keyed by site. Dense over a box when the reachable region
// is known and small enough, hashed otherwise.
class SiteTable {
public:
    static constexpr std::size_t kMaxDenseCells = std::size_t{1} << 24;

    SiteTable(int dim, std::optional<std::pair<Site, Site>> box) : dim_(dim) {
        if (!box) return;
        std::size_t cells = 1;
        for (int k = 0; k < dim; ++k) {
            const auto extent = static_cast<std::size_t>(std::int64_t{box->second[k]} - box->first[k] + 1);
            if (extent > kMaxDenseCells || cells * extent > kMaxDenseCells) return;
            cells *= extent;
            extent_[static_cast<std::size_t>(k)] = extent;
        }
        lo_ = box->first;
        hi_ = box->second;
        dense_.assign(cells, -1);
    }

    Step get(const Site& s) const {
        if (auto idx = dense_index(s)) return dense_[*idx];
        auto it = sparse_.find(s);
        return it == sparse_.end() ? -1 : it->second;
    }

    void set(const Site& s, Step t) {
        if (auto idx = dense_index(s))
            dense_[*idx] = t;
        else
            sparse_[s] = t;
    }

private:
    std::optional<std::size_t> dense_index(const Site& s) const {
        if (dense_.empty()) return std::nullopt;
        std::size_t idx = 0;
        for (int k = dim_ - 1; k >= 0; --k) {
            if (s[k] < lo_[k] || s[k] > hi_[k]) return std::nullopt;
            idx = idx * extent_[static_cast<std::size_t>(k)] + static_cast<std::size_t>(s[k] - lo_[k]);
        }
        return idx;
    }

    int dim_;
    Site lo_, hi_;
    std::array<std::size_t, kMaxDim> extent_{};
    std::vector<Step> dense_;
    std::unordered_map<Site, Step, SiteHash> sparse_;
};

std::optional<std::pair<Site, Site>> reachable_box(const FrogConfig& config, const Site& v,
                                                   const std::vector<Site>& targets, Step horizon) {
    const auto jump = config.source().max_jump();
    if (!jump) return std::nullopt;
    auto [lo, hi] = config.counts().window().size() ? config.counts().window().bounding_box()
                                                   : std::pair<Site, Site>{v, v};
    auto include = [&](const Site& s) {
        for (int k = 0; k < v.dim; ++k) {
            lo[k] = std::min(lo[k], s[k]);
            hi[k] = std::max(hi[k], s[k]);
        }
    };
    include(v);
    for (const auto& t : targets) include(t);
    const std::int64_t reach = horizon * std::int64_t{*jump};
    for (int k = 0; k < v.dim; ++k) {
        const std::int64_t a = lo[k] - reach, b = hi[k] + reach;
        if (a < std::numeric_limits<Coord>::min() || b > std::numeric_limits<Coord>::max()) return std::nullopt;
        lo[k] = static_cast<Coord>(a);
        hi[k] = static_cast<Coord>(b);
    }
    return std::pair{lo, hi};
}

std::vector<Site> unique_targets(std::vector<Site> targets) {
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    if (targets.size() > 64) throw ParameterError("at most 64 targets per run");
    return targets;
}

void check_subset(const FrogConfig& config, const Site& v, const std::optional<std::vector<FrogIndex>>& subset) {
    if (!subset) return;
    const FrogCount n = config.count(v);
    for (FrogIndex i : *subset)
        if (i < 1 || i > n)
            throw PreconditionError("active frog " + std::to_string(i) + " outside 1.." + std::to_string(n));
}

// Frog indices that take part at x.
std::vector<FrogIndex> frog_indices(const FrogConfig& config, const Site& x, const Site& v,
                                    const std::optional<std::vector<FrogIndex>>& subset, FrogCount cap) {
    if (subset && x == v) {
        std::vector<FrogIndex> out = *subset;
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        out.erase(std::remove_if(out.begin(), out.end(), [&](FrogIndex i) { return i > cap; }), out.end());
        return out;
    }
    const FrogCount n = effective_count(config, x, cap);
    std::vector<FrogIndex> out(static_cast<std::size_t>(n));
    for (FrogCount i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = i + 1;
    return out;
}

void sort_visitors(ActivationTrace& trace) {
    for (auto& [target, visits] : trace.visitors)
        std::sort(visits.begin(), visits.end(), [](const Visit& a, const Visit& b) {
            return std::tie(a.origin, a.index) < std::tie(b.origin, b.index);
        });
}

} // namespace

std::size_t ActivationTrace::distinct_visitor_origins(const Site& target) const {
    auto it = visitors.find(target);
    if (it == visitors.end()) throw PreconditionError("site " + to_string(target) + " was not a registered target");
    return distinct_origins(it->second, target);
}

std::size_t distinct_origins(const std::vector<Visit>& visits, const Site& target) {
    std::set<Site> origins;
    for (const auto& v : visits)
        if (v.origin != target) origins.insert(v.origin);
    return origins.size();
}

ActivationTrace initial_trace(const FrogConfig& config, const Site& v, const std::vector<Site>& targets,
                              std::optional<std::vector<FrogIndex>> active_subset, FrogCount frog_cap) {
    check_subset(config, v, active_subset);
    ActivationTrace trace;
    trace.origin = v;
    trace.horizon = 0;
    trace.waves = {{v}};
    trace.activation_time[v] = 0;
    trace.active_subset = std::move(active_subset);
    trace.frog_cap = frog_cap;
    bool quiescent = true;
    const auto indices = frog_indices(config, v, v, trace.active_subset, frog_cap);
    for (const auto& t : unique_targets(targets)) {
        auto& visits = trace.visitors[t];
        if (t == v)
            for (FrogIndex i : indices) visits.push_back({v, i, 0});
    }
    for (FrogIndex i : indices)
        if (config.source().freeze_step(v, i) > 0) quiescent = false;
    trace.quiescent = quiescent;
    return trace;
}

ActivationTrace wavefront_step(const FrogConfig& config, const ActivationTrace& trace) {
    if (trace.waves.size() != static_cast<std::size_t>(trace.horizon + 1))
        throw PreconditionError("trace is not valid through its horizon");
    const Step next = trace.horizon + 1;
    ActivationTrace out = trace;
    out.horizon = next;

    std::set<Site> fresh;
    for (Step k = 0; k <= trace.horizon; ++k)
        for (const auto& y : trace.waves[static_cast<std::size_t>(k)])
            for (FrogIndex i : frog_indices(config, y, trace.origin, trace.active_subset, trace.frog_cap)) {
                const Site s = config.position(y, i, next - k);
                if (!trace.activated(s)) fresh.insert(s);
            }
    out.waves.emplace_back(fresh.begin(), fresh.end());
    for (const auto& s : fresh) out.activation_time[s] = next;

    bool quiescent = true;
    for (auto& [target, visits] : out.visitors) {
        std::set<std::pair<Site, FrogIndex>> seen;
        for (const auto& v : visits) seen.emplace(v.origin, v.index);
        for (Step k = 0; k <= next; ++k)
            for (const auto& y : out.waves[static_cast<std::size_t>(k)])
                for (FrogIndex i : frog_indices(config, y, trace.origin, trace.active_subset, trace.frog_cap))
                    if (!seen.count({y, i}) && config.position(y, i, next - k) == target)
                        visits.push_back({y, i, next});
    }
    for (Step k = 0; k <= next && quiescent; ++k)
        for (const auto& y : out.waves[static_cast<std::size_t>(k)])
            for (FrogIndex i : frog_indices(config, y, trace.origin, trace.active_subset, trace.frog_cap))
                if (config.source().freeze_step(y, i) > next - k) {
                    quiescent = false;
                    break;
                }
    out.quiescent = quiescent;
    sort_visitors(out);
    return out;
}

ActivationTrace run_activation(const FrogConfig& config, const Site& v, const ActivationOptions& options) {
    if (options.horizon < 0) throw ParameterError("horizon must be nonnegative");
    check_subset(config, v, options.active_subset);
    const auto targets = unique_targets(options.targets);
    const auto& source = config.source();
    const Step horizon = options.horizon;

    ActivationTrace trace;
    trace.origin = v;
    trace.horizon = horizon;
    trace.waves.assign(static_cast<std::size_t>(horizon + 1), {});
    trace.waves[0] = {v};
    trace.active_subset = options.active_subset;
    trace.frog_cap = options.frog_cap;
    for (const auto& t : targets) trace.visitors[t];

    std::vector<std::vector<Visit>*> target_visits;
    for (const auto& t : targets) target_visits.push_back(&trace.visitors[t]);

    SiteTable table(v.dim, reachable_box(config, v, targets, horizon));
    table.set(v, 0);

    struct Frog {
        Site origin;
        FrogIndex index;
        Step start;
        Step freeze;
        Site pos;
        std::uint64_t hits;
    };
    std::vector<Frog> awake;

    auto wake = [&](const Site& x, Step t) {
        for (FrogIndex i : frog_indices(config, x, v, options.active_subset, options.frog_cap)) {
            std::uint64_t hits = 0;
            for (std::size_t k = 0; k < targets.size(); ++k)
                if (targets[k] == x) {
                    target_visits[k]->push_back({x, i, t});
                    hits |= std::uint64_t{1} << k;
                }
            const Step freeze = source.freeze_step(x, i);
            if (freeze > 0) awake.push_back({x, i, t, freeze, x, hits});
        }
    };
    wake(v, 0);

    std::vector<Site> fresh;
    for (Step t = 1; t <= horizon && !awake.empty(); ++t) {
        fresh.clear();
        for (std::size_t k = 0; k < awake.size();) {
            Frog& f = awake[k];
            f.pos = source.next(f.origin, f.index, t - 1 - f.start, f.pos);
            if (options.max_radius && l1_norm(f.pos - v) > *options.max_radius) throw WindowExhausted(f.pos);
            if (table.get(f.pos) < 0) {
                table.set(f.pos, t);
                fresh.push_back(f.pos);
            }
            for (std::size_t m = 0; m < targets.size(); ++m)
                if (!(f.hits >> m & 1U) && f.pos == targets[m]) {
                    target_visits[m]->push_back({f.origin, f.index, t});
                    f.hits |= std::uint64_t{1} << m;
                }
            if (t - f.start >= f.freeze) {
                f = awake.back();
                awake.pop_back();
            } else {
                ++k;
            }
        }
        std::sort(fresh.begin(), fresh.end());
        trace.waves[static_cast<std::size_t>(t)] = fresh;
        for (const auto& x : fresh) wake(x, t);
    }
    trace.quiescent = awake.empty();

    for (std::size_t j = 0; j < trace.waves.size(); ++j)
        for (const auto& s : trace.waves[j]) trace.activation_time.emplace(s, static_cast<Step>(j));
    sort_visitors(trace);
    return trace;
}

namespace {

void awake_frog_visits(const FrogConfig& config, const Site& x, const Site& target, Step horizon, FrogCount cap,
                       std::vector<Visit>& out) {
    const auto& source = config.source();
    const auto jump = source.max_jump();
    const FrogCount n = effective_count(config, x, cap);
    for (FrogIndex i = 1; i <= n; ++i) {
        if (x == target) {
            out.push_back({x, i, 0});
            continue;
        }
        const Step freeze = source.freeze_step(x, i);
        Site pos = x;
        for (Step j = 0; j < horizon && j < freeze; ++j) {
            // Out of reach for the remaining steps.
            if (jump && l1_norm(pos - target) > (horizon - j) * std::int64_t{*jump}) break;
            pos = source.next(x, i, j, pos);
            if (pos == target) {
                out.push_back({x, i, j + 1});
                break;
            }
        }
    }
}

} // namespace

std::vector<Visit> all_awake_visitors(const FrogConfig& config, const Site& target, Step horizon, FrogCount frog_cap,
                                      int jobs) {
    if (horizon < 0) throw ParameterError("horizon must be nonnegative");
    const auto sites = config.counts().window().sites();
    std::vector<std::vector<Visit>> per_site(sites.size());
    parallel_for(sites.size(), jobs,
                 [&](std::size_t k) { awake_frog_visits(config, sites[k], target, horizon, frog_cap, per_site[k]); });
    std::vector<Visit> out;
    for (auto& v : per_site) out.insert(out.end(), v.begin(), v.end());
    return out;
}

std::vector<Visit> all_awake_visitors_serial(const FrogConfig& config, const Site& target, Step horizon,
                                             FrogCount frog_cap) {
    if (horizon < 0) throw ParameterError("horizon must be nonnegative");
    std::vector<Visit> out;
    for (const auto& x : config.counts().window().sites())
        awake_frog_visits(config, x, target, horizon, frog_cap, out);
    return out;
}

} // namespace frog
