#include "frog/conductance.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <queue>

#include "frog/errors.hpp"

namespace frog {

std::size_t LatticeBox::size() const {
    std::size_t n = 1;
    for (int k = 0; k < dim; ++k) n *= static_cast<std::size_t>(width());
    return n;
}

bool LatticeBox::contains(const Site& s) const {
    if (s.dim != dim) return false;
    for (int k = 0; k < dim; ++k)
        if (s[k] < lo || s[k] > hi) return false;
    return true;
}

bool LatticeBox::on_boundary(const Site& s) const {
    for (int k = 0; k < dim; ++k)
        if (s[k] == lo || s[k] == hi) return true;
    return false;
}

std::size_t LatticeBox::index(const Site& s) const {
    std::size_t idx = 0;
    for (int k = dim - 1; k >= 0; --k) idx = idx * static_cast<std::size_t>(width()) + static_cast<std::size_t>(s[k] - lo);
    return idx;
}

Site LatticeBox::site(std::size_t index) const {
    Site s = Site::origin(dim);
    const auto w = static_cast<std::size_t>(width());
    for (int k = 0; k < dim; ++k) {
        s[k] = lo + static_cast<Coord>(index % w);
        index /= w;
    }
    return s;
}

// ---------------------------------------------------------------------------

ConductanceLaw ConductanceLaw::bernoulli(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("bernoulli conductance needs p in [0, 1]");
    ConductanceLaw law;
    law.kind = Kind::bernoulli;
    law.p = p;
    return law;
}

ConductanceLaw ConductanceLaw::uniform(double lo, double hi) {
    if (!(lo > 0.0) || !(hi >= lo)) throw ParameterError("uniform conductance needs 0 < lo <= hi");
    ConductanceLaw law;
    law.kind = Kind::uniform;
    law.lo = lo;
    law.hi = hi;
    return law;
}

double ConductanceLaw::sample(double u) const {
    if (kind == Kind::bernoulli) return u < p ? 1.0 : 0.0;
    return lo + (hi - lo) * u;
}

// ---------------------------------------------------------------------------

EnvSample::EnvSample(LatticeBox box, std::vector<double> upper) : box_(box), up_(std::move(upper)) {
    if (box_.dim < 1 || box_.dim > kMaxDim || box_.hi < box_.lo) throw ParameterError("invalid conductance box");
    if (up_.size() != box_.size() * static_cast<std::size_t>(box_.dim))
        throw ParameterError("one conductance per (site, axis) is required");
    q_.assign(box_.size(), 0.0);
    for (std::size_t idx = 0; idx < box_.size(); ++idx) {
        const Site x = box_.site(idx);
        for (int k = 0; k < box_.dim; ++k) {
            auto& c = up_[idx * static_cast<std::size_t>(box_.dim) + k];
            if (x[k] == box_.hi) c = 0.0;
            if (c < 0.0) throw ParameterError("conductances must be nonnegative");
        }
    }
    // Same summation order at every site: -e1, +e1, -e2, +e2, ...
    for (std::size_t idx = 0; idx < box_.size(); ++idx) {
        const Site x = box_.site(idx);
        double q = 0.0;
        for (int k = 0; k < box_.dim; ++k) {
            if (x[k] > box_.lo) q += up(x - Site::unit(box_.dim, k, 1), k);
            q += up(x, k);
        }
        q_[idx] = q;
    }
}

double EnvSample::conductance(const Site& x, const Site& y) const {
    if (!box_.contains(x) || !box_.contains(y)) return 0.0;
    const Site diff = y - x;
    if (l1_norm(diff) != 1) return 0.0;
    for (int k = 0; k < box_.dim; ++k) {
        if (diff[k] == 1) return up(x, k);
        if (diff[k] == -1) return up(y, k);
    }
    return 0.0;
}

double EnvSample::q(const Site& x) const {
    if (!box_.contains(x)) throw WindowExhausted(x);
    return q_[box_.index(x)];
}

double EnvSample::kappa(const Site& x, const Site& y) const {
    const double qx = q(x);
    if (qx == 0.0) return x == y ? 1.0 : 0.0;
    return conductance(x, y) / qx;
}

double EnvSample::flux(const Site& x, const Site& y) const {
    if (x == y) throw PreconditionError("flux is defined between distinct sites");
    return q(x) == 0.0 ? 0.0 : conductance(x, y);
}

std::vector<Transition> EnvSample::row(const Site& x) const {
    const double qx = q(x);
    if (qx == 0.0) return {{x, 1.0}};
    std::vector<Transition> out;
    for (int k = 0; k < box_.dim; ++k)
        for (int sign : {-1, 1}) {
            const Site y = x + Site::unit(box_.dim, k, sign);
            const double c = conductance(x, y);
            if (c > 0.0) out.push_back({y, c / qx});
        }
    return out;
}

std::vector<Edge> EnvSample::edges() const {
    std::vector<Edge> out;
    for (std::size_t idx = 0; idx < box_.size(); ++idx) {
        const Site x = box_.site(idx);
        for (int k = 0; k < box_.dim; ++k)
            if (x[k] < box_.hi) out.push_back({x, x + Site::unit(box_.dim, k, 1), up(x, k)});
    }
    return out;
}

void EnvSample::write_edge_list(std::ostream& out) const {
    char buf[40];
    for (const auto& e : edges()) {
        for (int k = 0; k < box_.dim; ++k) out << (k ? "," : "") << e.a[k];
        out << ' ';
        for (int k = 0; k < box_.dim; ++k) out << (k ? "," : "") << e.b[k];
        std::snprintf(buf, sizeof buf, " %.17g\n", e.conductance);
        out << buf;
    }
}

EnvSample sample_conductance_env(const LatticeBox& box, const ConductanceLaw& law, RngStream rng) {
    if (box.dim < 1 || box.dim > kMaxDim || box.hi < box.lo) throw ParameterError("invalid conductance box");
    std::vector<double> up(box.size() * static_cast<std::size_t>(box.dim));
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        const Site x = box.site(idx);
        for (int k = 0; k < box.dim; ++k)
            up[idx * static_cast<std::size_t>(box.dim) + k] =
                law.sample(rng.uniform(Stream::conductance, x, static_cast<std::uint64_t>(k), 0));
    }
    return EnvSample(box, std::move(up));
}

std::vector<Site> compute_cluster(const EnvSample& env, const Site& v) {
    const auto& box = env.box();
    if (!box.contains(v)) throw PreconditionError("cluster root " + to_string(v) + " is outside the box");
    std::vector<char> seen(box.size(), 0);
    std::vector<Site> out{v};
    std::queue<Site> todo;
    todo.push(v);
    seen[box.index(v)] = 1;
    while (!todo.empty()) {
        const Site x = todo.front();
        todo.pop();
        for (int k = 0; k < box.dim; ++k)
            for (int sign : {-1, 1}) {
                const Site y = x + Site::unit(box.dim, k, sign);
                if (!box.contains(y) || seen[box.index(y)] || env.conductance(x, y) <= 0.0) continue;
                seen[box.index(y)] = 1;
                out.push_back(y);
                todo.push(y);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool touches_boundary(const EnvSample& env, const std::vector<Site>& cluster) {
    return std::any_of(cluster.begin(), cluster.end(), [&](const Site& s) { return env.box().on_boundary(s); });
}

ConductanceKernel::ConductanceKernel(std::shared_ptr<const EnvSample> env) : env_(std::move(env)) {
    if (!env_) throw ParameterError("conductance kernel needs an environment");
}

std::vector<Transition> ConductanceKernel::row(const Site& x) const { return env_->row(x); }

std::string ConductanceKernel::describe() const {
    const auto& b = env_->box();
    return "conductance d=" + std::to_string(b.dim) + " box=[" + std::to_string(b.lo) + "," + std::to_string(b.hi) + "]";
}

std::shared_ptr<const TrajectorySource> make_sampler(std::shared_ptr<const EnvSample> env, RngStream rng) {
    return make_sampler(std::make_shared<ConductanceKernel>(std::move(env)), rng);
}

} // namespace frog
