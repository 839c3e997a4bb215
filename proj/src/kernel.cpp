#include "frog/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "frog/errors.hpp"

namespace frog {

std::string to_string(KernelFamily f) {
    switch (f) {
    case KernelFamily::elliptic_drift: return "elliptic";
    case KernelFamily::comb: return "comb";
    case KernelFamily::outward_drift: return "outward";
    case KernelFamily::shift: return "shift";
    case KernelFamily::conductance: return "conductance";
    }
    return "unknown";
}

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void check_dim(int d) {
    if (d < 1 || d > kMaxDim) throw ParameterError("dimension must be in [1, 3]");
}

void merge_into(std::vector<Transition>& row, const Site& to, double p) {
    for (auto& t : row)
        if (t.to == to) {
            t.prob += p;
            return;
        }
    row.push_back({to, p});
}

} // namespace

Site Kernel::sample(const Site& x, double u) const {
    const auto r = row(x);
    double acc = 0.0;
    for (const auto& t : r) {
        acc += t.prob;
        if (u < acc) return t.to;
    }
    return r.back().to;
}

// ---------------------------------------------------------------------------

StepLaw StepLaw::single(const Site& offset) { return StepLaw{{{offset, 1.0}}}; }

void StepLaw::validate(int d) const {
    if (steps.empty()) throw ParameterError("step law needs at least one step");
    double total = 0.0;
    for (const auto& s : steps) {
        if (s.to.dim != d) throw ParameterError("step " + to_string(s.to) + " has the wrong dimension");
        if (!(s.prob >= 0.0)) throw ParameterError("step probabilities must be nonnegative");
        total += s.prob;
    }
    if (std::abs(total - 1.0) > 1e-12) throw ParameterError("step probabilities must sum to 1");
}

// ---------------------------------------------------------------------------

EllipticDriftKernel::EllipticDriftKernel(int d, double eps, StepLaw residual)
    : d_(d), eps_(eps), forced_(2.0 * d * eps), residual_(std::move(residual)) {
    check_dim(d);
    if (!(eps > 0.0) || forced_ > 1.0) throw ParameterError("eps must lie in (0, 1/(2d)], got " + fmt(eps));
    residual_.validate(d);
    max_jump_ = 1;
    for (const auto& s : residual_.steps) max_jump_ = std::max<int>(max_jump_, static_cast<int>(l1_norm(s.to)));
}

int EllipticDriftKernel::bin(double u) const {
    const int last = 2 * d_ - 1;
    int m = std::min(last, static_cast<int>(u / eps_));
    while (m > 0 && u < m * eps_) --m;
    while (m < last && u >= (m + 1) * eps_) ++m;
    return m;
}

Site EllipticDriftKernel::bin_step(int m) const { return Site::unit(d_, m / 2, m % 2 == 0 ? 1 : -1); }

std::vector<Transition> EllipticDriftKernel::row(const Site& x) const {
    std::vector<Transition> out;
    for (int m = 0; m < 2 * d_; ++m) merge_into(out, x + bin_step(m), eps_);
    const double rest = 1.0 - forced_;
    if (rest > 0.0)
        for (const auto& s : residual_.steps)
            if (s.prob > 0.0) merge_into(out, x + s.to, s.prob * rest);
    return out;
}

Site EllipticDriftKernel::sample(const Site& x, double u) const {
    if (u < forced_) {
        const int m = bin(u);
        Site y = x;
        y[m / 2] += m % 2 == 0 ? 1 : -1;
        return y;
    }
    const double w = (u - forced_) / (1.0 - forced_);
    double acc = 0.0;
    for (const auto& s : residual_.steps) {
        acc += s.prob;
        if (w < acc) return x + s.to;
    }
    return x + residual_.steps.back().to;
}

std::string EllipticDriftKernel::describe() const {
    std::string out = "elliptic d=" + std::to_string(d_) + " eps=" + fmt(eps_) + " residual=";
    for (std::size_t k = 0; k < residual_.steps.size(); ++k) {
        if (k) out += ';';
        out += to_string(residual_.steps[k].to) + ":" + fmt(residual_.steps[k].prob);
    }
    return out;
}

// ---------------------------------------------------------------------------

CombKernel::CombKernel(double p1, double p2) : p1_(p1), p2_(p2) {
    if (!(p1 > 0.0) || !(p2 > 0.0) || !(p1 + p2 < 1.0))
        throw ParameterError("comb kernel needs p1, p2 > 0 and p1 + p2 < 1");
}

std::vector<Transition> CombKernel::row(const Site& x) const {
    if (!space().contains(x)) throw PreconditionError("site " + to_string(x) + " is not on the comb");
    if (x[1] == 0)
        return {{Site::of({x[0] + 1, 0}), p1_}, {Site::of({x[0] - 1, 0}), 1.0 - p1_ - p2_}, {Site::of({x[0], 1}), p2_}};
    return {{Site::of({x[0], x[1] + 1}), p2_}, {Site::of({x[0], x[1] - 1}), 1.0 - p2_}};
}

// Same cumulative order as row(), without allocating.
Site CombKernel::sample(const Site& x, double u) const {
    if (!space().contains(x)) throw PreconditionError("site " + to_string(x) + " is not on the comb");
    Site y = x;
    if (x[1] == 0) {
        if (u < p1_)
            ++y[0];
        else if (u < p1_ + (1.0 - p1_ - p2_))
            --y[0];
        else
            ++y[1];
        return y;
    }
    if (u < p2_)
        ++y[1];
    else
        --y[1];
    return y;
}

std::string CombKernel::describe() const { return "comb p1=" + fmt(p1_) + " p2=" + fmt(p2_); }

// ---------------------------------------------------------------------------

OutwardDriftKernel::OutwardDriftKernel(int d, double bias) : d_(d), bias_(bias) {
    check_dim(d);
    if (!(bias >= 0.0 && bias <= 1.0)) throw ParameterError("outward bias must lie in [0, 1]");
}

std::vector<Transition> OutwardDriftKernel::row(const Site& x) const {
    std::vector<Transition> out;
    for (int k = 0; k < d_; ++k) {
        const int sign = x[k] >= 0 ? 1 : -1;
        out.push_back({x + Site::unit(d_, k, sign), bias_ / d_});
        out.push_back({x + Site::unit(d_, k, -sign), (1.0 - bias_) / d_});
    }
    return out;
}

Site OutwardDriftKernel::sample(const Site& x, double u) const {
    const double out = bias_ / d_, in = (1.0 - bias_) / d_;
    double acc = 0.0;
    Site y = x;
    for (int k = 0; k < d_; ++k) {
        const int sign = x[k] >= 0 ? 1 : -1;
        acc += out;
        if (u < acc) {
            y[k] += sign;
            return y;
        }
        acc += in;
        if (u < acc || k == d_ - 1) {
            y[k] -= sign;
            return y;
        }
    }
    return y;
}

std::string OutwardDriftKernel::describe() const {
    return "outward d=" + std::to_string(d_) + " bias=" + fmt(bias_);
}

// ---------------------------------------------------------------------------

ShiftKernel::ShiftKernel(const Site& offset) : offset_(offset) { check_dim(offset.dim); }

std::string ShiftKernel::describe() const { return "shift by " + to_string(offset_); }

// ---------------------------------------------------------------------------

DriftReport check_drift_condition(const Kernel& kernel, std::span<const Site> sites, double delta) {
    DriftReport report;
    report.delta = delta;
    report.range = kernel.max_jump() + 1;
    report.worst_margin = std::numeric_limits<double>::infinity();
    for (const auto& x : sites) {
        std::array<double, kMaxDim> disp{};
        for (const auto& t : kernel.row(x))
            for (int k = 0; k < x.dim; ++k) disp[static_cast<std::size_t>(k)] += t.prob * (t.to[k] - x[k]);
        double margin = 0.0;
        for (int k = 0; k < x.dim; ++k) {
            const double a = x[k], dk = disp[static_cast<std::size_t>(k)], b = a + dk;
            if (a >= 0 && b >= 0)
                margin += dk;
            else if (a <= 0 && b <= 0)
                margin -= dk;
            else
                margin += std::abs(b) - std::abs(a);
        }
        if (margin < report.worst_margin) {
            report.worst_margin = margin;
            report.worst_site = x;
        }
        ++report.sites_checked;
    }
    report.holds = delta > 0.0 && delta <= report.range && report.worst_margin >= delta - 1e-12;
    return report;
}

// ---------------------------------------------------------------------------

std::shared_ptr<const TrajectorySource> make_sampler(std::shared_ptr<const Kernel> kernel, RngStream rng) {
    if (!kernel) throw ParameterError("sampler needs a kernel");
    return std::make_shared<MarkovSampler>(std::move(kernel), rng);
}

StopTimes sample_stop_times(double eps, int d, RngStream rng) {
    check_dim(d);
    const double forced = 2.0 * d * eps;
    if (!(eps > 0.0) || forced > 1.0) throw ParameterError("stopping needs 2 d eps in (0, 1]");
    if (forced >= 1.0) return StopTimes::constant(kNever);
    return StopTimes([rng, forced](const Site& x, FrogIndex i) {
        Step j = 0;
        while (rng.uniform(Stream::step, x, i, static_cast<std::uint64_t>(j)) < forced) ++j;
        return j;
    });
}

} // namespace frog
