#include "frog/counts_law.hpp"

#include <cmath>
#include <cstdio>

#include "frog/errors.hpp"

namespace frog {

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Largest count below 2^64 representable exactly enough for the inversion.
constexpr double kSaturationLevel = 1.8e19;

// max{ t >= lo : u < tail(t) } starting from the estimate exp(s).
template <class Tail>
FrogCount invert_tail(double s, double u, FrogCount lo, Tail tail) {
    if (!(s < std::log(kSaturationLevel))) return kSaturatedCount;
    const double estimate = std::ceil(std::exp(s)) - 1.0;
    FrogCount t = estimate < static_cast<double>(lo) ? lo : static_cast<FrogCount>(estimate);
    for (int k = 0; k < 8 && tail(t + 1) > u; ++k) ++t;
    for (int k = 0; k < 8 && t > lo && !(tail(t) > u); ++k) --t;
    return t;
}

} // namespace

CountsLaw CountsLaw::constant(FrogCount m) {
    CountsLaw law;
    law.family_ = Family::constant;
    law.m_ = m;
    return law;
}

CountsLaw CountsLaw::bernoulli(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("bernoulli counts need p in [0, 1]");
    CountsLaw law;
    law.family_ = Family::bernoulli;
    law.p_ = p;
    return law;
}

CountsLaw CountsLaw::logtail(double c0, int d, FrogCount t0) {
    if (!(c0 > 0.0)) throw ParameterError("logtail needs c0 > 0");
    if (d < 1 || d > kMaxDim) throw ParameterError("logtail exponent d must be in [1, 3]");
    if (t0 < 3) throw ParameterError("logtail needs t0 >= 3");
    CountsLaw law;
    law.family_ = Family::logtail;
    law.c0_ = c0;
    law.d_ = d;
    law.t0_ = t0;
    return law;
}

CountsLaw CountsLaw::logmoment(double theta) {
    if (!(theta > 0.0)) throw ParameterError("logmoment needs theta > 0");
    CountsLaw law;
    law.family_ = Family::logmoment;
    law.c0_ = theta;
    return law;
}

CountsLaw CountsLaw::comb(const CountsLaw& spine, const CountsLaw& tooth) {
    if (spine.family_ == Family::comb || tooth.family_ == Family::comb)
        throw ParameterError("comb counts cannot be nested");
    CountsLaw law;
    law.family_ = Family::comb;
    law.spine_ = std::make_shared<CountsLaw>(spine);
    law.tooth_ = std::make_shared<CountsLaw>(tooth);
    return law;
}

double CountsLaw::tail(FrogCount t) const {
    if (t == 0) return 1.0;
    switch (family_) {
    case Family::constant: return t <= m_ ? 1.0 : 0.0;
    case Family::bernoulli: return t == 1 ? p_ : 0.0;
    case Family::logtail: {
        const double x = static_cast<double>(t < t0_ ? t0_ : t);
        return std::min(1.0, c0_ / std::pow(std::log(x), d_));
    }
    case Family::logmoment:
        if (t == 1) return 1.0;
        return std::min(1.0, c0_ / std::log(static_cast<double>(t)));
    case Family::comb: break;
    }
    throw PreconditionError("the comb law has no single tail; use at(site)");
}

FrogCount CountsLaw::sample(double u) const {
    switch (family_) {
    case Family::constant: return m_;
    case Family::bernoulli: return u < p_ ? 1 : 0;
    case Family::logtail: {
        if (!(u < tail(t0_))) return 0;
        if (u <= 0.0) return kSaturatedCount;
        const double s = std::pow(c0_ / u, 1.0 / d_);
        return invert_tail(s, u, t0_, [this](FrogCount t) { return tail(t); });
    }
    case Family::logmoment: {
        if (!(u < tail(2))) return 1;
        if (u <= 0.0) return kSaturatedCount;
        return invert_tail(c0_ / u, u, 2, [this](FrogCount t) { return tail(t); });
    }
    case Family::comb: break;
    }
    throw PreconditionError("the comb law has no single sampler; use at(site)");
}

const CountsLaw& CountsLaw::at(const Site& s) const {
    if (family_ != Family::comb) return *this;
    if (s.dim != 2 || s[1] < 0) throw PreconditionError("comb counts need comb sites");
    return s[1] == 0 ? *spine_ : *tooth_;
}

std::string CountsLaw::describe() const {
    switch (family_) {
    case Family::constant: return "constant m=" + std::to_string(m_);
    case Family::bernoulli: return "bernoulli p=" + fmt(p_);
    case Family::logtail:
        return "logtail c0=" + fmt(c0_) + " d=" + std::to_string(d_) + " t0=" + std::to_string(t0_);
    case Family::logmoment: return "logmoment theta=" + fmt(c0_);
    case Family::comb: return "comb spine=[" + spine_->describe() + "] tooth=[" + tooth_->describe() + "]";
    }
    return "unknown";
}

FrogCounts sample_counts(const CountsLaw& law, const Window& window, RngStream rng) {
    if (law.family() == CountsLaw::Family::comb && window.space().geometry != Geometry::comb)
        throw ParameterError("comb counts need a comb window");
    std::vector<FrogCount> counts(window.size());
    for (std::size_t k = 0; k < window.size(); ++k) {
        const Site& x = window.sites()[k];
        counts[k] = law.at(x).sample(rng.uniform(Stream::count, x, 0, 0));
    }
    return FrogCounts(window, std::move(counts));
}

} // namespace frog
