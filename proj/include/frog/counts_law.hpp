#pragma once

#include <memory>
#include <string>

#include "frog/config.hpp"
#include "frog/rng.hpp"

namespace frog {

/// Distribution of the frog number at one site.
class CountsLaw {
public:
    enum class Family { constant, bernoulli, logtail, logmoment, comb };

    /// eta = m
    static CountsLaw constant(FrogCount m);
    /// eta in {0, 1}, P[eta = 1] = p
    static CountsLaw bernoulli(double p);
    /// P[eta >= t] = min(1, c0 / (log t)^d) for t >= t0; below t0 the mass
    /// P[eta >= t0] sits at t0 and the rest at 0.
    static CountsLaw logtail(double c0, int d, FrogCount t0);
    /// eta >= 1 and P[eta >= t] = min(1, theta / log t) for t >= 2, so that
    /// P[log eta >= k] = min(1, theta / k).
    static CountsLaw logmoment(double theta);
    /// Spine law at y = 0, tooth law at y >= 1 (comb sites only).
    static CountsLaw comb(const CountsLaw& spine, const CountsLaw& tooth);

    Family family() const { return family_; }
    FrogCount m() const { return m_; }
    double p() const { return p_; }
    double c0() const { return c0_; }
    int d() const { return d_; }
    FrogCount t0() const { return t0_; }
    double theta() const { return c0_; }
    const CountsLaw& spine() const { return *spine_; }
    const CountsLaw& tooth() const { return *tooth_; }

    /// P[eta >= t]. Not defined for the comb family.
    double tail(FrogCount t) const;
    /// Inverse CDF: max{ t : u < P[eta >= t] }. Saturates at kSaturatedCount.
    FrogCount sample(double u) const;
    /// Law for a given site; resolves the comb split.
    const CountsLaw& at(const Site& s) const;

    std::string describe() const;

private:
    Family family_ = Family::constant;
    FrogCount m_ = 0;
    double p_ = 0.0;
    double c0_ = 0.0; // logtail c0, logmoment theta
    int d_ = 1;
    FrogCount t0_ = 3;
    std::shared_ptr<const CountsLaw> spine_, tooth_;
};

/// eta(x) = law.sample(rng.uniform(Stream::count, x, 0, 0)) for every window site.
FrogCounts sample_counts(const CountsLaw& law, const Window& window, RngStream rng);

} // namespace frog
