#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "frog/config.hpp"
#include "frog/rng.hpp"

namespace frog {

struct Transition {
    Site to;
    double prob = 0.0;
};

enum class KernelFamily { elliptic_drift, comb, outward_drift, shift, conductance };

std::string to_string(KernelFamily f);

/// One-step transition law of a Markov chain on a state space.
class Kernel {
public:
    virtual ~Kernel() = default;

    virtual Space space() const = 0;
    /// Successors of x with positive probability.
    virtual std::vector<Transition> row(const Site& x) const = 0;
    /// Successor for the uniform variate u in [0, 1). The default walks the
    /// cumulative row in order.
    virtual Site sample(const Site& x, double u) const;
    /// max |y - x|_1 over the support.
    virtual int max_jump() const = 0;
    virtual KernelFamily family() const = 0;
    virtual std::string describe() const = 0;
};

/// A step law on Z^d: offset -> probability.
struct StepLaw {
    std::vector<Transition> steps; // `to` holds the offset

    static StepLaw single(const Site& offset);
    void validate(int d) const;
};

/// With probability eps per signed unit vector the walk takes that step
/// (u in [m eps, (m+1) eps) picks +e1, -e1, +e2, ... in that order), and
/// otherwise follows the residual law.
class EllipticDriftKernel final : public Kernel {
public:
    EllipticDriftKernel(int d, double eps, StepLaw residual);

    Space space() const override { return Space::lattice(d_); }
    std::vector<Transition> row(const Site& x) const override;
    Site sample(const Site& x, double u) const override;
    int max_jump() const override { return max_jump_; }
    KernelFamily family() const override { return KernelFamily::elliptic_drift; }
    std::string describe() const override;

    double eps() const { return eps_; }
    /// 2 d eps: probability of a forced unit step.
    double forced_mass() const { return forced_; }
    /// Index m in [0, 2d) of the unit-step bin containing u < forced_mass().
    int bin(double u) const;
    /// The unit step for bin m.
    Site bin_step(int m) const;

private:
    int d_;
    double eps_;
    double forced_;
    StepLaw residual_;
    int max_jump_;
};

/// Walk on Z x N_0: along the spine right p1, left 1 - p1 - p2, up p2;
/// on teeth up p2, down 1 - p2.
class CombKernel final : public Kernel {
public:
    CombKernel(double p1, double p2);

    Space space() const override { return Space::comb(); }
    std::vector<Transition> row(const Site& x) const override;
    Site sample(const Site& x, double u) const override;
    int max_jump() const override { return 1; }
    KernelFamily family() const override { return KernelFamily::comb; }
    std::string describe() const override;

    double p1() const { return p1_; }
    double p2() const { return p2_; }

private:
    double p1_, p2_;
};

/// Picks an axis uniformly, then moves away from 0 along it with probability
/// `bias` and towards it otherwise. Coordinate 0 counts as positive.
class OutwardDriftKernel final : public Kernel {
public:
    OutwardDriftKernel(int d, double bias);

    Space space() const override { return Space::lattice(d_); }
    std::vector<Transition> row(const Site& x) const override;
    Site sample(const Site& x, double u) const override;
    int max_jump() const override { return 1; }
    KernelFamily family() const override { return KernelFamily::outward_drift; }
    std::string describe() const override;

    double bias() const { return bias_; }

private:
    int d_;
    double bias_;
};

/// Deterministic translation by a fixed offset.
class ShiftKernel final : public Kernel {
public:
    explicit ShiftKernel(const Site& offset);

    Space space() const override { return Space::lattice(offset_.dim); }
    std::vector<Transition> row(const Site& x) const override { return {{x + offset_, 1.0}}; }
    Site sample(const Site& x, double) const override { return x + offset_; }
    int max_jump() const override { return static_cast<int>(l1_norm(offset_)); }
    KernelFamily family() const override { return KernelFamily::shift; }
    std::string describe() const override;

private:
    Site offset_;
};

struct DriftReport {
    bool holds = false;
    Site worst_site;
    double worst_margin = 0.0;
    double delta = 0.0;
    /// Support bound: K(x, y) = 0 whenever |x - y|_1 >= range.
    int range = 0;
    std::size_t sites_checked = 0;
};

/// Evaluates |sum_y K(x,y) y|_1 - |x|_1 over the sites. Holds iff every margin
/// is at least delta (up to 1e-12) and delta lies in (0, range].
DriftReport check_drift_condition(const Kernel& kernel, std::span<const Site> sites, double delta);

/// Trajectories drawn from the kernel: step j of frog (x, i) uses the variate
/// rng.uniform(Stream::step, x, i, j).
class MarkovSampler final : public TrajectorySource {
public:
    MarkovSampler(std::shared_ptr<const Kernel> kernel, RngStream rng)
        : kernel_(std::move(kernel)), rng_(rng) {}

    Site next(const Site& origin, FrogIndex i, Step j, const Site& here) const override {
        return kernel_->sample(here, rng_.uniform(Stream::step, origin, i, static_cast<std::uint64_t>(j)));
    }
    std::optional<int> max_jump() const override { return kernel_->max_jump(); }

    const Kernel& kernel() const { return *kernel_; }
    const RngStream& rng() const { return rng_; }

private:
    std::shared_ptr<const Kernel> kernel_;
    RngStream rng_;
};

std::shared_ptr<const TrajectorySource> make_sampler(std::shared_ptr<const Kernel> kernel, RngStream rng);

/// T(x, i) = inf{ j >= 0 : U_j(x, i) >= 2 d eps } on the trajectory stream, so
/// a frog stops exactly when its step would come from the residual law.
/// T is infinite when 2 d eps = 1.
StopTimes sample_stop_times(double eps, int d, RngStream rng);

} // namespace frog
