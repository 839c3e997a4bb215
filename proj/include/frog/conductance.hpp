#pragma once

#include <iosfwd>
#include <memory>
#include <vector>

#include "frog/kernel.hpp"
#include "frog/rng.hpp"

namespace frog {

/// The box [lo, hi]^d of Z^d.
struct LatticeBox {
    int dim = 2;
    Coord lo = 0;
    Coord hi = 0;

    static LatticeBox side(int d, Coord n) { return LatticeBox{d, 0, n - 1}; }
    Coord width() const { return hi - lo + 1; }
    std::size_t size() const;
    bool contains(const Site& s) const;
    bool on_boundary(const Site& s) const;
    std::size_t index(const Site& s) const;
    Site site(std::size_t index) const;
};

struct ConductanceLaw {
    enum class Kind { bernoulli, uniform };
    Kind kind = Kind::bernoulli;
    double p = 1.0;  // bernoulli: P[c = 1]
    double lo = 1.0; // uniform on [lo, hi], lo > 0
    double hi = 1.0;

    static ConductanceLaw bernoulli(double p);
    static ConductanceLaw uniform(double lo, double hi);
    double sample(double u) const;
};

struct Edge {
    Site a, b;
    double conductance = 0.0;
};

/// I.i.d. nearest-neighbour conductances on a box. Edges leaving the box are
/// closed, so q(x) only counts edges inside it.
class EnvSample {
public:
    EnvSample(LatticeBox box, std::vector<double> upper);

    const LatticeBox& box() const { return box_; }
    /// c({x, y}); 0 unless x, y are neighbours inside the box.
    double conductance(const Site& x, const Site& y) const;
    double q(const Site& x) const;
    /// c({x,y}) / q(x), with kappa(x, x) = 1 when q(x) = 0.
    double kappa(const Site& x, const Site& y) const;
    /// q(x) kappa(x, y) for x != y, evaluated as c({x, y}) so that it is
    /// symmetric bit for bit.
    double flux(const Site& x, const Site& y) const;
    /// Nonzero entries of kappa(x, .).
    std::vector<Transition> row(const Site& x) const;
    std::vector<Edge> edges() const;

    /// One line per edge: "x-coords y-coords conductance".
    void write_edge_list(std::ostream& out) const;

private:
    double up(const Site& x, int axis) const { return up_[box_.index(x) * static_cast<std::size_t>(box_.dim) + axis]; }

    LatticeBox box_;
    // Conductance of {x, x + e_axis}, stored per (site, axis).
    std::vector<double> up_;
    std::vector<double> q_;
};

/// Edge {x, x + e_k} draws rng.uniform(Stream::conductance, x, k, 0).
EnvSample sample_conductance_env(const LatticeBox& box, const ConductanceLaw& law, RngStream rng);

/// Sites connected to v through positive conductances, sorted.
std::vector<Site> compute_cluster(const EnvSample& env, const Site& v);
/// Finite-volume stand-in for an infinite cluster.
bool touches_boundary(const EnvSample& env, const std::vector<Site>& cluster);

/// The random walk kappa. Leaving the box raises WindowExhausted.
class ConductanceKernel final : public Kernel {
public:
    explicit ConductanceKernel(std::shared_ptr<const EnvSample> env);

    Space space() const override { return Space::lattice(env_->box().dim); }
    std::vector<Transition> row(const Site& x) const override;
    int max_jump() const override { return 1; }
    KernelFamily family() const override { return KernelFamily::conductance; }
    std::string describe() const override;

    const EnvSample& env() const { return *env_; }

private:
    std::shared_ptr<const EnvSample> env_;
};

std::shared_ptr<const TrajectorySource> make_sampler(std::shared_ptr<const EnvSample> env, RngStream rng);

} // namespace frog
