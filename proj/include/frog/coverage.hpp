#pragma once

#include <functional>
#include <vector>

#include "frog/config.hpp"
#include "frog/rng.hpp"

namespace frog {

struct CoverageRow {
    int radius = 0;
    std::size_t replicas = 0;
    std::size_t covered = 0;
    double p_hat = 0.0;
    /// Binomial standard error sqrt(p (1 - p) / n).
    double std_error = 0.0;
};

struct CoverageProfile {
    std::vector<CoverageRow> rows;
    /// Replicas still active at the horizon cap.
    std::size_t truncated = 0;
};

/// Builds the unstopped configuration of one replica from its stream.
using ConfigFactory = std::function<FrogConfig(RngStream)>;

/// Fraction of replicas in which the process from 0, stopped with
/// T(x, i) = inf{ j : U_j(x, i) >= 2 d eps }, activates all of B(0, r).
/// Replica k uses rng.derive(k); runs end at quiescence or horizon_cap.
CoverageProfile coverage_profile(const ConfigFactory& factory, double eps, int d, const std::vector<int>& radii,
                                 std::size_t replicas, RngStream rng, Step horizon_cap = 4096, int jobs = 0);

} // namespace frog
