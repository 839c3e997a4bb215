#pragma once

#include <vector>

namespace frog {

/// Invariant law of the tooth-height chain of the comb walk: from 0 up with
/// p2 and stay otherwise, from y >= 1 up with p2 and down with 1 - p2.
struct FactorMeasure {
    double p2 = 0.0;
    /// Truncation height H: mu has entries for heights 0..H.
    int height = 0;
    std::vector<double> mu;
    /// |mu K - mu|_1 on the untruncated chain.
    double residual = 0.0;
    double mass = 0.0;
    /// Estimated invariant mass above H.
    double tail = 0.0;
};

/// Solves the balance equations on 0..H (reflected at H), doubling H until
/// the tail estimate is below 1e-12. Throws NoInvariantMeasure for p2 >= 1/2.
FactorMeasure factor_invariant_measure(double p2);
/// Fixed truncation height.
FactorMeasure factor_invariant_measure(double p2, int height);

/// (mu K)(y) for the untruncated chain; mu is zero beyond its size.
std::vector<double> apply_factor_kernel(const std::vector<double>& mu, double p2);

} // namespace frog
