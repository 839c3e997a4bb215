#pragma once

#include <vector>

#include "frog/counts_law.hpp"

namespace frog {

struct LogMoment {
    double value = 0.0;
    bool infinite = false;
};

/// E[(log_+ eta)^power]. Heavy-tailed families are summed exactly up to a
/// cutoff and closed with the integral of their tail; divergence is decided
/// from the tail exponent. The comb law and power <= 0 are rejected.
LogMoment log_moment(const CountsLaw& law, double power);

/// Lattice sphere constants: #S(0, r) <= c_dd r^(d-1), and
/// #(S(y, k) cap B(0, r-1)) >= c_cc k^(d-1) for y in S(0, r), 1 <= k <= r,
/// where S and B are l1 spheres and balls. Computed by enumeration for r <= r_max.
struct SphereConstants {
    double c_dd = 0.0;
    double c_cc = 0.0;
};
SphereConstants sphere_constants(int d, int r_max = 12);

struct RaabeRow {
    double r = 0.0;
    /// r (b_{r+1} / b_r - 1)
    double value = 0.0;
};

struct RaabeTable {
    double eps = 0.0;
    int d = 1;
    double c_so = 0.0;
    SphereConstants constants;
    std::vector<RaabeRow> rows;
    /// c_cc / (2 (log 1/eps)^d)
    double c_neu = 0.0;
    /// d - 1 - c_so c_neu
    double closed_form_limit = 0.0;
    /// Value at the largest r.
    double empirical_limit = 0.0;
    bool below_minus_one = false;
};

/// Ratio diagnostic for b_r = c_dd r^(d-1) prod_{k<=r} (1 - P[eta > eps^-k] / 2)^(c_cc k^(d-1))
/// under the logtail law P[eta >= t] = min(1, c_so / (log t)^d).
RaabeTable raabe_ratio_table(double eps, int d, double c_so, const std::vector<double>& r_values,
                             SphereConstants constants);
RaabeTable raabe_ratio_table(double eps, int d, double c_so, const std::vector<double>& r_values);

/// r_min, r_min * factor, ... up to r_max (inclusive).
std::vector<double> geometric_grid(double r_min, double r_max, double factor);

} // namespace frog
