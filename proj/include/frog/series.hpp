#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frog/rng.hpp"

namespace frog {

/// Law of the nonnegative summands Y, sampled as log Y from a uniform.
struct YLaw {
    enum class Kind { zero, constant, logtail, lognormal };
    Kind kind = Kind::zero;
    double value = 0.0; // constant: Y = value
    double theta = 0.0; // logtail: P[log Y >= k] = min(1, theta / k)
    double mu = 0.0;    // lognormal: log Y ~ N(mu, sigma^2), clipped at log_bound
    double sigma = 1.0;
    /// log M for summands bounded by M.
    std::optional<double> log_bound;

    static YLaw zero();
    static YLaw constant(double value);
    static YLaw logtail(double theta);
    static YLaw lognormal(double mu, double sigma, double bound);

    /// log Y for the uniform u in [0, 1); -inf encodes Y = 0.
    double log_sample(double u) const;
    std::string describe() const;
};

enum class SeriesVerdict { converging, diverging, inconclusive };
std::string to_string(SeriesVerdict v);

struct SeriesCheckpoint {
    std::uint64_t n = 0;
    double partial_sum = 0.0;
};

struct SeriesOracleReport {
    double a = 0.0, c = 0.0;
    int d = 1;
    std::uint64_t n_max = 0;
    /// Partial sums over n = 0..N at N = 10^3, 10^4, ... and n_max.
    std::vector<SeriesCheckpoint> checkpoints;
    /// Upper bound on the sum over n > n_max, when Y is bounded.
    std::optional<double> tail_bound;
    SeriesVerdict verdict = SeriesVerdict::inconclusive;
};

/// Sum over n of a^n * sum_{i=0}^{floor(c n^(d-1))} Y_{i,n}, with
/// Y_{i,n} drawn from rng.uniform(Stream::series, 0, i, n).
/// Converging when the tail bound is below 1e-9 times the sum; diverging when
/// the sum is infinite or grows by a factor >= 1.5 over the last decade.
SeriesOracleReport series_oracle(double a, double c, int d, const YLaw& y, std::uint64_t n_max, RngStream rng);

/// Upper bound on sum_{n > n_max} a^n (floor(c n^(d-1)) + 1) M; exact for d = 1.
double series_tail_bound(double a, double c, int d, double bound, std::uint64_t n_max);

} // namespace frog
