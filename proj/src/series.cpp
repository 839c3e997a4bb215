#include "frog/series.hpp"

#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <cstdio>
#include <limits>

#include "frog/errors.hpp"

namespace frog {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::uint64_t inner_count(double c, int d, std::uint64_t n) {
    return static_cast<std::uint64_t>(std::floor(c * std::pow(static_cast<double>(n), d - 1))) + 1;
}

} // namespace

YLaw YLaw::zero() {
    YLaw y;
    y.kind = Kind::zero;
    y.log_bound = -kInf;
    return y;
}

YLaw YLaw::constant(double value) {
    if (!(value >= 0.0) || !std::isfinite(value)) throw ParameterError("constant summand must be finite and >= 0");
    YLaw y;
    y.kind = Kind::constant;
    y.value = value;
    y.log_bound = std::log(value);
    return y;
}

YLaw YLaw::logtail(double theta) {
    if (!(theta > 0.0)) throw ParameterError("logtail summand needs theta > 0");
    YLaw y;
    y.kind = Kind::logtail;
    y.theta = theta;
    return y;
}

YLaw YLaw::lognormal(double mu, double sigma, double bound) {
    if (!(sigma > 0.0) || !(bound > 0.0)) throw ParameterError("lognormal summand needs sigma > 0 and bound > 0");
    YLaw y;
    y.kind = Kind::lognormal;
    y.mu = mu;
    y.sigma = sigma;
    y.log_bound = std::log(bound);
    return y;
}

double YLaw::log_sample(double u) const {
    switch (kind) {
    case Kind::zero: return -kInf;
    case Kind::constant: return std::log(value);
    case Kind::logtail: return u > 0.0 ? theta / u : kInf;
    case Kind::lognormal: {
        if (u <= 0.0) return -kInf;
        const double z = boost::math::quantile(boost::math::normal_distribution<double>(mu, sigma), u);
        return std::min(z, *log_bound);
    }
    }
    return -kInf;
}

std::string YLaw::describe() const {
    switch (kind) {
    case Kind::zero: return "zero";
    case Kind::constant: return "constant value=" + fmt(value);
    case Kind::logtail: return "logtail theta=" + fmt(theta);
    case Kind::lognormal: return "lognormal mu=" + fmt(mu) + " sigma=" + fmt(sigma) + " bound=" + fmt(std::exp(*log_bound));
    }
    return "unknown";
}

std::string to_string(SeriesVerdict v) {
    switch (v) {
    case SeriesVerdict::converging: return "converging";
    case SeriesVerdict::diverging: return "diverging";
    case SeriesVerdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

double series_tail_bound(double a, double c, int d, double bound, std::uint64_t n_max) {
    if (bound == 0.0) return 0.0;
    const double log_a = std::log(a), log_m = std::log(bound);
    if (d == 1)
        return static_cast<double>(inner_count(c, 1, 0)) * std::exp(static_cast<double>(n_max + 1) * log_a + log_m) /
               (1.0 - a);
    // Sum the envelope a^n (c n^(d-1) + 1) M until its ratio drops below 1
    // and the terms are negligible, then close with a geometric bound.
    double sum = 0.0;
    for (std::uint64_t n = n_max + 1;; ++n) {
        const double nn = static_cast<double>(n);
        const double term = std::exp(nn * log_a + std::log(c * std::pow(nn, d - 1) + 1.0) + log_m);
        sum += term;
        const double ratio = a * std::pow((nn + 1.0) / nn, d - 1);
        if (ratio < 1.0 && term <= 1e-17 * sum) return sum + term * ratio / (1.0 - ratio);
        if (n - n_max > 100'000'000) return kInf;
    }
}

SeriesOracleReport series_oracle(double a, double c, int d, const YLaw& y, std::uint64_t n_max, RngStream rng) {
    if (!(a > 0.0 && a < 1.0)) throw ParameterError("series ratio a must lie in (0, 1)");
    if (!(c > 0.0)) throw ParameterError("series constant c must be positive");
    if (d < 1 || d > kMaxDim) throw ParameterError("series dimension must be in [1, 3]");

    SeriesOracleReport report;
    report.a = a;
    report.c = c;
    report.d = d;
    report.n_max = n_max;

    std::vector<std::uint64_t> marks;
    for (std::uint64_t p = 1000; p < n_max; p *= 10) marks.push_back(p);
    marks.push_back(n_max);
    const std::uint64_t decade = n_max / 10;

    const double bound = y.log_bound ? std::exp(*y.log_bound) : kInf;
    const Site slot = Site::origin(1);
    const double log_a = std::log(a);
    double sum = 0.0, at_decade = 0.0;
    std::size_t next_mark = 0;
    bool settled = false;
    for (std::uint64_t n = 0; n <= n_max; ++n) {
        if (!settled) {
            const double w = std::pow(a, static_cast<double>(n));
            double inner = 0.0;
            const std::uint64_t count = inner_count(c, d, n);
            for (std::uint64_t i = 0; i < count; ++i) {
                const double ly = y.log_sample(rng.uniform(Stream::series, slot, i, n));
                if (ly == -kInf) continue;
                const double yv = std::exp(ly);
                inner += (w > 1e-300 && std::isfinite(yv)) ? w * yv
                                                          : std::exp(static_cast<double>(n) * log_a + ly);
            }
            sum += inner;
            // Once every remaining term is below half an ulp the sum is final.
            if (y.log_bound && n % 1024 == 0 && std::isfinite(sum)) {
                const double rest = series_tail_bound(a, c, d, bound, n);
                if (rest < 0.5 * (std::nextafter(sum, kInf) - sum)) settled = true;
            }
        }
        if (n == decade) at_decade = sum;
        if (next_mark < marks.size() && n == marks[next_mark]) {
            report.checkpoints.push_back({n, sum});
            ++next_mark;
        }
    }

    if (y.log_bound) report.tail_bound = series_tail_bound(a, c, d, bound, n_max);
    if (!std::isfinite(sum))
        report.verdict = SeriesVerdict::diverging;
    else if (report.tail_bound && *report.tail_bound <= 1e-9 * sum)
        report.verdict = SeriesVerdict::converging;
    else if (at_decade == 0.0 ? sum > 0.0 : sum / at_decade >= 1.5)
        report.verdict = SeriesVerdict::diverging;
    return report;
}

} // namespace frog
