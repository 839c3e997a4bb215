#include "frog/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "frog/errors.hpp"

namespace frog {

namespace {

// E[(log_+ eta)^p] for P[eta >= t] = q0 when t <= t0 and min(1, c / (log t)^e)
// when t > t0, via sum_t ((log t)^p - (log(t-1))^p) P[eta >= t].
LogMoment heavy_tail_moment(double c, int e, double t0, double q0, double p) {
    if (p >= e) return {0.0, true};
    auto g = [p](double t) { return t <= 1.0 ? 0.0 : std::pow(std::log(t), p); };
    auto tail_integral = [&](double log_t) { return p * c * std::pow(log_t, p - e) / (e - p); };

    double total = q0 * g(t0);
    // Beyond t0 the tail is 1 up to t_a = exp(c^(1/e)).
    const double log_ta = std::pow(c, 1.0 / e);
    constexpr double kDirect = 1e6, kCutoff = 1e7;
    if (log_ta > std::log(kDirect)) {
        // The switch point is far out; the sum agrees with the integral to O(1/t_a).
        if (log_ta > std::log(t0)) total += std::pow(log_ta, p) - g(t0);
        return {total + tail_integral(std::max(log_ta, std::log(t0))), false};
    }
    const double t_a = std::floor(std::exp(log_ta));
    double start = t0;
    if (t_a > t0) {
        total += g(t_a) - g(t0);
        start = t_a;
    }
    double prev = g(start), sum = 0.0;
    for (double t = start + 1.0; t <= kCutoff; t += 1.0) {
        const double gt = g(t);
        sum += (gt - prev) * std::min(1.0, c / std::pow(std::log(t), e));
        prev = gt;
    }
    return {total + sum + tail_integral(std::log(kCutoff)), false};
}

std::vector<std::vector<Site>> spheres(int d, int r_max) {
    std::vector<std::vector<Site>> out(static_cast<std::size_t>(r_max + 1));
    Site s = Site::origin(d);
    for (int k = 0; k < d; ++k) s[k] = -r_max;
    while (true) {
        const auto n = l1_norm(s);
        if (n <= r_max) out[static_cast<std::size_t>(n)].push_back(s);
        int k = 0;
        while (k < d && s[k] == r_max) s[k++] = -r_max;
        if (k == d) break;
        ++s[k];
    }
    return out;
}

double log_inv_eps_tail(double eps, int d, double c_so, double k) {
    // P[eta > eps^-k] = P[eta >= floor(eps^-k) + 1] under the logtail law with t0 = 3.
    const double log_t = k * std::log(1.0 / eps);
    double l = log_t;
    if (log_t < 36.0) l = std::log(std::max(3.0, std::floor(std::pow(1.0 / eps, k)) + 1.0));
    return std::min(1.0, c_so / std::pow(l, d));
}

} // namespace

LogMoment log_moment(const CountsLaw& law, double power) {
    if (!(power > 0.0) || !std::isfinite(power)) throw ParameterError("log moment power must be positive");
    switch (law.family()) {
    case CountsLaw::Family::constant:
        return {law.m() >= 2 ? std::pow(std::log(static_cast<double>(law.m())), power) : 0.0, false};
    case CountsLaw::Family::bernoulli: return {0.0, false};
    case CountsLaw::Family::logtail: {
        const double t0 = static_cast<double>(law.t0());
        return heavy_tail_moment(law.c0(), law.d(), t0, law.tail(law.t0()), power);
    }
    case CountsLaw::Family::logmoment: return heavy_tail_moment(law.theta(), 1, 1.0, 1.0, power);
    case CountsLaw::Family::comb: break;
    }
    throw ParameterError("log moments are not defined for the comb law");
}

SphereConstants sphere_constants(int d, int r_max) {
    if (d < 1 || d > kMaxDim) throw ParameterError("dimension must be in [1, 3]");
    if (r_max < 1) throw ParameterError("sphere enumeration needs r_max >= 1");
    const auto sph = spheres(d, r_max);
    SphereConstants out;
    out.c_cc = std::numeric_limits<double>::infinity();
    for (int r = 1; r <= r_max; ++r) {
        const double scale = std::pow(r, d - 1);
        out.c_dd = std::max(out.c_dd, static_cast<double>(sph[static_cast<std::size_t>(r)].size()) / scale);
        for (const auto& y : sph[static_cast<std::size_t>(r)])
            for (int k = 1; k <= r; ++k) {
                std::size_t inside = 0;
                for (const auto& z : sph[static_cast<std::size_t>(k)])
                    if (l1_norm(y + z) <= r - 1) ++inside;
                out.c_cc = std::min(out.c_cc, static_cast<double>(inside) / std::pow(k, d - 1));
            }
    }
    return out;
}

RaabeTable raabe_ratio_table(double eps, int d, double c_so, const std::vector<double>& r_values,
                             SphereConstants constants) {
    if (d < 1 || d > kMaxDim) throw ParameterError("dimension must be in [1, 3]");
    if (!(eps > 0.0) || 2.0 * d * eps > 1.0) throw ParameterError("eps must lie in (0, 1/(2d)]");
    if (!(c_so > 0.0)) throw ParameterError("c_so must be positive");
    RaabeTable table;
    table.eps = eps;
    table.d = d;
    table.c_so = c_so;
    table.constants = constants;
    const double log_inv = std::log(1.0 / eps);
    for (double r : r_values) {
        if (!(r >= 1.0)) throw ParameterError("Raabe rows need r >= 1");
        const double p = log_inv_eps_tail(eps, d, c_so, r + 1.0);
        const double log_ratio =
            (d - 1) * std::log1p(1.0 / r) + constants.c_cc * std::pow(r + 1.0, d - 1) * std::log1p(-p / 2.0);
        table.rows.push_back({r, r * std::expm1(log_ratio)});
    }
    table.c_neu = constants.c_cc / (2.0 * std::pow(log_inv, d));
    table.closed_form_limit = d - 1 - c_so * table.c_neu;
    table.empirical_limit = table.rows.empty() ? table.closed_form_limit : table.rows.back().value;
    table.below_minus_one = table.empirical_limit < -1.0;
    return table;
}

RaabeTable raabe_ratio_table(double eps, int d, double c_so, const std::vector<double>& r_values) {
    return raabe_ratio_table(eps, d, c_so, r_values, sphere_constants(d));
}

std::vector<double> geometric_grid(double r_min, double r_max, double factor) {
    if (!(r_min >= 1.0) || !(r_max >= r_min) || !(factor > 1.0)) throw ParameterError("invalid r grid");
    std::vector<double> out;
    for (double r = r_min; r <= r_max * (1 + 1e-12); r = std::max(r + 1.0, std::round(r * factor)))
        out.push_back(r);
    if (out.back() < r_max) out.push_back(r_max);
    return out;
}

} // namespace frog
