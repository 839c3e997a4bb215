#include "frog/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "frog/errors.hpp"

namespace frog {

double quantile(std::vector<double> data, double prob) {
    if (data.empty()) throw PreconditionError("quantile of no data");
    std::sort(data.begin(), data.end());
    const double h = (static_cast<double>(data.size()) - 1.0) * prob;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, data.size() - 1);
    return data[lo] + (h - static_cast<double>(lo)) * (data[hi] - data[lo]);
}

RecurrenceStat recurrence_statistic(const std::vector<LabeledTrace>& runs, const Site& v) {
    if (runs.empty()) throw PreconditionError("recurrence statistic needs at least one run");
    std::vector<RecurrenceSample> samples;
    samples.reserve(runs.size());
    for (const auto& r : runs) {
        if (!r.trace) throw PreconditionError("missing trace");
        samples.push_back({r.L, r.J, r.replicate, r.trace->distinct_visitor_origins(v)});
    }
    return recurrence_statistic(std::move(samples));
}

RecurrenceStat recurrence_statistic(std::vector<RecurrenceSample> samples) {
    if (samples.empty()) throw PreconditionError("recurrence statistic needs at least one run");
    std::sort(samples.begin(), samples.end(), [](const RecurrenceSample& a, const RecurrenceSample& b) {
        return std::tie(a.L, a.J, a.replicate) < std::tie(b.L, b.J, b.replicate);
    });
    std::map<std::pair<int, Step>, std::vector<double>> groups;
    for (const auto& s : samples) groups[{s.L, s.J}].push_back(static_cast<double>(s.N));
    RecurrenceStat stat;
    stat.samples = std::move(samples);
    for (const auto& [key, values] : groups)
        stat.summary.push_back({key.first, key.second, values.size(), quantile(values, 0.25), quantile(values, 0.5),
                                quantile(values, 0.75)});
    return stat;
}

std::string to_string(Classification c) {
    switch (c) {
    case Classification::recurrent_like: return "recurrent-like";
    case Classification::transient_like: return "transient-like";
    case Classification::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

ClassificationReport classify_recurrence(const RecurrenceStat& stat, double flat_tolerance) {
    ClassificationReport report;
    for (const auto& s : stat.summary) {
        if (!report.grid.empty() && report.grid.back() == s.L)
            throw PreconditionError("classification expects one horizon per box size");
        report.grid.push_back(s.L);
        report.medians.push_back(s.median);
    }
    const std::size_t k = report.medians.size();
    if (k < 2) throw PreconditionError("classification needs at least two box sizes");
    report.strictly_increasing = true;
    for (std::size_t i = 1; i < k; ++i)
        if (!(report.medians[i] > report.medians[i - 1])) report.strictly_increasing = false;
    const std::size_t start = std::min(k / 2, k - 2);
    const auto [lo, hi] = std::minmax_element(report.medians.begin() + static_cast<std::ptrdiff_t>(start),
                                              report.medians.end());
    report.top_half_change = *hi - *lo;
    if (report.top_half_change <= flat_tolerance)
        report.verdict = Classification::transient_like;
    else if (report.strictly_increasing)
        report.verdict = Classification::recurrent_like;
    return report;
}

} // namespace frog
