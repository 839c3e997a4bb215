#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "frog/activation.hpp"

namespace frog {

/// Distinct-visitor count N of one replicate at box size L and horizon J.
struct RecurrenceSample {
    int L = 0;
    Step J = 0;
    std::size_t replicate = 0;
    std::size_t N = 0;
};

/// Type-7 quartiles of N over the replicates at one (L, J).
struct RecurrenceSummary {
    int L = 0;
    Step J = 0;
    std::size_t replicates = 0;
    double q1 = 0.0, median = 0.0, q3 = 0.0;
};

struct RecurrenceStat {
    std::vector<RecurrenceSample> samples;
    /// Sorted by (L, J).
    std::vector<RecurrenceSummary> summary;
};

struct LabeledTrace {
    int L = 0;
    Step J = 0;
    std::size_t replicate = 0;
    const ActivationTrace* trace = nullptr;
};

/// N = number of distinct origins x != v with a recorded visit to v.
RecurrenceStat recurrence_statistic(const std::vector<LabeledTrace>& runs, const Site& v);
/// Same aggregation from precomputed counts.
RecurrenceStat recurrence_statistic(std::vector<RecurrenceSample> samples);

/// Linear-interpolation quantile (type 7) of unsorted data.
double quantile(std::vector<double> data, double prob);

enum class Classification { recurrent_like, transient_like, inconclusive };
std::string to_string(Classification c);

struct ClassificationReport {
    Classification verdict = Classification::inconclusive;
    std::vector<int> grid;
    std::vector<double> medians;
    bool strictly_increasing = false;
    /// max - min of the medians over the top half of the L grid.
    double top_half_change = 0.0;
};

/// Heuristic read of medians along the L grid (one horizon per L):
/// transient-like when the top-half change is at most `flat_tolerance`,
/// recurrent-like when the medians strictly increase at every step and the
/// top-half change exceeds it, inconclusive otherwise.
ClassificationReport classify_recurrence(const RecurrenceStat& stat, double flat_tolerance = 2.0);

} // namespace frog
