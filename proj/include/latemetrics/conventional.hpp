#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "latemetrics/trace.hpp"

namespace latemetrics {

// Summary statistics over a latency sample. All moment-based metrics use
// population moments (divide by n, no bias correction); conventions are
// recorded in the report so results stay comparable across tools.
//
// Every function throws EmptySampleError on an empty sample. Functions with
// stronger preconditions throw DegenerateSampleError as documented.

double mean(std::span<const double> sample);

// Average of the two middle order statistics for even n.
double median(std::span<const double> sample);

// Population standard deviation: sqrt(sum((x - mean)^2) / n).
double stddev(std::span<const double> sample);

double max_value(std::span<const double> sample);

// Fisher-Pearson g1 = m3 / m2^(3/2) with population moments.
// Requires n >= 3 and stddev > 0.
double skewness(std::span<const double> sample);

// Raw (non-excess) kurtosis m4 / m2^2; a normal sample sits near 3.
// Requires n >= 4 and stddev > 0.
double kurtosis(std::span<const double> sample);

// Nearest-rank 98th percentile: the order statistic at rank ceil(0.98 * n)
// (1-indexed), computed in integer arithmetic. For n <= 49 this is the max.
double tail_latency_p98(std::span<const double> sample);

struct ConventionalReport {
    std::size_t sample_count = 0;
    double mean_s = 0;
    double median_s = 0;
    double stddev_s = 0;
    double max_s = 0;
    double tail_p98_s = 0;
    // Null when the sample is too small or has zero spread; the note holds
    // the reason code.
    std::optional<double> skewness;
    std::optional<double> kurtosis;
    std::string skewness_note;
    std::string kurtosis_note;
};

// All seven metrics over exec_time (seconds) of every task in the trace.
// Throws EmptySampleError if the trace has no tasks; degenerate skewness or
// kurtosis is reported as a null field with a reason instead of aborting.
ConventionalReport conventional_report(const Trace& trace);

}  // namespace latemetrics
