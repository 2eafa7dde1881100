#include "latemetrics/conventional.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "latemetrics/errors.hpp"

namespace latemetrics {

namespace {

void require_nonempty(std::span<const double> sample) {
    if (sample.empty()) throw EmptySampleError("empty sample");
}

// Central moment of order k about the given mean, divided by n.
double central_moment(std::span<const double> sample, double mu, int k) {
    double acc = 0;
    for (double x : sample) acc += std::pow(x - mu, k);
    return acc / static_cast<double>(sample.size());
}

}  // namespace

double mean(std::span<const double> sample) {
    require_nonempty(sample);
    double acc = 0;
    for (double x : sample) acc += x;
    return acc / static_cast<double>(sample.size());
}

double median(std::span<const double> sample) {
    require_nonempty(sample);
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    if (n % 2 == 1) return sorted[n / 2];
    return (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
}

double stddev(std::span<const double> sample) {
    require_nonempty(sample);
    const double mu = mean(sample);
    return std::sqrt(central_moment(sample, mu, 2));
}

double max_value(std::span<const double> sample) {
    require_nonempty(sample);
    return *std::max_element(sample.begin(), sample.end());
}

double skewness(std::span<const double> sample) {
    require_nonempty(sample);
    if (sample.size() < 3) throw DegenerateSampleError("skewness needs at least 3 points");
    const double mu = mean(sample);
    const double m2 = central_moment(sample, mu, 2);
    if (m2 <= 0) throw DegenerateSampleError("skewness undefined for zero spread");
    const double m3 = central_moment(sample, mu, 3);
    return m3 / std::pow(m2, 1.5);
}

double kurtosis(std::span<const double> sample) {
    require_nonempty(sample);
    if (sample.size() < 4) throw DegenerateSampleError("kurtosis needs at least 4 points");
    const double mu = mean(sample);
    const double m2 = central_moment(sample, mu, 2);
    if (m2 <= 0) throw DegenerateSampleError("kurtosis undefined for zero spread");
    const double m4 = central_moment(sample, mu, 4);
    return m4 / (m2 * m2);
}

double tail_latency_p98(std::span<const double> sample) {
    require_nonempty(sample);
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    // ceil(0.98 * n) in integer arithmetic; floating point would misplace the
    // rank on exact multiples of 50.
    const std::size_t rank = (98 * n + 99) / 100;
    return sorted[rank - 1];
}

ConventionalReport conventional_report(const Trace& trace) {
    if (trace.tasks.empty()) throw EmptySampleError("trace has no tasks");

    std::vector<double> exec_s;
    exec_s.reserve(trace.tasks.size());
    for (const TaskRecord& t : trace.tasks) exec_s.push_back(t.exec_time().seconds());

    ConventionalReport report;
    report.sample_count = exec_s.size();
    report.mean_s = mean(exec_s);
    report.median_s = median(exec_s);
    report.stddev_s = stddev(exec_s);
    report.max_s = max_value(exec_s);
    report.tail_p98_s = tail_latency_p98(exec_s);
    try {
        report.skewness = skewness(exec_s);
    } catch (const DegenerateSampleError& e) {
        report.skewness_note = e.what();
    }
    try {
        report.kurtosis = kurtosis(exec_s);
    } catch (const DegenerateSampleError& e) {
        report.kurtosis_note = e.what();
    }
    return report;
}

}  // namespace latemetrics
