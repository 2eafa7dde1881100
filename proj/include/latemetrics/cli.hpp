#pragma once

#include <filesystem>
#include <string>

#include "latemetrics/cluster.hpp"
#include "latemetrics/config.hpp"
#include "latemetrics/report.hpp"

namespace latemetrics {

struct SimulateOutput {
    SimulationResult sim;
    MetricsReport report;
    std::filesystem::path trace_path;
    std::filesystem::path cpu_path;
    std::filesystem::path log_path;
    std::filesystem::path report_path;
};

// Runs the configured simulation and writes trace.lm, cpu.csv, scaling.csv
// and report.txt into out_dir (created if needed). The embedded report is
// computed from the written trace, so analyzing trace.lm with the same
// policy reproduces it.
SimulateOutput run_simulate(const RunConfig& config, const std::filesystem::path& out_dir);

struct AnalyzeOptions {
    Duration threshold = Duration::micros(100'000);
    SpanRule span_rule = SpanRule::ExcessSpan;
    CountMode count_mode = CountMode::Tasks;
    Duration warmup;
};

MetricsReport run_analyze(const std::filesystem::path& trace_path, const AnalyzeOptions& options);

// Comparison table of two report files (throws ConventionMismatchError when
// they were produced under different conventions).
std::string run_compare(const std::filesystem::path& report_a,
                        const std::filesystem::path& report_b);

}  // namespace latemetrics
