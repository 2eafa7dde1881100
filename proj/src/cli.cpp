#include "latemetrics/cli.hpp"

#include <fstream>

namespace latemetrics {

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

SimulateOutput run_simulate(const RunConfig& config, const std::filesystem::path& out_dir) {
    config.validate();
    std::filesystem::create_directories(out_dir);

    SimulateOutput out;
    out.sim = simulate(config.workload, config.cluster, config.scaler, config.seed);
    out.trace_path = out_dir / "trace.lm";
    out.cpu_path = out_dir / "cpu.csv";
    out.log_path = out_dir / "scaling.csv";
    out.report_path = out_dir / "report.txt";

    write_trace(out.sim.trace, out.trace_path);
    write_file(out.cpu_path, format_cpu_samples(out.sim.cpu_samples));
    write_file(out.log_path, format_scaling_log(out.sim.scaling_log));

    RunInfo run;
    run.tool = "simulate";
    run.seed = config.seed;
    run.details = config.echo();
    out.report = build_report(out.sim.trace, config.sla, config.warmup, std::move(run));
    write_file(out.report_path, serialize_report(out.report));
    return out;
}

MetricsReport run_analyze(const std::filesystem::path& trace_path, const AnalyzeOptions& options) {
    const Trace trace = read_trace(trace_path);
    SlaPolicy policy;
    policy.threshold = options.threshold;
    policy.span_rule = options.span_rule;
    policy.count_mode = options.count_mode;

    RunInfo run;
    run.tool = "analyze";
    run.details.emplace_back("trace", trace_path.string());
    return build_report(trace, policy, options.warmup, std::move(run));
}

std::string run_compare(const std::filesystem::path& report_a,
                        const std::filesystem::path& report_b) {
    const ParsedReport a = ParsedReport::from_file(report_a);
    const ParsedReport b = ParsedReport::from_file(report_b);
    return compare_reports(a, b);
}

}  // namespace latemetrics
