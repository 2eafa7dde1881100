// Command-line front end: simulate a workload against an autoscaled cluster,
// analyze a trace file, or compare two reports.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "latemetrics/cli.hpp"
#include "latemetrics/errors.hpp"

namespace {

latemetrics::Duration parse_duration_arg(const std::string& text, const std::string& flag) {
    try {
        return latemetrics::parse_duration(text);
    } catch (const std::exception& e) {
        throw CLI::ValidationError(flag, e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SLA-violation latency metrics and autoscaling simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    CLI::App* simulate = app.add_subcommand("simulate", "run a configured simulation");
    simulate->add_option("-c,--config", config_path, "run config file")->required();
    simulate->add_option("-o,--out", out_dir, "output directory (default: out)");

    std::string trace_path;
    std::string threshold_text = "100ms";
    std::string warmup_text = "0s";
    std::string span_rule_text = "excess";
    std::string count_mode_text = "tasks";
    std::string report_out;
    CLI::App* analyze = app.add_subcommand("analyze", "compute metrics over a trace file");
    analyze->add_option("trace", trace_path, "trace file (.lm)")->required();
    analyze->add_option("-t,--threshold", threshold_text, "SLA latency threshold (default: 100ms)");
    analyze->add_option("--warmup", warmup_text, "horizon prefix to discard (default: 0s)");
    analyze->add_option("--span-rule", span_rule_text, "violated-time rule: excess | full")
        ->check(CLI::IsMember({"excess", "full"}));
    analyze->add_option("--count-mode", count_mode_text, "violation counting: tasks | spans")
        ->check(CLI::IsMember({"tasks", "spans"}));
    analyze->add_option("-o,--out", report_out, "write the report here instead of stdout");

    std::string report_a;
    std::string report_b;
    CLI::App* compare = app.add_subcommand("compare", "diff two report files");
    compare->add_option("a", report_a, "baseline report")->required();
    compare->add_option("b", report_b, "comparison report")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            const latemetrics::RunConfig config = latemetrics::load_run_config(config_path);
            const latemetrics::SimulateOutput out = latemetrics::run_simulate(config, out_dir);
            std::cout << "wrote " << out.trace_path.string() << " (" << out.sim.trace.tasks.size()
                      << " tasks), " << out.cpu_path.string() << ", " << out.log_path.string()
                      << ", " << out.report_path.string() << "\n";
        } else if (analyze->parsed()) {
            latemetrics::AnalyzeOptions options;
            options.threshold = parse_duration_arg(threshold_text, "--threshold");
            options.warmup = parse_duration_arg(warmup_text, "--warmup");
            options.span_rule = span_rule_text == "excess" ? latemetrics::SpanRule::ExcessSpan
                                                           : latemetrics::SpanRule::FullTaskSpan;
            options.count_mode = count_mode_text == "tasks" ? latemetrics::CountMode::Tasks
                                                            : latemetrics::CountMode::MergedSpans;
            const latemetrics::MetricsReport report = latemetrics::run_analyze(trace_path, options);
            const std::string text = latemetrics::serialize_report(report);
            if (report_out.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(report_out, std::ios::binary);
                if (!out) throw std::runtime_error("cannot open for writing: " + report_out);
                out << text;
            }
        } else if (compare->parsed()) {
            std::cout << latemetrics::run_compare(report_a, report_b);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
