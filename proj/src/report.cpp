#include "latemetrics/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "latemetrics/errors.hpp"
#include "latemetrics/numtext.hpp"

namespace latemetrics {

namespace {

constexpr std::string_view kHeader = "#latemetrics-report v1";

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string human_line(const std::string& label, const std::string& value) {
    std::string out = "# ";
    out += label;
    if (label.size() < 26) out.append(26 - label.size(), ' ');
    out += ' ';
    out += value;
    out += '\n';
    return out;
}

const char* span_rule_name(SpanRule r) {
    return r == SpanRule::ExcessSpan ? "excess" : "full";
}

const char* count_mode_name(CountMode m) {
    return m == CountMode::Tasks ? "tasks" : "spans";
}

}  // namespace

MetricsReport build_report(const Trace& trace, const SlaPolicy& policy, Duration warmup,
                           RunInfo run) {
    const Trace analyzed = trace.trimmed(warmup);
    MetricsReport report;
    report.conventional = conventional_report(analyzed);
    report.sla = sla_report(analyzed, policy);
    report.policy = policy;
    report.warmup = warmup;
    report.node_seconds = analyzed.node_seconds();
    report.mean_nodes = report.node_seconds / analyzed.horizon.length().seconds();
    report.run = std::move(run);
    return report;
}

std::string serialize_report(const MetricsReport& r) {
    std::string out;
    out += kHeader;
    out += '\n';

    auto opt_text = [](const std::optional<double>& v) {
        return v ? format_double(*v) : std::string("null");
    };
    auto opt_human = [&](const std::optional<double>& v) {
        return v ? fixed6(*v) : std::string("n/a (no violations)");
    };

    out += human_line("tasks", std::to_string(r.conventional.sample_count));
    out += human_line("mean exec time", fixed6(r.conventional.mean_s) + " s");
    out += human_line("median exec time", fixed6(r.conventional.median_s) + " s");
    out += human_line("stddev", fixed6(r.conventional.stddev_s) + " s");
    out += human_line("max", fixed6(r.conventional.max_s) + " s");
    out += human_line("skewness",
                      r.conventional.skewness ? fixed6(*r.conventional.skewness)
                                              : "n/a (" + r.conventional.skewness_note + ")");
    out += human_line("kurtosis",
                      r.conventional.kurtosis ? fixed6(*r.conventional.kurtosis)
                                              : "n/a (" + r.conventional.kurtosis_note + ")");
    out += human_line("tail p98", fixed6(r.conventional.tail_p98_s) + " s");
    out += human_line("sla threshold", fixed6(r.policy.threshold.seconds()) + " s");
    out += human_line("violations", std::to_string(r.sla.num_violations));
    out += human_line("violated time", fixed6(r.sla.time_violations_s) + " s");
    out += human_line("violation-free time", fixed6(r.sla.time_no_violations_s) + " s");
    out += human_line("m1 time between viol.",
                      r.sla.m1_s ? fixed6(*r.sla.m1_s) + " s" : opt_human(r.sla.m1_s));
    out += human_line("m2 time to repair", fixed6(r.sla.m2_s) + " s");
    out += human_line("m3 availability", fixed6(r.sla.m3));
    out += human_line("m4 reliability", opt_human(r.sla.m4));
    out += human_line("m5 maintainability", fixed6(r.sla.m5));
    out += human_line("node seconds", fixed6(r.node_seconds));
    out += human_line("mean nodes", fixed6(r.mean_nodes));

    out += "[conventional]\n";
    out += "samples=" + std::to_string(r.conventional.sample_count) + '\n';
    out += "mean_s=" + format_double(r.conventional.mean_s) + '\n';
    out += "median_s=" + format_double(r.conventional.median_s) + '\n';
    out += "stddev_s=" + format_double(r.conventional.stddev_s) + '\n';
    out += "max_s=" + format_double(r.conventional.max_s) + '\n';
    out += "skewness=" + opt_text(r.conventional.skewness) + '\n';
    out += "skewness_note=" + r.conventional.skewness_note + '\n';
    out += "kurtosis=" + opt_text(r.conventional.kurtosis) + '\n';
    out += "kurtosis_note=" + r.conventional.kurtosis_note + '\n';
    out += "tail_p98_s=" + format_double(r.conventional.tail_p98_s) + '\n';

    out += "[sla]\n";
    out += "threshold_s=" + format_double(r.policy.threshold.seconds()) + '\n';
    out += "num_violations=" + std::to_string(r.sla.num_violations) + '\n';
    out += "time_violations_s=" + format_double(r.sla.time_violations_s) + '\n';
    out += "time_no_violations_s=" + format_double(r.sla.time_no_violations_s) + '\n';
    out += "horizon_s=" + format_double(r.sla.horizon_s) + '\n';
    out += "perfect=" + std::string(r.sla.no_violations ? "true" : "false") + '\n';
    out += "m1_s=" + opt_text(r.sla.m1_s) + '\n';
    out += "m2_s=" + format_double(r.sla.m2_s) + '\n';
    out += "m3=" + format_double(r.sla.m3) + '\n';
    out += "m4=" + opt_text(r.sla.m4) + '\n';
    out += "m5=" + format_double(r.sla.m5) + '\n';

    out += "[resources]\n";
    out += "node_seconds=" + format_double(r.node_seconds) + '\n';
    out += "mean_nodes=" + format_double(r.mean_nodes) + '\n';

    out += "[conventions]\n";
    out += "exec_time=finish_minus_submit\n";
    out += "moments=population\n";
    out += "kurtosis=raw\n";
    out += "percentile=nearest_rank\n";
    out += "violation=exec_strictly_over_threshold\n";
    out += "threshold_s=" + format_double(r.policy.threshold.seconds()) + '\n';
    out += "span_rule=" + std::string(span_rule_name(r.policy.span_rule)) + '\n';
    out += "count_mode=" + std::string(count_mode_name(r.policy.count_mode)) + '\n';
    out += "warmup_s=" + format_double(r.warmup.seconds()) + '\n';

    out += "[run]\n";
    out += "tool=" + r.run.tool + '\n';
    if (r.run.seed) out += "seed=" + std::to_string(*r.run.seed) + '\n';
    for (const auto& [key, value] : r.run.details) {
        out += key + '=' + value + '\n';
    }
    return out;
}

ParsedReport ParsedReport::from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kHeader) {
        throw std::invalid_argument("not a report: missing header '" + std::string(kHeader) + "'");
    }
    ParsedReport report;
    Section* current = nullptr;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[' && line.back() == ']') {
            report.sections_.emplace_back(line.substr(1, line.size() - 2), Section{});
            current = &report.sections_.back().second;
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos || current == nullptr) {
            throw std::invalid_argument("report line " + std::to_string(line_no) +
                                        ": expected section header or key=value");
        }
        current->emplace_back(line.substr(0, eq), line.substr(eq + 1));
    }
    return report;
}

ParsedReport ParsedReport::from_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open report file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_text(buffer.str());
}

const ParsedReport::Section* ParsedReport::section(const std::string& name) const {
    for (const auto& [sec_name, sec] : sections_) {
        if (sec_name == name) return &sec;
    }
    return nullptr;
}

const std::string& ParsedReport::value(const std::string& section_name,
                                       const std::string& key) const {
    const Section* sec = section(section_name);
    if (sec == nullptr) throw std::invalid_argument("report has no [" + section_name + "] section");
    for (const auto& [k, v] : *sec) {
        if (k == key) return v;
    }
    throw std::invalid_argument("report section [" + section_name + "] has no key '" + key + "'");
}

double ParsedReport::number(const std::string& section_name, const std::string& key) const {
    return parse_double(value(section_name, key));
}

namespace {

struct CompareRow {
    std::string label;
    std::string section;
    std::string key;
    bool integer = false;
};

const CompareRow kCompareRows[] = {
    {"samples", "conventional", "samples", true},
    {"mean_s", "conventional", "mean_s", false},
    {"median_s", "conventional", "median_s", false},
    {"stddev_s", "conventional", "stddev_s", false},
    {"max_s", "conventional", "max_s", false},
    {"skewness", "conventional", "skewness", false},
    {"kurtosis", "conventional", "kurtosis", false},
    {"tail_p98_s", "conventional", "tail_p98_s", false},
    {"num_violations", "sla", "num_violations", true},
    {"time_violations_s", "sla", "time_violations_s", false},
    {"time_no_violations_s", "sla", "time_no_violations_s", false},
    {"m1_s", "sla", "m1_s", false},
    {"m2_s", "sla", "m2_s", false},
    {"m3", "sla", "m3", false},
    {"m4", "sla", "m4", false},
    {"m5", "sla", "m5", false},
    {"node_seconds", "resources", "node_seconds", false},
    {"mean_nodes", "resources", "mean_nodes", false},
};

std::string pad(const std::string& text, std::size_t width) {
    if (text.size() >= width) return text;
    return std::string(width - text.size(), ' ') + text;
}

}  // namespace

std::string compare_reports(const ParsedReport& a, const ParsedReport& b) {
    const ParsedReport::Section* conv_a = a.section("conventions");
    const ParsedReport::Section* conv_b = b.section("conventions");
    if (conv_a == nullptr || conv_b == nullptr) {
        throw ConventionMismatchError("report lacks a [conventions] section");
    }
    if (*conv_a != *conv_b) {
        std::string diff = "reports use different conventions, refusing to compare:\n";
        for (const auto& [key, value] : *conv_a) {
            const auto it = std::find_if(conv_b->begin(), conv_b->end(),
                                         [&](const auto& kv) { return kv.first == key; });
            const std::string other = it == conv_b->end() ? "<missing>" : it->second;
            if (other != value) diff += "  " + key + ": " + value + " vs " + other + "\n";
        }
        for (const auto& [key, value] : *conv_b) {
            const auto it = std::find_if(conv_a->begin(), conv_a->end(),
                                         [&](const auto& kv) { return kv.first == key; });
            if (it == conv_a->end()) diff += "  " + key + ": <missing> vs " + value + "\n";
        }
        throw ConventionMismatchError(diff);
    }

    std::string out;
    out += pad("metric", 22) + pad("a", 18) + pad("b", 18) + pad("delta(b-a)", 18) +
           pad("rel%", 10) + '\n';
    for (const CompareRow& row : kCompareRows) {
        const std::string& va = a.value(row.section, row.key);
        const std::string& vb = b.value(row.section, row.key);
        std::string delta = "n/a";
        std::string rel = "n/a";
        if (va != "null" && vb != "null") {
            const double na = parse_double(va);
            const double nb = parse_double(vb);
            const double d = nb - na;
            delta = row.integer ? std::to_string(static_cast<long long>(d)) : fixed6(d);
            if (na != 0) rel = fixed6(100.0 * d / std::abs(na));
        }
        auto shorten = [&](const std::string& v) {
            if (v == "null") return std::string("null");
            return row.integer ? v : fixed6(parse_double(v));
        };
        out += pad(row.label, 22) + pad(shorten(va), 18) + pad(shorten(vb), 18) +
               pad(delta, 18) + pad(rel, 10) + '\n';
    }
    return out;
}

}  // namespace latemetrics
