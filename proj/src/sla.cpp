#include "latemetrics/sla.hpp"

#include <algorithm>
#include <stdexcept>

namespace latemetrics {

namespace {

Interval violation_span(const TaskRecord& t, const SlaPolicy& policy) {
    // Caller guarantees exec_time > threshold, so both rules yield a
    // non-degenerate interval.
    if (policy.span_rule == SpanRule::ExcessSpan) {
        return Interval{t.submit_time + policy.threshold, t.finish_time};
    }
    return Interval{t.submit_time, t.finish_time};
}

}  // namespace

ViolationSummary extract_violations(const Trace& trace, const SlaPolicy& policy) {
    if (policy.threshold.us <= 0) throw std::invalid_argument("sla threshold must be positive");
    trace.validate();

    ViolationSummary summary;
    summary.horizon = trace.horizon;
    summary.policy = policy;

    // Group violated spans per node, in span order.
    std::map<std::uint32_t, std::vector<const TaskRecord*>> violators_by_node;
    std::size_t violating_tasks = 0;
    for (const TaskRecord& t : trace.tasks) {
        if (t.exec_time() > policy.threshold) {
            violators_by_node[t.node_id].push_back(&t);
            ++violating_tasks;
        }
    }

    std::vector<Interval> all_spans;
    all_spans.reserve(violating_tasks);
    for (auto& [node_id, tasks] : violators_by_node) {
        std::vector<std::pair<Interval, std::uint64_t>> spans;
        spans.reserve(tasks.size());
        for (const TaskRecord* t : tasks) {
            spans.emplace_back(violation_span(*t, policy), t->task_id);
        }
        std::sort(spans.begin(), spans.end());

        // Merge overlapping or abutting spans of the same node into
        // episodes, keeping the contributing task ids.
        std::vector<ViolationEpisode>& episodes = summary.per_node_episodes[node_id];
        for (const auto& [span, task_id] : spans) {
            if (!episodes.empty() && span.start <= episodes.back().span.end) {
                episodes.back().span.end = std::max(episodes.back().span.end, span.end);
                episodes.back().source_task_ids.push_back(task_id);
            } else {
                episodes.push_back(ViolationEpisode{node_id, span, {task_id}});
            }
        }
        for (const ViolationEpisode& e : episodes) all_spans.push_back(e.span);
    }

    summary.time_violations = interval_union(all_spans);
    summary.time_no_violations = complement(summary.time_violations, trace.horizon);
    summary.num_violations = policy.count_mode == CountMode::Tasks
                                 ? violating_tasks
                                 : summary.time_violations.size();
    return summary;
}

std::optional<double> m1_seconds(const ViolationSummary& summary) {
    if (summary.num_violations == 0) return std::nullopt;
    return summary.time_no_violations.total_measure().seconds() /
           static_cast<double>(summary.num_violations);
}

double m2_seconds(const ViolationSummary& summary) {
    if (summary.num_violations == 0) return 0.0;
    return summary.time_violations.total_measure().seconds() /
           static_cast<double>(summary.num_violations);
}

double m3_availability(const ViolationSummary& summary) {
    const double viol = summary.time_violations.total_measure().seconds();
    const double clean = summary.time_no_violations.total_measure().seconds();
    return clean / (viol + clean);
}

double m4_from_m1(double m1_s) { return m1_s / (1.0 + m1_s); }

double m5_from_m2(double m2_s) { return 1.0 / (1.0 + m2_s); }

SlaReport sla_report(const ViolationSummary& summary) {
    SlaReport report;
    report.num_violations = summary.num_violations;
    report.time_violations_s = summary.time_violations.total_measure().seconds();
    report.time_no_violations_s = summary.time_no_violations.total_measure().seconds();
    report.horizon_s = summary.horizon.length().seconds();
    report.no_violations = summary.num_violations == 0;
    report.m1_s = m1_seconds(summary);
    report.m2_s = m2_seconds(summary);
    report.m3 = m3_availability(summary);
    if (report.m1_s) report.m4 = m4_from_m1(*report.m1_s);
    report.m5 = m5_from_m2(report.m2_s);
    return report;
}

SlaReport sla_report(const Trace& trace, const SlaPolicy& policy) {
    return sla_report(extract_violations(trace, policy));
}

}  // namespace latemetrics
