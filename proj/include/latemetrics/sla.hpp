#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "latemetrics/interval.hpp"
#include "latemetrics/trace.hpp"

namespace latemetrics {

// How a violating task maps to a span of violated time.
//   ExcessSpan:   [submit + threshold, finish) -- only the surplus beyond the
//                 agreed bound counts as violated time.
//   FullTaskSpan: [submit, finish) -- the whole task counts once it violates.
enum class SpanRule { ExcessSpan, FullTaskSpan };

// What counts as one violation.
//   Tasks:       every task whose exec_time exceeds the threshold.
//   MergedSpans: every maximal system-wide span of violated time.
enum class CountMode { Tasks, MergedSpans };

struct SlaPolicy {
    Duration threshold;  // a task violates iff exec_time > threshold (strict)
    SpanRule span_rule = SpanRule::ExcessSpan;
    CountMode count_mode = CountMode::Tasks;
};

// A maximal violated span on one node, with the tasks that produced it.
struct ViolationEpisode {
    std::uint32_t node_id = 0;
    Interval span;
    std::vector<std::uint64_t> source_task_ids;
};

// Violation structure of a trace under a policy. The system is "in
// violation" at time x iff any node has a violated span covering x, so
// time_violations is the union of every per-node episode span and
// time_no_violations its complement within the horizon. Their measures
// partition the horizon exactly.
struct ViolationSummary {
    std::size_t num_violations = 0;
    IntervalSet time_violations;
    IntervalSet time_no_violations;
    std::map<std::uint32_t, std::vector<ViolationEpisode>> per_node_episodes;
    Interval horizon;
    SlaPolicy policy;
};

ViolationSummary extract_violations(const Trace& trace, const SlaPolicy& policy);

// The five ratio metrics. Working time is time free of violations; repair
// time is time under violation.
//
//   m1 = Time(NoViolations) / NumViolations      (mean time between violations)
//   m2 = Time(Violations) / NumViolations        (mean time to repair)
//   m3 = Time(NoViolations) / horizon            (availability)
//   m4 = m1 / (1 + m1)                           (reliability)
//   m5 = 1 / (1 + m2)                            (maintainability)
//
// With zero violations m1 and m4 have no finite value: m1 returns nullopt
// and the report flags the run as perfect. m2 is then 0 and m3 = m5 = 1.

std::optional<double> m1_seconds(const ViolationSummary& summary);
double m2_seconds(const ViolationSummary& summary);
double m3_availability(const ViolationSummary& summary);
double m4_from_m1(double m1_s);
double m5_from_m2(double m2_s);

struct SlaReport {
    std::optional<double> m1_s;  // null iff no violations
    double m2_s = 0;
    double m3 = 1;
    std::optional<double> m4;  // null iff no violations
    double m5 = 1;
    bool no_violations = true;
    std::size_t num_violations = 0;
    double time_violations_s = 0;
    double time_no_violations_s = 0;
    double horizon_s = 0;
};

SlaReport sla_report(const ViolationSummary& summary);
SlaReport sla_report(const Trace& trace, const SlaPolicy& policy);

}  // namespace latemetrics
