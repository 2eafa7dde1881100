#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "latemetrics/interval.hpp"
#include "latemetrics/time.hpp"

namespace latemetrics {

// One completed task. Execution time is finish - submit: queuing and
// placement latency count against the task, matching how a client
// experiences it.
struct TaskRecord {
    std::uint64_t task_id = 0;
    std::uint32_t node_id = 0;
    TimePoint submit_time;
    TimePoint start_time;
    TimePoint finish_time;

    Duration exec_time() const { return finish_time - submit_time; }

    auto operator<=>(const TaskRecord&) const = default;
};

// Step change of the node pool: `count` nodes are allocated from `time` on.
struct NodeCountChange {
    TimePoint time;
    std::uint32_t count = 0;

    auto operator<=>(const NodeCountChange&) const = default;
};

// A completed run: every finished task, the observation horizon, and the
// node-pool size over time. Tasks are kept sorted by finish_time (ties by
// task_id).
struct Trace {
    std::vector<TaskRecord> tasks;
    Interval horizon;
    std::vector<NodeCountChange> node_pool_timeline;

    // Throws std::invalid_argument on the first violated invariant:
    // task_ids unique, submit <= start <= finish, every task inside the
    // horizon, tasks sorted by finish time, timeline starting at the horizon
    // and strictly increasing in time.
    void validate() const;

    // Drops the first `warmup` of the horizon and every task submitted
    // before the new start. The timeline is re-based so its first entry
    // carries the count in effect at the trimmed start.
    Trace trimmed(Duration warmup) const;

    // Integral of the node count over the horizon, in node-seconds.
    double node_seconds() const;
};

// Line format (UTF-8):
//   #latemetrics-trace v1
//   #horizon <start_us>,<end_us>
//   <task_id>,<node_id>,<submit_us>,<start_us>,<finish_us>     (repeated)
//   #nodes
//   <time_us>,<count>                                          (repeated)
//
// read_trace re-sorts tasks by finish_time and validates; errors carry the
// offending line number and field. write_trace(read_trace(f)) == f byte for
// byte when f is canonical (tasks already in finish order).
Trace read_trace(const std::filesystem::path& path);
void write_trace(const Trace& trace, const std::filesystem::path& path);

}  // namespace latemetrics
