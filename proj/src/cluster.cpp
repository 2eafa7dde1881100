#include "latemetrics/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "latemetrics/numtext.hpp"
#include "latemetrics/rng.hpp"

namespace latemetrics {

void ClusterSpec::validate() const {
    if (base_nodes == 0) throw std::invalid_argument("cluster needs at least one base node");
    if (node_capacity <= 0) throw std::invalid_argument("node capacity must be positive");
    if (startup_delay.us < 0) throw std::invalid_argument("startup delay must be non-negative");
    if (sample_period.us <= 0) throw std::invalid_argument("sample period must be positive");
}

namespace {

// A task's remaining work below this is numerically exhausted. Completion
// times are rounded up to whole microseconds, so the residual after the
// scheduled share is applied is at most a few ulps of the original demand.
constexpr double kDoneEps = 1e-12;

// Processing order of simultaneous events.
enum : int { kRankCompletion = 0, kRankReady = 1, kRankScaler = 2, kRankArrival = 3 };

struct Event {
    std::int64_t time_us = 0;
    int rank = 0;
    std::uint32_t node_id = 0;
    std::uint64_t generation = 0;  // completion staleness guard
};

struct EventAfter {
    bool operator()(const Event& a, const Event& b) const {
        if (a.time_us != b.time_us) return a.time_us > b.time_us;
        if (a.rank != b.rank) return a.rank > b.rank;
        if (a.node_id != b.node_id) return a.node_id > b.node_id;
        return a.generation > b.generation;
    }
};

struct RunningTask {
    std::uint64_t task_id = 0;
    std::int64_t submit_us = 0;
    double remaining_cpu_s = 0;
};

struct Node {
    std::uint32_t id = 0;
    NodeStatus status = NodeStatus::Off;
    std::vector<RunningTask> tasks;
    std::int64_t last_advance_us = 0;
    std::uint64_t completion_gen = 0;
    // Accumulators for the current sample window, valid while Active.
    double window_service_cpu_s = 0;
    std::int64_t window_active_us = 0;

    double outstanding_work() const {
        double sum = 0;
        for (const RunningTask& t : tasks) sum += t.remaining_cpu_s;
        return sum;
    }
};

class Engine {
public:
    Engine(std::span<const ArrivalEvent> arrivals, Duration duration, const ClusterSpec& cluster,
           const ScalerPolicy& scaler)
        : arrivals_(arrivals), duration_(duration), cluster_(cluster), policy_(scaler) {
        cluster_.validate();
        policy_.validate();
        if (duration_.us <= 0) throw std::invalid_argument("simulation duration must be positive");
        std::int64_t prev_us = 0;
        for (const ArrivalEvent& a : arrivals_) {
            if (a.time.us < 0 || a.time.us >= duration_.us) {
                throw std::invalid_argument("arrival outside [0, duration)");
            }
            if (a.time.us < prev_us) throw std::invalid_argument("arrivals not sorted by time");
            prev_us = a.time.us;
            if (a.demand_cpu_s <= 0) throw std::invalid_argument("arrival demand must be positive");
        }

        nodes_.resize(cluster_.base_nodes + cluster_.elastic_nodes_max);
        for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
            nodes_[i].id = i;
            nodes_[i].status = i < cluster_.base_nodes ? NodeStatus::Active : NodeStatus::Off;
        }
        powered_ = cluster_.base_nodes;
        raw_timeline_.push_back(NodeCountChange{TimePoint{0}, powered_});
        queue_.push(Event{cluster_.sample_period.us, kRankScaler, 0, 0});
    }

    SimulationResult run() {
        while (true) {
            const bool have_arrival = next_arrival_ < arrivals_.size();
            const bool have_event = !queue_.empty();
            if (!have_arrival && !have_event) break;

            // Arrivals rank below everything else, so an arrival goes first
            // only when strictly earlier than the queue head.
            if (have_arrival &&
                (!have_event || arrivals_[next_arrival_].time.us < queue_.top().time_us)) {
                handle_arrival(arrivals_[next_arrival_]);
                ++next_arrival_;
                continue;
            }
            const Event ev = queue_.top();
            queue_.pop();
            switch (ev.rank) {
                case kRankCompletion: handle_completion(ev); break;
                case kRankReady: handle_ready(ev); break;
                case kRankScaler: handle_scaler_tick(ev.time_us); break;
                default: throw std::logic_error("unexpected event rank");
            }
        }
        return finalize();
    }

private:
    void advance_node(Node& n, std::int64_t now_us) {
        const std::int64_t dt_us = now_us - n.last_advance_us;
        if (dt_us <= 0) return;
        n.last_advance_us = now_us;
        const std::size_t k = n.tasks.size();
        if (k > 0) {
            const double share =
                static_cast<double>(dt_us) * 1e-6 * cluster_.node_capacity / static_cast<double>(k);
            double delivered = 0;
            for (RunningTask& t : n.tasks) {
                const double took = std::min(t.remaining_cpu_s, share);
                t.remaining_cpu_s -= took;
                delivered += took;
            }
            total_service_ += delivered;
            if (n.status == NodeStatus::Active) n.window_service_cpu_s += delivered;
        }
        if (n.status == NodeStatus::Active) n.window_active_us += dt_us;
    }

    // Re-arms the node's completion event; any previously queued one becomes
    // stale via the generation counter.
    void schedule_completion(Node& n, std::int64_t now_us) {
        ++n.completion_gen;
        if (n.tasks.empty()) return;
        double min_remaining = std::numeric_limits<double>::infinity();
        for (const RunningTask& t : n.tasks) min_remaining = std::min(min_remaining, t.remaining_cpu_s);
        const double dt_s =
            min_remaining * static_cast<double>(n.tasks.size()) / cluster_.node_capacity;
        const std::int64_t dt_us = std::max<std::int64_t>(
            0, static_cast<std::int64_t>(std::ceil(dt_s * 1e6)));
        queue_.push(Event{now_us + dt_us, kRankCompletion, n.id, n.completion_gen});
    }

    void handle_arrival(const ArrivalEvent& arrival) {
        // Least outstanding work among Active nodes, ties to the lowest id.
        // All candidates are brought up to the arrival instant first so the
        // comparison reflects one point in time, not each node's last event.
        Node* target = nullptr;
        double best = std::numeric_limits<double>::infinity();
        for (Node& n : nodes_) {
            if (n.status != NodeStatus::Active) continue;
            advance_node(n, arrival.time.us);
            const double work = n.outstanding_work();
            if (work < best) {
                best = work;
                target = &n;
            }
        }
        // Base nodes are Active for the whole run, so a target always exists.
        target->tasks.push_back(RunningTask{next_task_id_++, arrival.time.us, arrival.demand_cpu_s});
        total_demand_ += arrival.demand_cpu_s;
        schedule_completion(*target, arrival.time.us);
    }

    void handle_completion(const Event& ev) {
        Node& n = nodes_[ev.node_id];
        if (ev.generation != n.completion_gen) return;  // superseded
        advance_node(n, ev.time_us);
        for (std::size_t i = 0; i < n.tasks.size();) {
            if (n.tasks[i].remaining_cpu_s <= kDoneEps) {
                const RunningTask& t = n.tasks[i];
                completed_.push_back(TaskRecord{t.task_id, n.id, TimePoint{t.submit_us},
                                                TimePoint{t.submit_us}, TimePoint{ev.time_us}});
                last_finish_us_ = std::max(last_finish_us_, ev.time_us);
                n.tasks.erase(n.tasks.begin() + static_cast<std::ptrdiff_t>(i));
            } else {
                ++i;
            }
        }
        if (n.status == NodeStatus::Draining && n.tasks.empty()) {
            power_off(n, ev.time_us, "drained");
        }
        schedule_completion(n, ev.time_us);
    }

    void handle_ready(const Event& ev) {
        Node& n = nodes_[ev.node_id];
        if (n.status != NodeStatus::Starting) return;
        advance_node(n, ev.time_us);
        n.status = NodeStatus::Active;
        log(ev.time_us, "ready", static_cast<std::int32_t>(n.id), "startup-complete");
    }

    void handle_scaler_tick(std::int64_t now_us) {
        for (Node& n : nodes_) {
            if (n.status != NodeStatus::Off) advance_node(n, now_us);
        }

        const double sample = cpu_sample();
        samples_.push_back(CpuSample{TimePoint{now_us}, sample});
        history_.push_back(sample);
        if (history_.size() > policy_.history_len) history_.erase(history_.begin());

        double signal = sample;
        Decision decision{};
        if (policy_.kind == ScalerKind::Reactive) {
            decision = reactive_decide(sample, policy_);
        } else {
            decision = proactive_decide(history_, cluster_.sample_period, policy_);
            if (history_.size() >= policy_.history_len) {
                signal = forecast(history_, cluster_.sample_period, policy_.lead_time,
                                  policy_.forecaster, policy_.history_len);
            }
        }

        // The cooldown gates attempts per direction; a gated decision leaves
        // no trace in the log.
        if (decision.action == ScaleAction::Up &&
            now_us - last_up_us_ >= policy_.cooldown.us) {
            last_up_us_ = now_us;
            scale_up(decision.count, now_us, signal);
        } else if (decision.action == ScaleAction::Down &&
                   now_us - last_down_us_ >= policy_.cooldown.us) {
            last_down_us_ = now_us;
            scale_down(decision.count, now_us, signal);
        }

        for (Node& n : nodes_) {
            n.window_service_cpu_s = 0;
            n.window_active_us = 0;
        }

        const bool work_left = std::any_of(nodes_.begin(), nodes_.end(),
                                           [](const Node& n) { return !n.tasks.empty(); });
        if (next_arrival_ < arrivals_.size() || work_left || now_us < duration_.us) {
            queue_.push(Event{now_us + cluster_.sample_period.us, kRankScaler, 0, 0});
        }
    }

    double cpu_sample() const {
        double sum = 0;
        std::uint32_t counted = 0;
        for (const Node& n : nodes_) {
            if (n.status != NodeStatus::Active || n.window_active_us <= 0) continue;
            const double active_s = static_cast<double>(n.window_active_us) * 1e-6;
            const double u = n.window_service_cpu_s / (cluster_.node_capacity * active_s);
            sum += std::clamp(u, 0.0, 1.0);
            ++counted;
        }
        return counted > 0 ? sum / counted : 0.0;
    }

    void scale_up(std::uint32_t count, std::int64_t now_us, double signal) {
        const std::string reason = "signal=" + format_double(signal);
        for (std::uint32_t i = 0; i < count; ++i) {
            Node* target = nullptr;
            for (Node& n : nodes_) {
                if (n.status == NodeStatus::Off) {
                    target = &n;
                    break;
                }
            }
            if (target == nullptr) {
                log(now_us, "saturated", -1, reason);
                return;
            }
            target->status = NodeStatus::Starting;
            target->last_advance_us = now_us;
            target->tasks.clear();
            ++powered_;
            record_timeline(now_us);
            log(now_us, "up", static_cast<std::int32_t>(target->id), reason);
            queue_.push(Event{now_us + cluster_.startup_delay.us, kRankReady, target->id, 0});
        }
    }

    void scale_down(std::uint32_t count, std::int64_t now_us, double signal) {
        const std::string reason = "signal=" + format_double(signal);
        for (std::uint32_t i = 0; i < count; ++i) {
            // Drain the least-loaded Active elastic node; base nodes never
            // drain. Ties go to the highest id (newest capacity first).
            Node* target = nullptr;
            double best = std::numeric_limits<double>::infinity();
            for (std::uint32_t id = cluster_.base_nodes; id < nodes_.size(); ++id) {
                Node& n = nodes_[id];
                if (n.status != NodeStatus::Active) continue;
                const double work = n.outstanding_work();
                if (work <= best) {
                    best = work;
                    target = &n;
                }
            }
            if (target == nullptr) {
                log(now_us, "floor", -1, reason);
                return;
            }
            log(now_us, "down", static_cast<std::int32_t>(target->id), reason);
            if (target->tasks.empty()) {
                power_off(*target, now_us, "idle");
            } else {
                target->status = NodeStatus::Draining;
            }
        }
    }

    void power_off(Node& n, std::int64_t now_us, const std::string& reason) {
        n.status = NodeStatus::Off;
        --powered_;
        record_timeline(now_us);
        log(now_us, "off", static_cast<std::int32_t>(n.id), reason);
    }

    void record_timeline(std::int64_t now_us) {
        if (raw_timeline_.back().time.us == now_us) {
            raw_timeline_.back().count = powered_;
        } else {
            raw_timeline_.push_back(NodeCountChange{TimePoint{now_us}, powered_});
        }
    }

    void log(std::int64_t time_us, std::string action, std::int32_t node_id, std::string reason) {
        scaling_log_.push_back(
            ScalingEvent{TimePoint{time_us}, std::move(action), node_id, std::move(reason)});
    }

    SimulationResult finalize() {
        SimulationResult result;
        result.trace.horizon = Interval{TimePoint{0}, TimePoint{std::max(duration_.us, last_finish_us_)}};

        std::sort(completed_.begin(), completed_.end(), [](const TaskRecord& a, const TaskRecord& b) {
            if (a.finish_time != b.finish_time) return a.finish_time < b.finish_time;
            return a.task_id < b.task_id;
        });
        result.trace.tasks = std::move(completed_);

        // Collapse no-op timeline entries and drop changes at or beyond the
        // horizon end (trailing power-offs after the last completion).
        std::vector<NodeCountChange> timeline;
        for (const NodeCountChange& c : raw_timeline_) {
            if (c.time.us >= result.trace.horizon.end.us && !timeline.empty()) continue;
            if (!timeline.empty() && timeline.back().count == c.count) continue;
            timeline.push_back(c);
        }
        result.trace.node_pool_timeline = std::move(timeline);
        result.trace.validate();

        result.cpu_samples = std::move(samples_);
        result.scaling_log = std::move(scaling_log_);
        result.total_demand_cpu_s = total_demand_;
        result.total_service_cpu_s = total_service_;
        return result;
    }

    std::span<const ArrivalEvent> arrivals_;
    Duration duration_;
    ClusterSpec cluster_;
    ScalerPolicy policy_;

    std::vector<Node> nodes_;
    std::priority_queue<Event, std::vector<Event>, EventAfter> queue_;
    std::size_t next_arrival_ = 0;
    std::uint64_t next_task_id_ = 0;
    std::uint32_t powered_ = 0;

    std::vector<double> history_;
    std::int64_t last_up_us_ = std::numeric_limits<std::int64_t>::min() / 4;
    std::int64_t last_down_us_ = std::numeric_limits<std::int64_t>::min() / 4;

    std::vector<TaskRecord> completed_;
    std::vector<CpuSample> samples_;
    std::vector<ScalingEvent> scaling_log_;
    std::vector<NodeCountChange> raw_timeline_;
    std::int64_t last_finish_us_ = 0;
    double total_demand_ = 0;
    double total_service_ = 0;
};

}  // namespace

SimulationResult simulate_arrivals(std::span<const ArrivalEvent> arrivals, Duration duration,
                                   const ClusterSpec& cluster, const ScalerPolicy& scaler) {
    return Engine(arrivals, duration, cluster, scaler).run();
}

SimulationResult simulate(const WorkloadSpec& workload, const ClusterSpec& cluster,
                          const ScalerPolicy& scaler, std::uint64_t seed) {
    // Sub-seed 0 feeds the arrival stream; the engine itself draws no
    // randomness. Further sub-seeds stay reserved for future stages.
    const std::vector<ArrivalEvent> arrivals = generate_arrivals(workload, derive_seed(seed, 0));
    SimulationResult result = simulate_arrivals(arrivals, workload.duration, cluster, scaler);
    result.seed = seed;
    return result;
}

std::string format_cpu_samples(std::span<const CpuSample> samples) {
    std::string out;
    for (const CpuSample& s : samples) {
        out += std::to_string(s.time.us);
        out += ',';
        out += format_double(s.utilization);
        out += '\n';
    }
    return out;
}

std::string format_scaling_log(std::span<const ScalingEvent> events) {
    std::string out;
    for (const ScalingEvent& e : events) {
        out += std::to_string(e.time.us);
        out += ',';
        out += e.action;
        out += ',';
        out += std::to_string(e.node_id);
        out += ',';
        out += e.reason;
        out += '\n';
    }
    return out;
}

}  // namespace latemetrics
