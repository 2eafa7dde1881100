#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "latemetrics/autoscaler.hpp"
#include "latemetrics/time.hpp"
#include "latemetrics/trace.hpp"
#include "latemetrics/workload.hpp"

namespace latemetrics {

// Node lifecycle: Off -> Starting -> Active -> Draining -> Off. Base nodes
// are Active for the whole run and never drain; elastic nodes move through
// the full cycle. Draining nodes finish their queued work but take no new
// arrivals.
enum class NodeStatus { Off, Starting, Active, Draining };

struct ClusterSpec {
    std::uint32_t base_nodes = 5;
    std::uint32_t elastic_nodes_max = 15;
    double node_capacity = 1.0;  // CPU-seconds of work per wall-clock second
    Duration startup_delay = Duration::micros(5'000'000);
    Duration sample_period = Duration::micros(1'000'000);

    void validate() const;
};

// Mean utilization across Active nodes over one sample period. Per node this
// is delivered work / (capacity * time active in the window), which under
// processor sharing equals the fraction of its active time the node was
// busy.
struct CpuSample {
    TimePoint time;  // end of the sampled window
    double utilization = 0;
};

// One actuation or lifecycle step. Actions: "up" (power-on begins), "ready"
// (startup finished), "down" (drain begins; immediate power-off when idle),
// "off" (drain finished), "saturated" (up request with no node left),
// "floor" (down request with no elastic node left). node_id is -1 for the
// two no-op markers.
struct ScalingEvent {
    TimePoint time;
    std::string action;
    std::int32_t node_id = -1;
    std::string reason;
};

struct SimulationResult {
    Trace trace;
    std::vector<CpuSample> cpu_samples;
    std::vector<ScalingEvent> scaling_log;
    double total_demand_cpu_s = 0;   // sum of arrival demands
    double total_service_cpu_s = 0;  // integral of delivered service
    std::uint64_t seed = 0;
};

// Discrete-event simulation of a processor-sharing cluster under an
// autoscaler.
//
// Mechanics:
//   - Each arrival is dispatched to the Active node with the least
//     outstanding work (ties to the lowest node id) and starts service
//     immediately; a node with k tasks serves each at capacity / k.
//   - The scaler runs every sample_period: it samples utilization, feeds the
//     policy, and actuates the decision subject to a per-direction cooldown.
//     Scale-ups power on Off nodes, which become Active after startup_delay;
//     scale-downs drain the least-loaded Active elastic node.
//   - Simultaneous events apply in a fixed order (completions, then node
//     readiness, then the scaler, then arrivals), so runs with equal seeds
//     are bit-identical.
//
// The run ends when every accepted task has completed; the trace horizon is
// [0, max(duration, last completion)). The engine itself draws no
// randomness.
SimulationResult simulate_arrivals(std::span<const ArrivalEvent> arrivals, Duration duration,
                                   const ClusterSpec& cluster, const ScalerPolicy& scaler);

// Generates the arrival stream from the workload spec (sub-seed 0 of `seed`)
// and simulates it.
SimulationResult simulate(const WorkloadSpec& workload, const ClusterSpec& cluster,
                          const ScalerPolicy& scaler, std::uint64_t seed);

// Serialization used by the command-line tool: one record per line,
// "time_us,utilization" and "time_us,action,node_id,reason". Doubles are
// printed shortest-round-trip, so equal runs produce byte-identical files.
std::string format_cpu_samples(std::span<const CpuSample> samples);
std::string format_scaling_log(std::span<const ScalingEvent> events);

}  // namespace latemetrics
