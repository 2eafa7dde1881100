#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "latemetrics/time.hpp"

namespace latemetrics {

// 24-hour periodic piecewise-linear rate multiplier. Vertices are
// (hour, multiplier) pairs; the curve interpolates linearly between
// consecutive vertices and must start at hour 0 and end at hour 24 with
// equal multipliers so the day wraps continuously.
class DiurnalProfile {
public:
    struct Vertex {
        double hour;
        double multiplier;
    };

    explicit DiurnalProfile(std::vector<Vertex> vertices);

    static DiurnalProfile constant(double multiplier = 1.0);

    double at_hours(double hour_of_day) const;  // hour_of_day in [0, 24)
    double at(Duration time_of_day) const;
    double max_multiplier() const { return max_multiplier_; }

private:
    std::vector<Vertex> vertices_;
    double max_multiplier_;
};

// Default day shape: overnight trough dipping to 0.6 between 02:00 and
// 06:00, flat 1.0 through the afternoon, evening ramp from 17:00 to a 2.5x
// peak at 22:00, then back down by midnight.
DiurnalProfile default_diurnal_profile();

// Lognormal CPU demand, truncated from above. The default centers tasks near
// the latency threshold scale so violations are neither universal nor absent.
struct DemandSpec {
    double median_cpu_s = 0.12;
    double sigma_log = 0.5;
    double cap_cpu_s = 5.0;
};

// Square-wave arrival surge: rate is multiplied by `factor` inside
// [start, start + length). Stresses forecasters with a step no history
// predicts.
struct SurgeSpec {
    Duration start;
    Duration length;
    double factor = 1.0;
};

struct WorkloadSpec {
    Duration duration;
    double base_rate_per_s = 1.45;  // arrival rate at multiplier 1.0
    DiurnalProfile profile = default_diurnal_profile();
    Duration day_offset;  // time of day at simulation t = 0
    DemandSpec demand;
    std::optional<SurgeSpec> surge;

    void validate() const;
};

struct ArrivalEvent {
    TimePoint time;
    double demand_cpu_s;
};

// Non-homogeneous Poisson arrivals over [0, duration) via thinning: candidate
// points are drawn from a homogeneous process at the envelope rate
// base_rate * max_multiplier * max(1, surge_factor) and kept with probability
// rate(t) / envelope. Demands are drawn per accepted arrival. Deterministic
// for a given seed.
std::vector<ArrivalEvent> generate_arrivals(const WorkloadSpec& spec, std::uint64_t seed);

}  // namespace latemetrics
