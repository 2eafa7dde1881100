#pragma once

#include <cstdint>
#include <span>

#include "latemetrics/time.hpp"

namespace latemetrics {

// Ordered so that decisions compare monotonically with utilization:
// Down < Hold < Up.
enum class ScaleAction { Down = -1, Hold = 0, Up = 1 };

struct Decision {
    ScaleAction action = ScaleAction::Hold;
    std::uint32_t count = 0;  // nodes requested; 0 iff Hold

    auto operator<=>(const Decision&) const = default;
};

enum class ForecasterKind { LastValue, LinearTrend, Ewma, Overestimator };

struct ForecasterSpec {
    ForecasterKind kind = ForecasterKind::LinearTrend;
    double ewma_alpha = 0.3;  // Ewma only; must be in (0, 1]
    double bias = 0.0;        // Overestimator only; must be >= 0
};

enum class ScalerKind { Reactive, Proactive };

// Threshold controller shared by both scaler kinds: strictly above
// up_threshold requests Up(step), strictly below down_threshold requests
// Down(step), anything on or between the thresholds holds. The reactive
// scaler applies it to the current utilization sample, the proactive one to
// a forecast lead_time ahead of the newest sample.
struct ScalerPolicy {
    ScalerKind kind = ScalerKind::Reactive;
    double up_threshold = 0.80;
    double down_threshold = 0.20;
    std::uint32_t step = 1;
    Duration cooldown = Duration::micros(30'000'000);  // per direction
    ForecasterSpec forecaster;
    std::size_t history_len = 6;
    Duration lead_time = Duration::micros(10'000'000);
    // When false the proactive scaler falls back to the current sample for
    // scale-down decisions and uses the forecast only for scale-up.
    bool forecast_for_down = true;

    void validate() const;
};

Decision reactive_decide(double utilization, const ScalerPolicy& policy);

// Predicted utilization `lead` ahead of the last of `history_len` equally
// spaced samples (spacing `sample_period`), clamped to [0, 1].
//   LastValue:     newest sample.
//   LinearTrend:   least-squares line through the window, extrapolated.
//   Ewma:          exponentially weighted level of the window (alpha).
//   Overestimator: LinearTrend plus a non-negative bias; never predicts
//                  below LinearTrend on the same history.
// Requires history.size() == history_len (callers gate warm-up).
double forecast(std::span<const double> history, Duration sample_period, Duration lead,
                const ForecasterSpec& spec, std::size_t history_len);

// Applies the threshold rule to the forecast. With fewer than history_len
// samples the forecaster has no basis yet, so the decision is Hold.
Decision proactive_decide(std::span<const double> history, Duration sample_period,
                          const ScalerPolicy& policy);

}  // namespace latemetrics
