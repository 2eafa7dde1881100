#include "latemetrics/autoscaler.hpp"

#include <algorithm>
#include <stdexcept>

namespace latemetrics {

namespace {

double linear_trend_prediction(std::span<const double> window, double spacing_s, double lead_s) {
    const std::size_t n = window.size();
    if (n == 1) return window[0];
    // Least squares over (i * spacing, u_i); prediction at the last sample
    // plus the lead.
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += static_cast<double>(i) * spacing_s;
        sy += window[i];
    }
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = static_cast<double>(i) * spacing_s - mx;
        sxx += dx * dx;
        sxy += dx * (window[i] - my);
    }
    const double slope = sxy / sxx;
    const double x_target = static_cast<double>(n - 1) * spacing_s + lead_s;
    return my + slope * (x_target - mx);
}

double ewma_level(std::span<const double> window, double alpha) {
    double level = window.front();
    for (std::size_t i = 1; i < window.size(); ++i) {
        level = alpha * window[i] + (1.0 - alpha) * level;
    }
    return level;
}

}  // namespace

void ScalerPolicy::validate() const {
    if (!(down_threshold >= 0 && down_threshold < up_threshold && up_threshold <= 1.0)) {
        throw std::invalid_argument("scaler thresholds need 0 <= down < up <= 1");
    }
    if (step == 0) throw std::invalid_argument("scaler step must be at least 1");
    if (cooldown.us < 0) throw std::invalid_argument("scaler cooldown must be non-negative");
    if (kind == ScalerKind::Proactive) {
        if (history_len < 2) throw std::invalid_argument("forecast history needs at least 2 samples");
        if (lead_time.us <= 0) throw std::invalid_argument("forecast lead time must be positive");
        if (forecaster.kind == ForecasterKind::Ewma &&
            !(forecaster.ewma_alpha > 0 && forecaster.ewma_alpha <= 1)) {
            throw std::invalid_argument("ewma alpha must be in (0, 1]");
        }
        if (forecaster.kind == ForecasterKind::Overestimator && forecaster.bias < 0) {
            throw std::invalid_argument("overestimator bias must be non-negative");
        }
    }
}

Decision reactive_decide(double utilization, const ScalerPolicy& policy) {
    if (utilization > policy.up_threshold) return Decision{ScaleAction::Up, policy.step};
    if (utilization < policy.down_threshold) return Decision{ScaleAction::Down, policy.step};
    return Decision{ScaleAction::Hold, 0};
}

double forecast(std::span<const double> history, Duration sample_period, Duration lead,
                const ForecasterSpec& spec, std::size_t history_len) {
    if (history.size() != history_len || history.empty()) {
        throw std::invalid_argument("forecast requires exactly history_len samples");
    }
    if (sample_period.us <= 0) throw std::invalid_argument("sample period must be positive");

    const double spacing_s = sample_period.seconds();
    const double lead_s = lead.seconds();
    double prediction = 0;
    switch (spec.kind) {
        case ForecasterKind::LastValue:
            prediction = history.back();
            break;
        case ForecasterKind::LinearTrend:
            prediction = linear_trend_prediction(history, spacing_s, lead_s);
            break;
        case ForecasterKind::Ewma:
            prediction = ewma_level(history, spec.ewma_alpha);
            break;
        case ForecasterKind::Overestimator:
            prediction = linear_trend_prediction(history, spacing_s, lead_s) + spec.bias;
            break;
    }
    return std::clamp(prediction, 0.0, 1.0);
}

Decision proactive_decide(std::span<const double> history, Duration sample_period,
                          const ScalerPolicy& policy) {
    if (history.size() < policy.history_len) return Decision{ScaleAction::Hold, 0};
    const std::span<const double> window = history.subspan(history.size() - policy.history_len);
    const double predicted =
        forecast(window, sample_period, policy.lead_time, policy.forecaster, policy.history_len);

    if (predicted > policy.up_threshold) return Decision{ScaleAction::Up, policy.step};
    const double down_signal = policy.forecast_for_down ? predicted : history.back();
    if (down_signal < policy.down_threshold) return Decision{ScaleAction::Down, policy.step};
    return Decision{ScaleAction::Hold, 0};
}

}  // namespace latemetrics
