#include "latemetrics/workload.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "latemetrics/rng.hpp"

namespace latemetrics {

namespace {
constexpr double kHoursPerDay = 24.0;
constexpr std::int64_t kDayUs = 86'400'000'000;
}  // namespace

DiurnalProfile::DiurnalProfile(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 2) throw std::invalid_argument("profile needs at least 2 vertices");
    if (vertices_.front().hour != 0.0 || vertices_.back().hour != kHoursPerDay) {
        throw std::invalid_argument("profile must span hour 0 through hour 24");
    }
    if (vertices_.front().multiplier != vertices_.back().multiplier) {
        throw std::invalid_argument("profile must wrap: multiplier at hour 0 and 24 must match");
    }
    max_multiplier_ = 0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (vertices_[i].multiplier < 0) throw std::invalid_argument("profile multiplier negative");
        if (i > 0 && vertices_[i].hour <= vertices_[i - 1].hour) {
            throw std::invalid_argument("profile hours must be strictly increasing");
        }
        max_multiplier_ = std::max(max_multiplier_, vertices_[i].multiplier);
    }
    if (max_multiplier_ <= 0) throw std::invalid_argument("profile is identically zero");
}

DiurnalProfile DiurnalProfile::constant(double multiplier) {
    return DiurnalProfile({{0.0, multiplier}, {kHoursPerDay, multiplier}});
}

double DiurnalProfile::at_hours(double hour_of_day) const {
    double h = std::fmod(hour_of_day, kHoursPerDay);
    if (h < 0) h += kHoursPerDay;
    auto it = std::upper_bound(vertices_.begin(), vertices_.end(), h,
                               [](double value, const Vertex& v) { return value < v.hour; });
    // h >= 0 and vertices start at 0, so it > begin; h < 24 so it < end.
    const Vertex& hi = *it;
    const Vertex& lo = *(it - 1);
    const double t = (h - lo.hour) / (hi.hour - lo.hour);
    return lo.multiplier + t * (hi.multiplier - lo.multiplier);
}

double DiurnalProfile::at(Duration time_of_day) const {
    return at_hours(time_of_day.seconds() / 3600.0);
}

DiurnalProfile default_diurnal_profile() {
    return DiurnalProfile({
        {0.0, 1.0},
        {1.0, 1.0},
        {2.0, 0.6},
        {6.0, 0.6},
        {8.0, 1.0},
        {17.0, 1.0},
        {22.0, 2.5},
        {24.0, 1.0},
    });
}

void WorkloadSpec::validate() const {
    if (duration.us <= 0) throw std::invalid_argument("workload duration must be positive");
    if (base_rate_per_s <= 0) throw std::invalid_argument("base rate must be positive");
    if (day_offset.us < 0) throw std::invalid_argument("day offset must be non-negative");
    if (demand.median_cpu_s <= 0) throw std::invalid_argument("demand median must be positive");
    if (demand.sigma_log < 0) throw std::invalid_argument("demand sigma must be non-negative");
    if (demand.cap_cpu_s < demand.median_cpu_s) {
        throw std::invalid_argument("demand cap must be at least the median");
    }
    if (surge) {
        if (surge->start.us < 0 || surge->length.us <= 0 || surge->factor < 1.0) {
            throw std::invalid_argument("surge needs start >= 0, length > 0, factor >= 1");
        }
    }
}

std::vector<ArrivalEvent> generate_arrivals(const WorkloadSpec& spec, std::uint64_t seed) {
    spec.validate();
    Rng rng(seed);

    const double surge_max = spec.surge ? spec.surge->factor : 1.0;
    const double envelope = spec.base_rate_per_s * spec.profile.max_multiplier() * surge_max;

    auto rate_at = [&](std::int64_t t_us) {
        const std::int64_t day_us = (spec.day_offset.us + t_us) % kDayUs;
        double rate = spec.base_rate_per_s * spec.profile.at(Duration{day_us});
        if (spec.surge && t_us >= spec.surge->start.us &&
            t_us < spec.surge->start.us + spec.surge->length.us) {
            rate *= spec.surge->factor;
        }
        return rate;
    };

    const double mu_log = std::log(spec.demand.median_cpu_s);
    std::vector<ArrivalEvent> arrivals;
    arrivals.reserve(static_cast<std::size_t>(envelope * spec.duration.seconds() * 0.75) + 16);

    double t_s = 0;
    const double end_s = spec.duration.seconds();
    while (true) {
        t_s += rng.exponential(envelope);
        if (t_s >= end_s) break;
        const std::int64_t t_us = std::llround(t_s * 1e6);
        if (t_us >= spec.duration.us) break;
        if (rng.uniform01() * envelope < rate_at(t_us)) {
            const double demand =
                std::min(rng.lognormal(mu_log, spec.demand.sigma_log), spec.demand.cap_cpu_s);
            arrivals.push_back(ArrivalEvent{TimePoint{t_us}, demand});
        }
    }
    return arrivals;
}

}  // namespace latemetrics
