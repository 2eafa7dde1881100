#include "latemetrics/interval.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace latemetrics {

Duration IntervalSet::total_measure() const {
    std::int64_t total = 0;
    for (const Interval& iv : members_) total += iv.length().us;
    return Duration{total};
}

IntervalSet interval_union(std::span<const Interval> intervals) {
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        if (!intervals[i].valid()) {
            throw std::invalid_argument("interval at index " + std::to_string(i) +
                                        " invalid: start >= end");
        }
    }
    std::vector<Interval> sorted(intervals.begin(), intervals.end());
    std::sort(sorted.begin(), sorted.end());

    std::vector<Interval> merged;
    merged.reserve(sorted.size());
    for (const Interval& iv : sorted) {
        // Adjacency (prev.end == iv.start) merges as well as overlap.
        if (!merged.empty() && iv.start <= merged.back().end) {
            merged.back().end = std::max(merged.back().end, iv.end);
        } else {
            merged.push_back(iv);
        }
    }
    return IntervalSet{std::move(merged)};
}

IntervalSet complement(const IntervalSet& set, const Interval& horizon) {
    if (!horizon.valid()) throw std::invalid_argument("complement: horizon invalid (start >= end)");
    if (!set.empty()) {
        if (set.intervals().front().start < horizon.start ||
            set.intervals().back().end > horizon.end) {
            throw std::invalid_argument("complement: set extends outside horizon");
        }
    }
    std::vector<Interval> gaps;
    gaps.reserve(set.size() + 1);
    TimePoint cursor = horizon.start;
    for (const Interval& iv : set.intervals()) {
        if (cursor < iv.start) gaps.push_back(Interval{cursor, iv.start});
        cursor = iv.end;
    }
    if (cursor < horizon.end) gaps.push_back(Interval{cursor, horizon.end});
    return IntervalSet{std::move(gaps)};
}

}  // namespace latemetrics
