#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "latemetrics/time.hpp"

namespace latemetrics {

// Half-open time interval [start, end). Half-open bounds make abutting
// intervals compose without double counting: [a,b) followed by [b,c) covers
// exactly [a,c).
struct Interval {
    TimePoint start;
    TimePoint end;

    bool valid() const { return start < end; }
    Duration length() const { return end - start; }
    bool contains(TimePoint t) const { return start <= t && t < end; }

    auto operator<=>(const Interval&) const = default;
};

// A set of disjoint intervals in canonical form: sorted by start, pairwise
// disjoint, non-adjacent (abutting members are merged). Construct via
// interval_union or complement; the invariant holds for every reachable
// value.
class IntervalSet {
public:
    IntervalSet() = default;

    const std::vector<Interval>& intervals() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }

    // Sum of member lengths. Exact: integer microsecond arithmetic.
    Duration total_measure() const;

    bool operator==(const IntervalSet&) const = default;

private:
    explicit IntervalSet(std::vector<Interval> canonical) : members_(std::move(canonical)) {}
    std::vector<Interval> members_;

    friend IntervalSet interval_union(std::span<const Interval> intervals);
    friend IntervalSet complement(const IntervalSet& set, const Interval& horizon);
};

// Merges an arbitrary list (unsorted, overlapping, duplicated) into canonical
// form. Adjacent intervals ([a,b) and [b,c)) merge into one. Throws
// std::invalid_argument naming the offending index if any input has
// start >= end.
IntervalSet interval_union(std::span<const Interval> intervals);

// Gaps of `set` within `horizon`. Throws std::invalid_argument if the horizon
// is invalid or the set is not fully contained in it. Satisfies
//   complement(complement(s, h), h) == s
//   measure(s) + measure(complement(s, h)) == length(h)
IntervalSet complement(const IntervalSet& set, const Interval& horizon);

}  // namespace latemetrics
