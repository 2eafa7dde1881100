#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "latemetrics/interval.hpp"
#include "latemetrics/rng.hpp"
#include "latemetrics/time.hpp"

using namespace latemetrics;

namespace {

Interval iv(std::int64_t start_us, std::int64_t end_us) {
    return Interval{TimePoint{start_us}, TimePoint{end_us}};
}

std::vector<Interval> random_intervals(Rng& rng, std::size_t max_count, std::int64_t horizon_us) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform01() * static_cast<double>(max_count));
    std::vector<Interval> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t a = static_cast<std::int64_t>(rng.uniform01() * (horizon_us - 2));
        const std::int64_t len = 1 + static_cast<std::int64_t>(rng.uniform01() * (horizon_us - a - 1));
        out.push_back(iv(a, a + len));
    }
    return out;
}

}  // namespace

TEST_CASE("duration and timepoint arithmetic") {
    CHECK(Duration::from_seconds(1.5).us == 1'500'000);
    CHECK(TimePoint::from_seconds(2.0).us == 2'000'000);
    CHECK((TimePoint{5} - TimePoint{2}).us == 3);
    CHECK((TimePoint{5} + Duration{7}).us == 12);
    CHECK(Duration{500}.seconds() == doctest::Approx(0.0005));
    CHECK(Duration{1} < Duration{2});
}

TEST_CASE("duration parsing and formatting") {
    CHECK(parse_duration("100ms").us == 100'000);
    CHECK(parse_duration("250us").us == 250);
    CHECK(parse_duration("1.5s").us == 1'500'000);
    CHECK(parse_duration("6h").us == 21'600'000'000);
    CHECK(parse_duration("30m").us == 1'800'000'000);
    CHECK(parse_duration("4d").us == 345'600'000'000);
    CHECK_THROWS_AS(parse_duration(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_duration("10"), std::invalid_argument);
    CHECK_THROWS_AS(parse_duration("ms"), std::invalid_argument);
    CHECK_THROWS_AS(parse_duration("10 ms"), std::invalid_argument);
    CHECK_THROWS_AS(parse_duration("-5s"), std::invalid_argument);

    CHECK(format_duration(parse_duration("100ms")) == "100ms");
    CHECK(format_duration(parse_duration("6h")) == "6h");
    CHECK(format_duration(parse_duration("90s")) == "90s");
    CHECK(format_duration(Duration{0}) == "0s");
    CHECK(format_duration(Duration{1'500'000}) == "1500ms");
}

TEST_CASE("interval basics") {
    CHECK(iv(0, 10).length().us == 10);
    CHECK(iv(0, 10).contains(TimePoint{0}));
    CHECK(iv(0, 10).contains(TimePoint{9}));
    CHECK_FALSE(iv(0, 10).contains(TimePoint{10}));
    CHECK_FALSE(iv(5, 5).valid());
    CHECK_FALSE(iv(6, 5).valid());
}

TEST_CASE("union merges overlap and adjacency") {
    SUBCASE("overlapping pair") {
        const auto set = interval_union(std::vector<Interval>{iv(0, 10'000'000), iv(5'000'000, 15'000'000)});
        REQUIRE(set.size() == 1);
        CHECK(set.intervals()[0] == iv(0, 15'000'000));
        CHECK(set.total_measure().us == 15'000'000);
    }
    SUBCASE("adjacent pair merges") {
        const auto set = interval_union(std::vector<Interval>{iv(0, 5), iv(5, 10)});
        REQUIRE(set.size() == 1);
        CHECK(set.intervals()[0] == iv(0, 10));
    }
    SUBCASE("disjoint pair stays split") {
        const auto set = interval_union(std::vector<Interval>{iv(2, 3), iv(0, 1)});
        REQUIRE(set.size() == 2);
        CHECK(set.intervals()[0] == iv(0, 1));
        CHECK(set.intervals()[1] == iv(2, 3));
        CHECK(set.total_measure().us == 2);
    }
    SUBCASE("containment collapses") {
        const auto set = interval_union(std::vector<Interval>{iv(0, 100), iv(20, 30), iv(40, 90)});
        REQUIRE(set.size() == 1);
        CHECK(set.intervals()[0] == iv(0, 100));
    }
    SUBCASE("empty input") {
        const auto set = interval_union(std::vector<Interval>{});
        CHECK(set.empty());
        CHECK(set.total_measure().us == 0);
    }
    SUBCASE("invalid interval rejected with index") {
        const std::vector<Interval> bad{iv(0, 1), iv(7, 7)};
        CHECK_THROWS_WITH_AS(interval_union(bad), doctest::Contains("index 1"),
                             std::invalid_argument);
    }
}

TEST_CASE("complement inside a horizon") {
    const Interval horizon = iv(0, 10);
    const auto set = interval_union(std::vector<Interval>{iv(2, 4), iv(6, 8)});
    const auto gaps = complement(set, horizon);
    REQUIRE(gaps.size() == 3);
    CHECK(gaps.intervals()[0] == iv(0, 2));
    CHECK(gaps.intervals()[1] == iv(4, 6));
    CHECK(gaps.intervals()[2] == iv(8, 10));

    SUBCASE("empty set complements to the whole horizon") {
        const auto whole = complement(IntervalSet{}, horizon);
        REQUIRE(whole.size() == 1);
        CHECK(whole.intervals()[0] == horizon);
    }
    SUBCASE("full-cover set complements to nothing") {
        const auto none = complement(interval_union(std::vector<Interval>{horizon}), horizon);
        CHECK(none.empty());
    }
    SUBCASE("set outside horizon rejected") {
        CHECK_THROWS_AS(complement(set, iv(3, 5)), std::invalid_argument);
    }
    SUBCASE("degenerate horizon rejected") {
        CHECK_THROWS_AS(complement(set, iv(5, 5)), std::invalid_argument);
    }
}

TEST_CASE("union properties over random inputs") {
    Rng rng(0xfeedbeef);
    for (int round = 0; round < 300; ++round) {
        std::vector<Interval> input = random_intervals(rng, 40, 1'000'000);
        const IntervalSet once = interval_union(input);

        // Canonical form: sorted, disjoint, non-adjacent.
        for (std::size_t i = 0; i < once.size(); ++i) {
            CHECK(once.intervals()[i].valid());
            if (i > 0) CHECK(once.intervals()[i - 1].end < once.intervals()[i].start);
        }

        // Idempotent: union of the canonical members is itself.
        CHECK(interval_union(once.intervals()) == once);

        // Order-insensitive: shuffle via seeded swaps.
        std::vector<Interval> shuffled = input;
        for (std::size_t i = shuffled.size(); i > 1; --i) {
            std::swap(shuffled[i - 1], shuffled[rng.next_u64() % i]);
        }
        CHECK(interval_union(shuffled) == once);

        // Duplication-insensitive.
        std::vector<Interval> doubled = input;
        doubled.insert(doubled.end(), input.begin(), input.end());
        CHECK(interval_union(doubled) == once);

        // Measure bounded by the naive per-interval sum.
        std::int64_t naive_sum = 0;
        for (const Interval& item : input) naive_sum += item.length().us;
        CHECK(once.total_measure().us <= naive_sum);
    }
}

TEST_CASE("complement properties over random inputs") {
    Rng rng(0xabcdef01);
    const Interval horizon = iv(0, 1'000'000);
    for (int round = 0; round < 300; ++round) {
        const IntervalSet set = interval_union(random_intervals(rng, 40, 1'000'000));
        const IntervalSet gaps = complement(set, horizon);

        // Exact measure partition of the horizon.
        CHECK(set.total_measure().us + gaps.total_measure().us == horizon.length().us);

        // Involution.
        CHECK(complement(gaps, horizon) == set);

        // Disjointness of set and complement: merged union measure is the sum.
        std::vector<Interval> both(set.intervals());
        both.insert(both.end(), gaps.intervals().begin(), gaps.intervals().end());
        const IntervalSet merged = interval_union(both);
        CHECK(merged.total_measure().us == horizon.length().us);
        if (!set.empty() || !gaps.empty()) {
            REQUIRE(merged.size() == 1);
            CHECK(merged.intervals()[0] == horizon);
        }
    }
}
