#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "latemetrics/conventional.hpp"
#include "latemetrics/errors.hpp"
#include "latemetrics/rng.hpp"
#include "oracles.hpp"

using namespace latemetrics;

namespace {

std::vector<double> iota_sample(std::size_t n) {
    std::vector<double> v(n);
    std::iota(v.begin(), v.end(), 1.0);
    return v;
}

std::vector<double> random_sample(Rng& rng, std::size_t n) {
    std::vector<double> v(n);
    for (double& x : v) x = rng.lognormal(std::log(0.1), 1.2);
    return v;
}

}  // namespace

TEST_CASE("mean, median, max on small fixtures") {
    const std::vector<double> odd{3.0, 1.0, 2.0};
    const std::vector<double> even{4.0, 1.0, 3.0, 2.0};
    CHECK(mean(odd) == 2.0);
    CHECK(median(odd) == 2.0);
    CHECK(median(even) == 2.5);  // average of the two middle values
    CHECK(median(std::vector<double>{7.0}) == 7.0);
    CHECK(max_value(even) == 4.0);
}

TEST_CASE("stddev uses population moments") {
    const std::vector<double> s{2, 4, 4, 4, 5, 5, 7, 9};
    // Sum of squared deviations is 32, n = 8: population variance 4.
    // The sample-variance convention (divide by n-1) would give ~2.138.
    CHECK(stddev(s) == 2.0);
    CHECK(stddev(std::vector<double>{5.0, 5.0}) == 0.0);
}

TEST_CASE("skewness fixture and symmetry") {
    // n=4, mean 3.25, m3/m2^1.5 = 2/sqrt(3).
    const std::vector<double> s{1.0, 1.0, 1.0, 10.0};
    CHECK(skewness(s) == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(skewness(std::vector<double>{1.0, 2.0, 3.0}) == doctest::Approx(0.0).epsilon(1e-12));
    // Mirroring the sample flips the sign.
    CHECK(skewness(std::vector<double>{-1.0, -1.0, -1.0, -10.0}) ==
          doctest::Approx(-2.0 / std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("kurtosis is raw, not excess") {
    // Two-point symmetric mass: m4 = m2^2, so raw kurtosis is exactly 1
    // (excess would be -2).
    CHECK(kurtosis(std::vector<double>{-1.0, -1.0, 1.0, 1.0}) == 1.0);
    // One far outlier in ten points: 73/9, well above the normal value 3.
    std::vector<double> heavy(9, 1.0);
    heavy.push_back(10.0);
    CHECK(kurtosis(heavy) == doctest::Approx(73.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("shape metrics reject samples they are undefined on") {
    CHECK_THROWS_AS(skewness(std::vector<double>{1.0, 2.0}), DegenerateSampleError);
    CHECK_THROWS_AS(skewness(std::vector<double>{5.0, 5.0, 5.0}), DegenerateSampleError);
    CHECK_THROWS_AS(kurtosis(std::vector<double>{1.0, 2.0, 3.0}), DegenerateSampleError);
    CHECK_THROWS_AS(kurtosis(std::vector<double>{5.0, 5.0, 5.0, 5.0}), DegenerateSampleError);

    const std::vector<double> empty;
    CHECK_THROWS_AS(mean(empty), EmptySampleError);
    CHECK_THROWS_AS(median(empty), EmptySampleError);
    CHECK_THROWS_AS(stddev(empty), EmptySampleError);
    CHECK_THROWS_AS(max_value(empty), EmptySampleError);
    CHECK_THROWS_AS(skewness(empty), EmptySampleError);
    CHECK_THROWS_AS(kurtosis(empty), EmptySampleError);
    CHECK_THROWS_AS(tail_latency_p98(empty), EmptySampleError);
}

TEST_CASE("p98 nearest rank on exact sample sizes") {
    CHECK(tail_latency_p98(iota_sample(100)) == 98.0);
    CHECK(tail_latency_p98(iota_sample(200)) == 196.0);
    // ceil(0.98 * 50) = 49: the second-largest value, not the max. A
    // float-rounded rank computation lands on 50 here.
    CHECK(tail_latency_p98(iota_sample(50)) == 49.0);
    CHECK(tail_latency_p98(iota_sample(49)) == 49.0);
    CHECK(tail_latency_p98(iota_sample(1)) == 1.0);
    CHECK(tail_latency_p98(std::vector<double>{10.0, 20.0}) == 20.0);
}

TEST_CASE("p98 equals max for samples up to 49 points") {
    Rng rng(20260815);
    for (std::size_t n = 1; n <= 49; ++n) {
        const auto s = random_sample(rng, n);
        CAPTURE(n);
        CHECK(tail_latency_p98(s) == max_value(s));
    }
}

TEST_CASE("affine transform behaviour") {
    Rng rng(42);
    for (int round = 0; round < 50; ++round) {
        const std::size_t n = 4 + static_cast<std::size_t>(rng.uniform01() * 60);
        const auto s = random_sample(rng, n);
        const double a = 0.5 + rng.uniform01() * 4.0;
        const double b = rng.uniform01() * 10.0 - 5.0;
        std::vector<double> t(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) t[i] = a * s[i] + b;

        CAPTURE(round);
        CHECK(mean(t) == doctest::Approx(a * mean(s) + b).epsilon(1e-9));
        CHECK(median(t) == doctest::Approx(a * median(s) + b).epsilon(1e-9));
        CHECK(stddev(t) == doctest::Approx(a * stddev(s)).epsilon(1e-9));
        CHECK(max_value(t) == doctest::Approx(a * max_value(s) + b).epsilon(1e-9));
        CHECK(tail_latency_p98(t) == doctest::Approx(a * tail_latency_p98(s) + b).epsilon(1e-9));
        if (stddev(s) > 0) {
            // Positive scale and shift leave the standardized shape alone.
            CHECK(skewness(t) == doctest::Approx(skewness(s)).epsilon(1e-7));
            CHECK(kurtosis(t) == doctest::Approx(kurtosis(s)).epsilon(1e-7));
        }
    }
}

TEST_CASE("agreement with independent reference implementations") {
    Rng rng(777);
    for (int round = 0; round < 200; ++round) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform01() * 300);
        const auto s = random_sample(rng, n);
        CAPTURE(round);
        CAPTURE(n);
        CHECK(mean(s) == doctest::Approx(oracle::naive_mean(s)).epsilon(1e-9));
        CHECK(median(s) == doctest::Approx(oracle::naive_median(s)).epsilon(1e-12));
        CHECK(stddev(s) ==
              doctest::Approx(std::sqrt(std::max(0.0, oracle::naive_variance(s)))).epsilon(1e-7));
        CHECK(tail_latency_p98(s) == oracle::naive_p98(s));  // both pick an order statistic
        if (n >= 3) {
            CHECK(skewness(s) == doctest::Approx(oracle::naive_skewness(s)).epsilon(1e-9));
        }
        if (n >= 4) {
            CHECK(kurtosis(s) == doctest::Approx(oracle::naive_kurtosis(s)).epsilon(1e-9));
        }
    }
}

TEST_CASE("report over a trace") {
    Rng rng(99);
    const Trace trace = oracle::random_trace(rng);
    std::vector<double> exec_s;
    for (const TaskRecord& t : trace.tasks) exec_s.push_back(t.exec_time().seconds());

    const ConventionalReport report = conventional_report(trace);
    CHECK(report.sample_count == trace.tasks.size());
    CHECK(report.mean_s == mean(exec_s));
    CHECK(report.median_s == median(exec_s));
    CHECK(report.stddev_s == stddev(exec_s));
    CHECK(report.max_s == max_value(exec_s));
    CHECK(report.tail_p98_s == tail_latency_p98(exec_s));
    if (exec_s.size() >= 4 && stddev(exec_s) > 0) {
        REQUIRE(report.skewness.has_value());
        REQUIRE(report.kurtosis.has_value());
        CHECK(*report.skewness == skewness(exec_s));
        CHECK(*report.kurtosis == kurtosis(exec_s));
        CHECK(report.skewness_note.empty());
        CHECK(report.kurtosis_note.empty());
    }
}

TEST_CASE("report degrades shape metrics instead of failing") {
    Trace trace;
    trace.horizon = Interval{TimePoint{0}, TimePoint{1'000'000}};
    trace.node_pool_timeline = {NodeCountChange{TimePoint{0}, 1}};

    SUBCASE("too few points") {
        trace.tasks = {
            TaskRecord{0, 0, TimePoint{0}, TimePoint{0}, TimePoint{1000}},
            TaskRecord{1, 0, TimePoint{0}, TimePoint{0}, TimePoint{2000}},
        };
        const ConventionalReport report = conventional_report(trace);
        CHECK(report.sample_count == 2);
        CHECK_FALSE(report.skewness.has_value());
        CHECK_FALSE(report.kurtosis.has_value());
        CHECK(report.skewness_note == "skewness needs at least 3 points");
        CHECK(report.kurtosis_note == "kurtosis needs at least 4 points");
    }
    SUBCASE("zero spread") {
        for (std::uint64_t i = 0; i < 5; ++i) {
            trace.tasks.push_back(TaskRecord{i, 0, TimePoint{static_cast<std::int64_t>(i * 10'000)},
                                             TimePoint{static_cast<std::int64_t>(i * 10'000)},
                                             TimePoint{static_cast<std::int64_t>(i * 10'000 + 500)}});
        }
        const ConventionalReport report = conventional_report(trace);
        CHECK(report.stddev_s == 0.0);
        CHECK_FALSE(report.skewness.has_value());
        CHECK_FALSE(report.kurtosis.has_value());
        CHECK(report.skewness_note == "skewness undefined for zero spread");
        CHECK(report.kurtosis_note == "kurtosis undefined for zero spread");
    }
    SUBCASE("empty trace") {
        CHECK_THROWS_AS(conventional_report(trace), EmptySampleError);
    }
}
