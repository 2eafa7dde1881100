#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "latemetrics/errors.hpp"
#include "latemetrics/trace.hpp"

using namespace latemetrics;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("latemetrics_test_" + name);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

const std::string kCanonical =
    "#latemetrics-trace v1\n"
    "#horizon 0,10000000\n"
    "1,0,1000,1000,51000\n"
    "0,2,2000,2500,170000\n"
    "2,1,100000,100000,9000000\n"
    "#nodes\n"
    "0,3\n"
    "5000000,4\n";

Trace small_trace() {
    Trace t;
    t.horizon = Interval{TimePoint{0}, TimePoint{1'000'000}};
    t.tasks = {
        TaskRecord{0, 0, TimePoint{1000}, TimePoint{1000}, TimePoint{5000}},
        TaskRecord{1, 1, TimePoint{2000}, TimePoint{2000}, TimePoint{9000}},
    };
    t.node_pool_timeline = {NodeCountChange{TimePoint{0}, 2}};
    return t;
}

}  // namespace

TEST_CASE("canonical trace round-trips byte for byte") {
    const auto in_path = temp_file("roundtrip_in.lm");
    const auto out_path = temp_file("roundtrip_out.lm");
    write_text(in_path, kCanonical);

    const Trace trace = read_trace(in_path);
    REQUIRE(trace.tasks.size() == 3);
    CHECK(trace.horizon == Interval{TimePoint{0}, TimePoint{10'000'000}});
    // Already in finish order in the file: 51000 < 170000 < 9000000.
    CHECK(trace.tasks[0].task_id == 1);
    CHECK(trace.tasks[1].task_id == 0);
    CHECK(trace.tasks[1].node_id == 2);
    CHECK(trace.tasks[1].start_time.us == 2500);
    CHECK(trace.tasks[2].exec_time().us == 8'900'000);
    REQUIRE(trace.node_pool_timeline.size() == 2);
    CHECK(trace.node_pool_timeline[1] == NodeCountChange{TimePoint{5'000'000}, 4});

    write_trace(trace, out_path);
    CHECK(read_text(out_path) == kCanonical);

    std::filesystem::remove(in_path);
    std::filesystem::remove(out_path);
}

TEST_CASE("reader re-sorts tasks by finish time") {
    const auto path = temp_file("unsorted.lm");
    write_text(path,
               "#latemetrics-trace v1\n"
               "#horizon 0,1000000\n"
               "7,0,0,0,900000\n"
               "3,0,0,0,100000\n"
               "5,0,50,60,100000\n"
               "#nodes\n"
               "0,1\n");
    const Trace trace = read_trace(path);
    REQUIRE(trace.tasks.size() == 3);
    CHECK(trace.tasks[0].task_id == 3);  // finish tie at 100000: lower id first
    CHECK(trace.tasks[1].task_id == 5);
    CHECK(trace.tasks[2].task_id == 7);
    std::filesystem::remove(path);
}

TEST_CASE("reader rejects malformed input with the line number") {
    const auto path = temp_file("bad.lm");
    auto expect_failure = [&](const std::string& text, const std::string& needle) {
        write_text(path, text);
        CHECK_THROWS_WITH_AS(read_trace(path), doctest::Contains(needle.c_str()), TraceParseError);
    };

    expect_failure("#wrong header\n", "missing header");
    expect_failure("#latemetrics-trace v1\n0,0,0,0,1\n", "#horizon");
    expect_failure(
        "#latemetrics-trace v1\n#horizon 0,1000\n1,0,0,0\n#nodes\n0,1\n",
        "needs 5 fields");
    expect_failure(
        "#latemetrics-trace v1\n#horizon 0,1000\n1,0,abc,0,10\n#nodes\n0,1\n",
        "field 'submit_us'");
    expect_failure(
        "#latemetrics-trace v1\n#horizon 0,1000\n1,0,50,40,60\n#nodes\n0,1\n",
        "not ordered");
    expect_failure(
        "#latemetrics-trace v1\n#horizon 0,1000\n1,0,0,0,10\n",
        "missing '#nodes'");
    expect_failure(
        "#latemetrics-trace v1\n#horizon 0,1000\n1,0,0,0,2000\n#nodes\n0,1\n",
        "outside horizon");
    expect_failure(
        "#latemetrics-trace v1\n#horizon 0,1000\n1,0,0,0,10\n1,0,20,20,40\n#nodes\n0,1\n",
        "duplicate task_id");
    expect_failure(
        "#latemetrics-trace v1\n#horizon 1000,1000\n#nodes\n0,1\n",
        "horizon start must precede end");

    // The line number of the offending record is carried on the exception.
    write_text(path,
               "#latemetrics-trace v1\n"
               "#horizon 0,1000\n"
               "1,0,0,0,10\n"
               "2,0,x,0,10\n"
               "#nodes\n0,1\n");
    try {
        read_trace(path);
        FAIL("expected TraceParseError");
    } catch (const TraceParseError& e) {
        CHECK(e.line == 4);
    }
    std::filesystem::remove(path);
}

TEST_CASE("trace validation") {
    Trace t = small_trace();
    CHECK_NOTHROW(t.validate());

    SUBCASE("task outside horizon") {
        t.tasks[1].finish_time = TimePoint{2'000'000};
        t.tasks[1].start_time = TimePoint{2'000'000};
        CHECK_THROWS_WITH_AS(t.validate(), doctest::Contains("outside horizon"),
                             std::invalid_argument);
    }
    SUBCASE("unsorted tasks") {
        std::swap(t.tasks[0], t.tasks[1]);
        CHECK_THROWS_WITH_AS(t.validate(), doctest::Contains("not sorted"), std::invalid_argument);
    }
    SUBCASE("timeline must start at horizon start") {
        t.node_pool_timeline[0].time = TimePoint{5};
        CHECK_THROWS_AS(t.validate(), std::invalid_argument);
    }
    SUBCASE("timeline strictly increasing") {
        t.node_pool_timeline.push_back(NodeCountChange{TimePoint{0}, 3});
        CHECK_THROWS_WITH_AS(t.validate(), doctest::Contains("strictly increasing"),
                             std::invalid_argument);
    }
}

TEST_CASE("warmup trim") {
    Trace t;
    t.horizon = Interval{TimePoint{0}, TimePoint{10'000'000}};
    t.tasks = {
        TaskRecord{0, 0, TimePoint{500'000}, TimePoint{500'000}, TimePoint{600'000}},
        TaskRecord{1, 0, TimePoint{2'000'000}, TimePoint{2'000'000}, TimePoint{2'500'000}},
    };
    t.node_pool_timeline = {NodeCountChange{TimePoint{0}, 2},
                            NodeCountChange{TimePoint{900'000}, 3},
                            NodeCountChange{TimePoint{4'000'000}, 4}};

    const Trace trimmed = t.trimmed(Duration{1'000'000});
    CHECK(trimmed.horizon == Interval{TimePoint{1'000'000}, TimePoint{10'000'000}});
    REQUIRE(trimmed.tasks.size() == 1);
    CHECK(trimmed.tasks[0].task_id == 1);
    // Count in effect at the cut (3, set at 900ms) becomes the new base entry.
    REQUIRE(trimmed.node_pool_timeline.size() == 2);
    CHECK(trimmed.node_pool_timeline[0] == NodeCountChange{TimePoint{1'000'000}, 3});
    CHECK(trimmed.node_pool_timeline[1] == NodeCountChange{TimePoint{4'000'000}, 4});
    CHECK_NOTHROW(trimmed.validate());

    CHECK(t.trimmed(Duration{0}).horizon == t.horizon);
    CHECK_THROWS_AS(t.trimmed(Duration{10'000'000}), std::invalid_argument);
    CHECK_THROWS_AS(t.trimmed(Duration{-1}), std::invalid_argument);
}

TEST_CASE("node seconds integrates the timeline") {
    Trace t;
    t.horizon = Interval{TimePoint{0}, TimePoint{10'000'000}};
    t.node_pool_timeline = {NodeCountChange{TimePoint{0}, 2},
                            NodeCountChange{TimePoint{4'000'000}, 5}};
    // 4 s of 2 nodes + 6 s of 5 nodes.
    CHECK(t.node_seconds() == doctest::Approx(8.0 + 30.0).epsilon(1e-12));
}
