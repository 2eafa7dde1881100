#include "latemetrics/trace.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>

#include "latemetrics/errors.hpp"

namespace latemetrics {

namespace {

constexpr std::string_view kHeader = "#latemetrics-trace v1";
constexpr std::string_view kHorizonTag = "#horizon ";
constexpr std::string_view kNodesTag = "#nodes";

// Splits a comma-separated record and parses each field as an integer.
// `names` supplies the field name used in error messages.
template <typename Int>
Int parse_int_field(std::string_view text, std::size_t line_no, std::string_view field) {
    Int value{};
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || text.empty()) {
        throw TraceParseError(line_no, "field '" + std::string(field) + "' is not a valid integer: '" +
                                           std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t begin = 0;
    while (true) {
        const std::size_t comma = line.find(',', begin);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(begin));
            return out;
        }
        out.push_back(line.substr(begin, comma - begin));
        begin = comma + 1;
    }
}

}  // namespace

void Trace::validate() const {
    if (!horizon.valid()) throw std::invalid_argument("trace horizon invalid (start >= end)");

    std::unordered_set<std::uint64_t> seen_ids;
    seen_ids.reserve(tasks.size());
    const TaskRecord* prev = nullptr;
    for (const TaskRecord& t : tasks) {
        if (!seen_ids.insert(t.task_id).second) {
            throw std::invalid_argument("duplicate task_id " + std::to_string(t.task_id));
        }
        if (t.submit_time.us < 0) {
            throw std::invalid_argument("task " + std::to_string(t.task_id) + ": negative submit time");
        }
        if (t.submit_time > t.start_time || t.start_time > t.finish_time) {
            throw std::invalid_argument("task " + std::to_string(t.task_id) +
                                        ": times not ordered submit <= start <= finish");
        }
        if (t.submit_time < horizon.start || t.finish_time > horizon.end) {
            throw std::invalid_argument("task " + std::to_string(t.task_id) + ": outside horizon");
        }
        if (prev != nullptr && (t.finish_time < prev->finish_time ||
                                (t.finish_time == prev->finish_time && t.task_id < prev->task_id))) {
            throw std::invalid_argument("tasks not sorted by finish_time at task " +
                                        std::to_string(t.task_id));
        }
        prev = &t;
    }

    if (node_pool_timeline.empty()) throw std::invalid_argument("node pool timeline empty");
    if (node_pool_timeline.front().time != horizon.start) {
        throw std::invalid_argument("node pool timeline must start at the horizon start");
    }
    for (std::size_t i = 0; i < node_pool_timeline.size(); ++i) {
        const NodeCountChange& c = node_pool_timeline[i];
        if (c.count == 0) throw std::invalid_argument("node pool timeline: zero node count");
        if (c.time >= horizon.end && i > 0) {
            throw std::invalid_argument("node pool timeline extends beyond horizon");
        }
        if (i > 0 && c.time <= node_pool_timeline[i - 1].time) {
            throw std::invalid_argument("node pool timeline not strictly increasing in time");
        }
    }
}

Trace Trace::trimmed(Duration warmup) const {
    if (warmup.us < 0) throw std::invalid_argument("warmup must be non-negative");
    if (warmup.us == 0) return *this;
    const TimePoint new_start = horizon.start + warmup;
    if (new_start >= horizon.end) throw std::invalid_argument("warmup consumes the entire horizon");

    Trace out;
    out.horizon = Interval{new_start, horizon.end};
    out.tasks.reserve(tasks.size());
    for (const TaskRecord& t : tasks) {
        if (t.submit_time >= new_start) out.tasks.push_back(t);
    }

    std::uint32_t count_at_start = node_pool_timeline.front().count;
    for (const NodeCountChange& c : node_pool_timeline) {
        if (c.time <= new_start) {
            count_at_start = c.count;
        } else {
            out.node_pool_timeline.push_back(c);
        }
    }
    out.node_pool_timeline.insert(out.node_pool_timeline.begin(),
                                  NodeCountChange{new_start, count_at_start});
    return out;
}

double Trace::node_seconds() const {
    double total = 0;
    for (std::size_t i = 0; i < node_pool_timeline.size(); ++i) {
        const TimePoint seg_start = node_pool_timeline[i].time;
        const TimePoint seg_end =
            (i + 1 < node_pool_timeline.size()) ? node_pool_timeline[i + 1].time : horizon.end;
        total += (seg_end - seg_start).seconds() * node_pool_timeline[i].count;
    }
    return total;
}

Trace read_trace(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trace file: " + path.string());

    Trace trace;
    std::string line;
    std::size_t line_no = 0;

    auto next_line = [&]() -> bool {
        if (!std::getline(in, line)) return false;
        ++line_no;
        return true;
    };

    if (!next_line() || line != kHeader) {
        throw TraceParseError(1, "missing header '" + std::string(kHeader) + "'");
    }
    if (!next_line() || !line.starts_with(kHorizonTag)) {
        throw TraceParseError(line_no == 1 ? 2 : line_no, "missing '#horizon <start_us>,<end_us>' line");
    }
    {
        const auto fields = split_fields(std::string_view(line).substr(kHorizonTag.size()));
        if (fields.size() != 2) throw TraceParseError(line_no, "horizon needs exactly 2 fields");
        trace.horizon.start = TimePoint{parse_int_field<std::int64_t>(fields[0], line_no, "horizon_start_us")};
        trace.horizon.end = TimePoint{parse_int_field<std::int64_t>(fields[1], line_no, "horizon_end_us")};
        if (!trace.horizon.valid()) throw TraceParseError(line_no, "horizon start must precede end");
    }

    bool in_nodes = false;
    while (next_line()) {
        if (line == kNodesTag) {
            in_nodes = true;
            continue;
        }
        const auto fields = split_fields(line);
        if (!in_nodes) {
            if (fields.size() != 5) {
                throw TraceParseError(line_no, "task record needs 5 fields "
                                               "(task_id,node_id,submit_us,start_us,finish_us)");
            }
            TaskRecord t;
            t.task_id = parse_int_field<std::uint64_t>(fields[0], line_no, "task_id");
            t.node_id = parse_int_field<std::uint32_t>(fields[1], line_no, "node_id");
            t.submit_time = TimePoint{parse_int_field<std::int64_t>(fields[2], line_no, "submit_us")};
            t.start_time = TimePoint{parse_int_field<std::int64_t>(fields[3], line_no, "start_us")};
            t.finish_time = TimePoint{parse_int_field<std::int64_t>(fields[4], line_no, "finish_us")};
            if (t.submit_time > t.start_time || t.start_time > t.finish_time) {
                throw TraceParseError(line_no, "task times not ordered submit <= start <= finish");
            }
            trace.tasks.push_back(t);
        } else {
            if (fields.size() != 2) {
                throw TraceParseError(line_no, "node count record needs 2 fields (time_us,count)");
            }
            NodeCountChange c;
            c.time = TimePoint{parse_int_field<std::int64_t>(fields[0], line_no, "time_us")};
            c.count = parse_int_field<std::uint32_t>(fields[1], line_no, "count");
            trace.node_pool_timeline.push_back(c);
        }
    }
    if (!in_nodes) throw TraceParseError(line_no, "missing '#nodes' section");

    std::sort(trace.tasks.begin(), trace.tasks.end(),
              [](const TaskRecord& a, const TaskRecord& b) {
                  if (a.finish_time != b.finish_time) return a.finish_time < b.finish_time;
                  return a.task_id < b.task_id;
              });
    try {
        trace.validate();
    } catch (const std::invalid_argument& e) {
        throw TraceParseError(line_no, std::string("trace invalid: ") + e.what());
    }
    return trace;
}

void write_trace(const Trace& trace, const std::filesystem::path& path) {
    trace.validate();
    std::ofstream out(path, std::ios::binary);  // binary: no newline translation
    if (!out) throw std::runtime_error("cannot open trace file for writing: " + path.string());

    out << kHeader << '\n';
    out << kHorizonTag << trace.horizon.start.us << ',' << trace.horizon.end.us << '\n';
    for (const TaskRecord& t : trace.tasks) {
        out << t.task_id << ',' << t.node_id << ',' << t.submit_time.us << ',' << t.start_time.us
            << ',' << t.finish_time.us << '\n';
    }
    out << kNodesTag << '\n';
    for (const NodeCountChange& c : trace.node_pool_timeline) {
        out << c.time.us << ',' << c.count << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace latemetrics
