#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latemetrics/conventional.hpp"
#include "latemetrics/sla.hpp"
#include "latemetrics/time.hpp"
#include "latemetrics/trace.hpp"

namespace latemetrics {

// Run provenance carried in the report's [run] section. `details` keeps its
// insertion order so the serialized form is stable.
struct RunInfo {
    std::string tool;  // "simulate" or "analyze"
    std::optional<std::uint64_t> seed;
    std::vector<std::pair<std::string, std::string>> details;
};

struct MetricsReport {
    ConventionalReport conventional;
    SlaReport sla;
    SlaPolicy policy;
    Duration warmup;
    double node_seconds = 0;
    double mean_nodes = 0;
    RunInfo run;
};

// Trims the warmup, then computes every metric over the remaining trace.
MetricsReport build_report(const Trace& trace, const SlaPolicy& policy, Duration warmup,
                           RunInfo run);

// Text layout: a header line, a human-readable comment block, then machine
// sections [conventional], [sla], [resources], [conventions], [run] with one
// key=value per line in fixed order. Doubles are shortest-round-trip, so the
// same metrics always serialize to the same bytes and parse back exactly.
// [run] comes last: everything above it is a pure function of the trace and
// the analysis conventions.
std::string serialize_report(const MetricsReport& report);

// A parsed report file: ordered sections of ordered key=value pairs.
class ParsedReport {
public:
    using Section = std::vector<std::pair<std::string, std::string>>;

    static ParsedReport from_text(const std::string& text);
    static ParsedReport from_file(const std::filesystem::path& path);

    const Section* section(const std::string& name) const;  // nullptr if absent
    // Throws std::invalid_argument naming section and key when missing.
    const std::string& value(const std::string& section, const std::string& key) const;
    double number(const std::string& section, const std::string& key) const;

    const std::vector<std::pair<std::string, Section>>& sections() const { return sections_; }

private:
    std::vector<std::pair<std::string, Section>> sections_;
};

// Side-by-side table of two reports with absolute and relative deltas,
// treating `a` as the baseline. Throws ConventionMismatchError with a
// per-key diff when the [conventions] sections differ (metrics computed
// under different rules do not compare).
std::string compare_reports(const ParsedReport& a, const ParsedReport& b);

}  // namespace latemetrics
