#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "latemetrics/autoscaler.hpp"
#include "latemetrics/cluster.hpp"
#include "latemetrics/sla.hpp"
#include "latemetrics/time.hpp"
#include "latemetrics/workload.hpp"

namespace latemetrics {

// Everything a simulation run needs. One seed feeds all randomness;
// sub-streams are derived from it.
struct RunConfig {
    std::uint64_t seed = 1;
    Duration warmup;  // trimmed from the horizon before the embedded analysis
    WorkloadSpec workload;
    ClusterSpec cluster;
    ScalerPolicy scaler;
    SlaPolicy sla{Duration::micros(100'000)};

    void validate() const;

    // Flat echo of every effective setting, in fixed order, for the report's
    // [run] section.
    std::vector<std::pair<std::string, std::string>> echo() const;
};

// Flat key-value text with [run], [workload], [cluster], [scaler] and [sla]
// sections; '#' starts a comment. Durations take unit suffixes ("100ms",
// "6h"). Unknown sections or keys are rejected, as is any malformed value,
// with a message naming the key. The [workload] section must set `duration`;
// every other key has a default.
RunConfig parse_run_config(const std::string& text, const std::string& source_name);

// Loads and parses the file, then applies the LATEMETRICS_SEED environment
// override if set.
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace latemetrics
