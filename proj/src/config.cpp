#include "latemetrics/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "latemetrics/errors.hpp"
#include "latemetrics/numtext.hpp"

namespace latemetrics {

namespace {

std::string trim(const std::string& s) {
    const std::size_t first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const std::size_t last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Raw parsed file: section -> key -> value, with consumption tracking so
// unknown keys surface as errors.
class KeyValues {
public:
    void insert(const std::string& section, const std::string& key, const std::string& value,
                std::size_t line_no) {
        const std::string full = section + "." + key;
        if (!values_.emplace(full, value).second) {
            throw ConfigError("duplicate key '" + full + "' (line " + std::to_string(line_no) + ")");
        }
    }

    // nullopt when absent; consumed keys are tracked.
    std::optional<std::string> take(const std::string& full_key) {
        auto it = values_.find(full_key);
        if (it == values_.end()) return std::nullopt;
        consumed_.insert(full_key);
        return it->second;
    }

    void require_all_consumed() const {
        for (const auto& [key, value] : values_) {
            if (!consumed_.contains(key)) throw ConfigError("unknown config key '" + key + "'");
        }
    }

private:
    std::map<std::string, std::string> values_;
    std::set<std::string> consumed_;
};

template <typename Parser>
auto parse_with(const std::string& key, const std::string& raw, Parser parser) {
    try {
        return parser(raw);
    } catch (const std::exception& e) {
        throw ConfigError("config key '" + key + "': " + e.what());
    }
}

}  // namespace

void RunConfig::validate() const {
    workload.validate();
    cluster.validate();
    scaler.validate();
    if (sla.threshold.us <= 0) throw ConfigError("sla threshold must be positive");
    if (warmup.us < 0) throw ConfigError("warmup must be non-negative");
    if (warmup.us >= workload.duration.us) throw ConfigError("warmup consumes the entire run");
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
    std::vector<std::pair<std::string, std::string>> out;
    auto put = [&](const std::string& key, const std::string& value) {
        out.emplace_back(key, value);
    };
    put("workload.duration", format_duration(workload.duration));
    put("workload.base_rate", format_double(workload.base_rate_per_s));
    put("workload.day_offset", format_duration(workload.day_offset));
    put("workload.demand_median", format_double(workload.demand.median_cpu_s));
    put("workload.demand_sigma", format_double(workload.demand.sigma_log));
    put("workload.demand_cap", format_double(workload.demand.cap_cpu_s));
    if (workload.surge) {
        put("workload.surge_start", format_duration(workload.surge->start));
        put("workload.surge_length", format_duration(workload.surge->length));
        put("workload.surge_factor", format_double(workload.surge->factor));
    }
    put("cluster.base_nodes", std::to_string(cluster.base_nodes));
    put("cluster.elastic_nodes", std::to_string(cluster.elastic_nodes_max));
    put("cluster.capacity", format_double(cluster.node_capacity));
    put("cluster.startup_delay", format_duration(cluster.startup_delay));
    put("cluster.sample_period", format_duration(cluster.sample_period));
    put("scaler.kind", scaler.kind == ScalerKind::Reactive ? "reactive" : "proactive");
    put("scaler.up_threshold", format_double(scaler.up_threshold));
    put("scaler.down_threshold", format_double(scaler.down_threshold));
    put("scaler.step", std::to_string(scaler.step));
    put("scaler.cooldown", format_duration(scaler.cooldown));
    if (scaler.kind == ScalerKind::Proactive) {
        const char* name = "linear_trend";
        switch (scaler.forecaster.kind) {
            case ForecasterKind::LastValue: name = "last_value"; break;
            case ForecasterKind::LinearTrend: name = "linear_trend"; break;
            case ForecasterKind::Ewma: name = "ewma"; break;
            case ForecasterKind::Overestimator: name = "overestimator"; break;
        }
        put("scaler.forecaster", name);
        put("scaler.history", std::to_string(scaler.history_len));
        put("scaler.lead_time", format_duration(scaler.lead_time));
        if (scaler.forecaster.kind == ForecasterKind::Ewma) {
            put("scaler.ewma_alpha", format_double(scaler.forecaster.ewma_alpha));
        }
        if (scaler.forecaster.kind == ForecasterKind::Overestimator) {
            put("scaler.bias", format_double(scaler.forecaster.bias));
        }
        put("scaler.forecast_for_down", scaler.forecast_for_down ? "true" : "false");
    }
    return out;
}

RunConfig parse_run_config(const std::string& text, const std::string& source_name) {
    KeyValues kv;
    {
        std::istringstream in(text);
        std::string line;
        std::size_t line_no = 0;
        std::string section;
        while (std::getline(in, line)) {
            ++line_no;
            const std::size_t hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']' || line.size() < 3) {
                    throw ConfigError(source_name + " line " + std::to_string(line_no) +
                                      ": malformed section header");
                }
                section = line.substr(1, line.size() - 2);
                if (section != "run" && section != "workload" && section != "cluster" &&
                    section != "scaler" && section != "sla") {
                    throw ConfigError(source_name + " line " + std::to_string(line_no) +
                                      ": unknown section [" + section + "]");
                }
                continue;
            }
            const std::size_t eq = line.find('=');
            if (eq == std::string::npos || section.empty()) {
                throw ConfigError(source_name + " line " + std::to_string(line_no) +
                                  ": expected 'key = value' inside a section");
            }
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty() || value.empty()) {
                throw ConfigError(source_name + " line " + std::to_string(line_no) +
                                  ": empty key or value");
            }
            kv.insert(section, key, value, line_no);
        }
    }

    auto parse_u64 = [](const std::string& raw) {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
        if (ec != std::errc() || ptr != raw.data() + raw.size()) {
            throw std::invalid_argument("not a valid unsigned integer: '" + raw + "'");
        }
        return v;
    };
    auto parse_u32 = [&](const std::string& raw) {
        const std::uint64_t v = parse_u64(raw);
        if (v > 0xffffffffULL) throw std::invalid_argument("value out of range: '" + raw + "'");
        return static_cast<std::uint32_t>(v);
    };
    auto parse_bool = [](const std::string& raw) {
        if (raw == "true") return true;
        if (raw == "false") return false;
        throw std::invalid_argument("expected true or false, got '" + raw + "'");
    };

    RunConfig cfg;

    auto take_u64 = [&](const std::string& key, std::uint64_t& out) {
        if (auto raw = kv.take(key)) out = parse_with(key, *raw, parse_u64);
    };
    auto take_u32 = [&](const std::string& key, std::uint32_t& out) {
        if (auto raw = kv.take(key)) out = parse_with(key, *raw, parse_u32);
    };
    auto take_double = [&](const std::string& key, double& out) {
        if (auto raw = kv.take(key)) {
            out = parse_with(key, *raw, [](const std::string& r) { return parse_double(r); });
        }
    };
    auto take_duration = [&](const std::string& key, Duration& out) {
        if (auto raw = kv.take(key)) {
            out = parse_with(key, *raw, [](const std::string& r) { return parse_duration(r); });
        }
    };
    auto take_bool = [&](const std::string& key, bool& out) {
        if (auto raw = kv.take(key)) out = parse_with(key, *raw, parse_bool);
    };

    take_u64("run.seed", cfg.seed);
    take_duration("run.warmup", cfg.warmup);

    {
        auto duration = kv.take("workload.duration");
        if (!duration) throw ConfigError("config key 'workload.duration' is required");
        cfg.workload.duration =
            parse_with("workload.duration", *duration,
                       [](const std::string& r) { return parse_duration(r); });
    }
    take_double("workload.base_rate", cfg.workload.base_rate_per_s);
    take_duration("workload.day_offset", cfg.workload.day_offset);
    if (auto profile = kv.take("workload.profile")) {
        if (*profile == "diurnal") cfg.workload.profile = default_diurnal_profile();
        else if (*profile == "constant") cfg.workload.profile = DiurnalProfile::constant(1.0);
        else throw ConfigError("config key 'workload.profile': expected diurnal or constant");
    }
    if (auto raw = kv.take("workload.demand_median")) {
        cfg.workload.demand.median_cpu_s =
            parse_with("workload.demand_median", *raw,
                       [](const std::string& r) { return parse_duration(r).seconds(); });
    }
    take_double("workload.demand_sigma", cfg.workload.demand.sigma_log);
    if (auto raw = kv.take("workload.demand_cap")) {
        cfg.workload.demand.cap_cpu_s =
            parse_with("workload.demand_cap", *raw,
                       [](const std::string& r) { return parse_duration(r).seconds(); });
    }
    {
        const auto start = kv.take("workload.surge_start");
        const auto length = kv.take("workload.surge_length");
        const auto factor = kv.take("workload.surge_factor");
        const int given = (start ? 1 : 0) + (length ? 1 : 0) + (factor ? 1 : 0);
        if (given != 0) {
            if (given != 3) {
                throw ConfigError(
                    "surge needs all of workload.surge_start, surge_length, surge_factor");
            }
            SurgeSpec surge;
            surge.start = parse_with("workload.surge_start", *start,
                                     [](const std::string& r) { return parse_duration(r); });
            surge.length = parse_with("workload.surge_length", *length,
                                      [](const std::string& r) { return parse_duration(r); });
            surge.factor = parse_with("workload.surge_factor", *factor,
                                      [](const std::string& r) { return parse_double(r); });
            cfg.workload.surge = surge;
        }
    }

    take_u32("cluster.base_nodes", cfg.cluster.base_nodes);
    take_u32("cluster.elastic_nodes", cfg.cluster.elastic_nodes_max);
    take_double("cluster.capacity", cfg.cluster.node_capacity);
    take_duration("cluster.startup_delay", cfg.cluster.startup_delay);
    take_duration("cluster.sample_period", cfg.cluster.sample_period);

    if (auto kind = kv.take("scaler.kind")) {
        if (*kind == "reactive") cfg.scaler.kind = ScalerKind::Reactive;
        else if (*kind == "proactive") cfg.scaler.kind = ScalerKind::Proactive;
        else throw ConfigError("config key 'scaler.kind': expected reactive or proactive");
    }
    take_double("scaler.up_threshold", cfg.scaler.up_threshold);
    take_double("scaler.down_threshold", cfg.scaler.down_threshold);
    take_u32("scaler.step", cfg.scaler.step);
    take_duration("scaler.cooldown", cfg.scaler.cooldown);
    if (auto forecaster = kv.take("scaler.forecaster")) {
        if (*forecaster == "last_value") cfg.scaler.forecaster.kind = ForecasterKind::LastValue;
        else if (*forecaster == "linear_trend") cfg.scaler.forecaster.kind = ForecasterKind::LinearTrend;
        else if (*forecaster == "ewma") cfg.scaler.forecaster.kind = ForecasterKind::Ewma;
        else if (*forecaster == "overestimator") {
            cfg.scaler.forecaster.kind = ForecasterKind::Overestimator;
        } else {
            throw ConfigError("config key 'scaler.forecaster': expected last_value, linear_trend, "
                              "ewma or overestimator");
        }
    }
    if (auto raw = kv.take("scaler.history")) {
        cfg.scaler.history_len = parse_with("scaler.history", *raw, parse_u64);
    }
    take_duration("scaler.lead_time", cfg.scaler.lead_time);
    take_double("scaler.ewma_alpha", cfg.scaler.forecaster.ewma_alpha);
    take_double("scaler.bias", cfg.scaler.forecaster.bias);
    take_bool("scaler.forecast_for_down", cfg.scaler.forecast_for_down);

    take_duration("sla.threshold", cfg.sla.threshold);
    if (auto rule = kv.take("sla.span_rule")) {
        if (*rule == "excess") cfg.sla.span_rule = SpanRule::ExcessSpan;
        else if (*rule == "full") cfg.sla.span_rule = SpanRule::FullTaskSpan;
        else throw ConfigError("config key 'sla.span_rule': expected excess or full");
    }
    if (auto mode = kv.take("sla.count_mode")) {
        if (*mode == "tasks") cfg.sla.count_mode = CountMode::Tasks;
        else if (*mode == "spans") cfg.sla.count_mode = CountMode::MergedSpans;
        else throw ConfigError("config key 'sla.count_mode': expected tasks or spans");
    }

    kv.require_all_consumed();
    try {
        cfg.validate();
    } catch (const std::exception& e) {
        throw ConfigError(source_name + ": " + e.what());
    }
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    RunConfig cfg = parse_run_config(buffer.str(), path.string());

    if (const char* env = std::getenv("LATEMETRICS_SEED")) {
        const std::string raw(env);
        std::uint64_t seed = 0;
        auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), seed);
        if (ec != std::errc() || ptr != raw.data() + raw.size() || raw.empty()) {
            throw ConfigError("LATEMETRICS_SEED is not a valid unsigned integer: '" + raw + "'");
        }
        cfg.seed = seed;
    }
    return cfg;
}

}  // namespace latemetrics
