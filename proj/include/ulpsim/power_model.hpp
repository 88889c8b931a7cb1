#pragma once

/// @file power_model.hpp
/// @brief Per-component power at the typical corner: a leakage intercept
/// plus a dynamic slope in uW/MHz, evaluated at the component's clock.

#include <set>
#include <string>
#include <vector>

#include "ulpsim/core.hpp"

namespace ulpsim {

struct PowerParams {
    std::string component;
    Domain domain = Domain::HostDomain;
    double leakage_mw = 0.0;
    double dynamic_uw_per_mhz = 0.0;
    double max_freq_mhz = 0.0;

    friend bool operator==(const PowerParams&, const PowerParams&) = default;
};

/// Typical corner, 25 C, 0.8 V.
[[nodiscard]] inline std::vector<PowerParams> default_power_table() {
    return {
        {"top", Domain::HostDomain, 4.23, 214.7, 450.0},
        {"cva6", Domain::HostCore, 4.79, 47.5, 900.0},
        {"pmca", Domain::Cluster, 5.78, 206.0, 400.0},
        {"mem-ctrl", Domain::HostDomain, 0.14, 2.3, 450.0},
    };
}

inline void validate(const PowerParams& p, const std::string& path) {
    if (p.component.empty()) throw ConfigError(path + ".component", "must not be empty");
    if (p.leakage_mw < 0.0) throw ConfigError(path + ".leakage_mw", "must be >= 0");
    if (p.dynamic_uw_per_mhz < 0.0) throw ConfigError(path + ".dynamic_uw_per_mhz", "must be >= 0");
    if (p.max_freq_mhz < 0.0) throw ConfigError(path + ".max_freq_mhz", "must be >= 0");
}

[[nodiscard]] inline double component_power_mw(const PowerParams& p, double freq_mhz) {
    if (freq_mhz < 0.0) throw std::invalid_argument("component_power_mw: negative frequency");
    if (freq_mhz > p.max_freq_mhz * (1.0 + 1e-12))
        throw std::out_of_range("component_power_mw: " + p.component + " above its maximum frequency");
    return p.leakage_mw + p.dynamic_uw_per_mhz * freq_mhz / 1000.0;
}

[[nodiscard]] inline double total_leakage_mw(const std::vector<PowerParams>& table) {
    double s = 0.0;
    for (const auto& p : table) s += p.leakage_mw;
    return s;
}

/// Sum over components: active ones at their domain clock, inactive ones at
/// leakage only, plus `device_mw` for the external memory.
[[nodiscard]] inline double soc_power_mw(const std::vector<PowerParams>& table, const Clocks& clocks,
                                         const std::set<std::string>& active, double device_mw = 0.0) {
    double s = device_mw;
    for (const auto& p : table) s += active.contains(p.component) ? component_power_mw(p, clocks[p.domain].freq_mhz) : p.leakage_mw;
    return s;
}

[[nodiscard]] inline std::set<std::string> all_components(const std::vector<PowerParams>& table) {
    std::set<std::string> s;
    for (const auto& p : table) s.insert(p.component);
    return s;
}

}  // namespace ulpsim
