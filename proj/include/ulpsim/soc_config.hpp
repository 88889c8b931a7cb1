#pragma once

/// @file soc_config.hpp
/// @brief The complete, validated simulation configuration and the shipped
/// defaults (clock domains, address map, caches, memory backends, power
/// table, accelerator calibration).

#include <set>
#include <string>
#include <vector>

#include "ulpsim/address_map.hpp"
#include "ulpsim/core.hpp"
#include "ulpsim/host_model.hpp"
#include "ulpsim/llc.hpp"
#include "ulpsim/mem_backends.hpp"
#include "ulpsim/pmca_model.hpp"
#include "ulpsim/power_model.hpp"

namespace ulpsim {

[[nodiscard]] inline Clocks default_clocks() {
    Clocks c;
    c[Domain::HostCore] = {900.0, 900.0};
    // 400 MHz keeps the HyperBUS (200 MHz max) at exactly half the SoC clock.
    c[Domain::HostDomain] = {400.0, 450.0};
    c[Domain::Peripheral] = {400.0, 450.0};
    c[Domain::Cluster] = {400.0, 400.0};
    return c;
}

/// Per-benchmark throughputs. The int8 matmul host figure puts the host core
/// at 4.9 GOps/W at 900 MHz; its cluster figure gives 13.8 GOps at 400 MHz.
[[nodiscard]] inline CalibrationTable default_calibration() {
    CalibrationTable t;
    t.offload_fixed_cycles = 5000;
    constexpr std::uint64_t code = 192 * KiB;
    t.entries = {
        {"matmul-int8", {4.9 * 47.54 / 900.0, 34.5, code}},
        {"matmul-fp16", {0.5, 7.2, code}},
        {"fir-fp32", {0.55, 3.0, code}},
        {"dnn-classifier-int8", {0.25, 22.0, code}},
        {"dnn-navigation-int8", {0.25, 20.0, code}},
    };
    return t;
}

/// Workload shapes of the shipped kernel catalog.
[[nodiscard]] inline std::vector<KernelShape> default_kernel_shapes() {
    return {
        // 128x128x128, int8 operands, int32 results.
        {"matmul-int8", 2ull * 128 * 128 * 128, 2 * 128 * 128, 128 * 128 * 4, 24 * KiB, 1},
        // 64x64x64, fp16 operands and results.
        {"matmul-fp16", 2ull * 64 * 64 * 64, 2 * 64 * 64 * 2, 64 * 64 * 2, 8 * KiB, 1},
        // 64-tap FIR over 8192 fp32 samples.
        {"fir-fp32", 2ull * 64 * 8192, 8192 * 4 + 64 * 4, 8192 * 4, 8 * KiB, 1},
        {"dnn-classifier-int8", 40'000'000, 600'000, 100'000, 32 * KiB, 1},
        {"dnn-navigation-int8", 25'000'000, 350'000, 60'000, 32 * KiB, 1},
    };
}

struct SocConfig {
    Clocks clocks = default_clocks();
    AddressMap address_map{};
    L1Config l1{};
    LlcConfig llc{};
    HyperConfig hyper{};
    DdrConfig ddr{};
    std::vector<PowerParams> power = default_power_table();
    CalibrationTable calibration = default_calibration();

    [[nodiscard]] const PowerParams* find_power(std::string_view component) const noexcept {
        for (const auto& p : power)
            if (p.component == component) return &p;
        return nullptr;
    }

    friend bool operator==(const SocConfig&, const SocConfig&) = default;
};

[[nodiscard]] inline SocConfig default_config() { return SocConfig{}; }

/// Total check of every invariant; throws ConfigError naming the field.
inline void validate(const SocConfig& cfg) {
    validate(cfg.clocks);
    validate(cfg.l1);
    validate(cfg.llc);
    validate(cfg.hyper);
    validate(cfg.ddr);
    // After the components, so a bad HyperRAM field is reported as itself
    // rather than through the DRAM size derived from it.
    validate(cfg.address_map);
    if (cfg.address_map.dram.size != cfg.hyper.total_bytes())
        throw ConfigError("address_map.dram.size", "must equal the HyperRAM capacity n_cs * n_buses * mem_bytes_per_cs (" +
                                                       std::to_string(cfg.hyper.total_bytes()) + ")");
    if (cfg.power.empty()) throw ConfigError("power", "must list at least one component");
    std::set<std::string> names;
    for (std::size_t i = 0; i < cfg.power.size(); ++i) {
        const auto& p = cfg.power[i];
        const std::string path = "power[" + std::to_string(i) + "]";
        validate(p, path);
        if (!names.insert(p.component).second) throw ConfigError(path + ".component", "duplicate component '" + p.component + "'");
        if (cfg.clocks[p.domain].freq_mhz > p.max_freq_mhz)
            throw ConfigError(path + ".max_freq_mhz", "below the configured " + std::string(to_string(p.domain)) + " clock");
    }
    for (const auto& [name, e] : cfg.calibration.entries) {
        const std::string path = "calibration.kernels." + name;
        if (!(e.host_ops_per_cycle > 0.0)) throw ConfigError(path + ".host_ops_per_cycle", "must be > 0");
        if (!(e.pmca_ops_per_cycle > 0.0)) throw ConfigError(path + ".pmca_ops_per_cycle", "must be > 0");
        if (e.code_size_bytes > cfg.address_map.l2spm.size)
            throw ConfigError(path + ".code_size_bytes", "does not fit in the L2 scratchpad");
    }
    if (!cfg.calibration.entries.contains("matmul-int8"))
        throw ConfigError("calibration.kernels", "must contain the matmul-int8 entry");
}

/// Power of the LPDDR4 subsystem. Unless configured, it is set so that an
/// all-active LPDDR system draws exactly twice the all-active HyperRAM system.
[[nodiscard]] inline double lpddr_subsystem_power_mw(const SocConfig& cfg) {
    if (cfg.ddr.subsystem_power_mw) return *cfg.ddr.subsystem_power_mw;
    const double hyper_system = soc_power_mw(cfg.power, cfg.clocks, all_components(cfg.power), cfg.hyper.device_power_mw);
    return hyper_system + cfg.hyper.device_power_mw;
}

[[nodiscard]] inline HyperRamBackend make_hyper_backend(const SocConfig& cfg) {
    return {cfg.hyper, cfg.address_map.dram.base, cfg.clocks.soc_mhz()};
}

[[nodiscard]] inline DdrBackend make_ddr_backend(const SocConfig& cfg) { return DdrBackend{cfg.ddr}; }

[[nodiscard]] inline AnyBackend make_backend(const SocConfig& cfg, BackendKind kind) {
    if (kind == BackendKind::Lpddr) return make_ddr_backend(cfg);
    return make_hyper_backend(cfg);
}

[[nodiscard]] inline std::vector<KernelDescriptor> resolve_all(const std::vector<KernelShape>& shapes,
                                                               const CalibrationTable& cal) {
    std::vector<KernelDescriptor> out;
    out.reserve(shapes.size());
    for (const auto& s : shapes) out.push_back(resolve(s, cal));
    return out;
}

}  // namespace ulpsim
