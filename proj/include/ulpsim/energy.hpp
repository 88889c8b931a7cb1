#pragma once

/// @file energy.hpp
/// @brief System power, the computation-to-communication ratio (CCR) and the
/// HyperRAM vs LPDDR4 energy-efficiency comparison.
///
/// Compute and transfer are assumed to overlap fully, so a kernel runs in
/// max(t_compute, t_mem). A kernel with CCR >= 1 on HyperRAM is compute-bound
/// there and, a fortiori, on the faster LPDDR4 backend.

#include <limits>
#include <set>
#include <string>

#include "ulpsim/mem_backends.hpp"
#include "ulpsim/pmca_model.hpp"
#include "ulpsim/soc_config.hpp"

namespace ulpsim {

[[nodiscard]] inline double backend_device_power_mw(const SocConfig& cfg, BackendKind kind) {
    switch (kind) {
        case BackendKind::None: return 0.0;
        case BackendKind::HyperRam: return cfg.hyper.device_power_mw;
        case BackendKind::Lpddr: return lpddr_subsystem_power_mw(cfg);
    }
    return 0.0;
}

[[nodiscard]] inline double system_power_mw(const SocConfig& cfg, const std::set<std::string>& active,
                                            const Clocks& clocks, BackendKind backend) {
    return soc_power_mw(cfg.power, clocks, active, backend_device_power_mw(cfg, backend));
}

/// Power, runtime and efficiency of one kernel on one backend.
struct BackendRun {
    double t_mem_s = 0.0;
    double exec_s = 0.0;
    double power_mw = 0.0;
    double energy_j = 0.0;
    double gops = 0.0;
    double gops_per_w = 0.0;
};

struct KernelAnalysis {
    double ccr_hyper = 0.0;
    double t_compute_s = 0.0;
    double t_mem_s = 0.0;  ///< on HyperRAM
    /// No main-memory traffic at all: CCR is undefined and reported as +inf.
    bool zero_traffic = false;
    BackendRun hyper;
    BackendRun lpddr;
    double gops = 0.0;        ///< on HyperRAM
    double gops_per_w = 0.0;  ///< on HyperRAM
    double relative_efficiency = 0.0;

    [[nodiscard]] bool compute_bound() const noexcept { return ccr_hyper >= 1.0; }
    [[nodiscard]] double exec_s() const noexcept { return std::max(t_compute_s, t_mem_s); }
};

[[nodiscard]] inline double compute_time_s(const KernelDescriptor& k, const Clocks& clocks) {
    return static_cast<double>(k.total_ops) / k.pmca_ops_per_cycle / (clocks.cluster_mhz() * 1e6);
}

/// Seconds to move one invocation's traffic in tile-sized DMA bursts.
template <MemoryBackend B>
[[nodiscard]] double transfer_time_s(const KernelDescriptor& k, const B& backend, const Clocks& clocks,
                                     bool reads_only = false, Addr dram_base = 0x8000'0000) {
    const auto plan = dma_plan(k, DmaLayout::packed(k, dram_base), reads_only);
    return static_cast<double>(soc_cycles_of(plan, backend)) / (clocks.soc_mhz() * 1e6);
}

/// Times and CCR on the HyperRAM backend. `reads_only` counts only input
/// traffic as communication.
template <MemoryBackend B>
[[nodiscard]] KernelAnalysis ccr(const KernelDescriptor& k, const B& hyper_backend, const Clocks& clocks,
                                 bool reads_only = false, Addr dram_base = 0x8000'0000) {
    KernelAnalysis a;
    a.t_compute_s = compute_time_s(k, clocks);
    a.t_mem_s = transfer_time_s(k, hyper_backend, clocks, reads_only, dram_base);
    a.zero_traffic = a.t_mem_s == 0.0;
    a.ccr_hyper = a.zero_traffic ? std::numeric_limits<double>::infinity() : a.t_compute_s / a.t_mem_s;
    return a;
}

/// Runs the kernel on both backends with every component active at its
/// configured clock; relative_efficiency = GOps/W(HyperRAM) / GOps/W(LPDDR4).
template <MemoryBackend H, MemoryBackend L>
[[nodiscard]] KernelAnalysis relative_efficiency(const SocConfig& cfg, const KernelDescriptor& k, const H& hyper_backend,
                                                 const L& lpddr_backend, bool reads_only = false) {
    const Addr base = cfg.address_map.dram.base;
    KernelAnalysis a = ccr(k, hyper_backend, cfg.clocks, reads_only, base);
    const auto active = all_components(cfg.power);
    const double ops = static_cast<double>(k.total_ops);

    auto run = [&](double t_mem, BackendKind kind) {
        BackendRun r;
        r.t_mem_s = t_mem;
        r.exec_s = std::max(a.t_compute_s, t_mem);
        r.power_mw = system_power_mw(cfg, active, cfg.clocks, kind);
        r.energy_j = r.power_mw * 1e-3 * r.exec_s;
        r.gops = ops / r.exec_s / 1e9;
        r.gops_per_w = r.gops / (r.power_mw * 1e-3);
        return r;
    };
    a.hyper = run(a.t_mem_s, BackendKind::HyperRam);
    a.lpddr = run(transfer_time_s(k, lpddr_backend, cfg.clocks, reads_only, base), BackendKind::Lpddr);
    a.gops = a.hyper.gops;
    a.gops_per_w = a.hyper.gops_per_w;
    a.relative_efficiency = a.hyper.gops_per_w / a.lpddr.gops_per_w;
    return a;
}

}  // namespace ulpsim
