#pragma once

/// @file pmca_model.hpp
/// @brief Analytical model of the 8-core accelerator cluster: tiled,
/// double-buffered kernel execution, lazy code-load offload cost and the
/// resulting speedup over the host core.
///
/// Throughputs are calibration inputs (ops per cycle on each side). Within an
/// invocation, DMA of tile i+1 overlaps compute on tile i, so the steady state
/// costs max(compute, transfer); the first input tile and the last output tile
/// cannot overlap and are charged on top.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ulpsim/core.hpp"
#include "ulpsim/mem_backends.hpp"

namespace ulpsim {

/// Capacity of the cluster scratchpad (16 banks x 8 KiB).
inline constexpr std::uint64_t kL1SpmBytes = 128 * KiB;

struct KernelDescriptor {
    std::string name;
    std::uint64_t total_ops = 0;
    std::uint64_t bytes_in = 0;
    std::uint64_t bytes_out = 0;
    double host_ops_per_cycle = 1.0;
    double pmca_ops_per_cycle = 1.0;
    std::uint64_t code_size_bytes = 0;
    std::uint64_t invocations = 1;
    std::uint64_t tile_bytes = 32 * KiB;

    friend bool operator==(const KernelDescriptor&, const KernelDescriptor&) = default;
};

inline void validate(const KernelDescriptor& k) {
    const std::string p = "kernel[" + k.name + "]";
    if (k.tile_bytes == 0) throw ConfigError(p + ".tile_bytes", "must be > 0");
    if (k.tile_bytes > kL1SpmBytes) throw ConfigError(p + ".tile_bytes", "exceeds the 128 KiB L1 scratchpad");
    if (!(k.host_ops_per_cycle > 0.0)) throw ConfigError(p + ".host_ops_per_cycle", "must be > 0");
    if (!(k.pmca_ops_per_cycle > 0.0)) throw ConfigError(p + ".pmca_ops_per_cycle", "must be > 0");
    if (k.invocations < 1) throw ConfigError(p + ".invocations", "must be >= 1");
}

struct CalibrationEntry {
    double host_ops_per_cycle = 1.0;
    double pmca_ops_per_cycle = 1.0;
    std::uint64_t code_size_bytes = 0;

    friend bool operator==(const CalibrationEntry&, const CalibrationEntry&) = default;
};

struct CalibrationTable {
    /// Mailbox and driver handshake per offload, in cluster cycles.
    std::uint64_t offload_fixed_cycles = 5000;
    std::map<std::string, CalibrationEntry> entries;

    friend bool operator==(const CalibrationTable&, const CalibrationTable&) = default;
};

/// Workload shape of a catalog kernel; throughputs come from the calibration table.
struct KernelShape {
    std::string name;
    std::uint64_t total_ops = 0;
    std::uint64_t bytes_in = 0;
    std::uint64_t bytes_out = 0;
    std::uint64_t tile_bytes = 32 * KiB;
    std::uint64_t invocations = 1;

    friend bool operator==(const KernelShape&, const KernelShape&) = default;
};

[[nodiscard]] inline KernelDescriptor resolve(const KernelShape& s, const CalibrationTable& cal) {
    const auto it = cal.entries.find(s.name);
    if (it == cal.entries.end()) throw SimError("unknown kernel '" + s.name + "': no calibration entry");
    KernelDescriptor k{s.name,
                       s.total_ops,
                       s.bytes_in,
                       s.bytes_out,
                       it->second.host_ops_per_cycle,
                       it->second.pmca_ops_per_cycle,
                       it->second.code_size_bytes,
                       s.invocations,
                       s.tile_bytes};
    validate(k);
    return k;
}

/// Where the DMA engine finds code, inputs and outputs in main memory.
struct DmaLayout {
    Addr code_base = 0;
    Addr in_base = 0;
    Addr out_base = 0;

    /// Code, inputs and outputs packed from `dram_base` on 64 KiB boundaries.
    [[nodiscard]] static DmaLayout packed(const KernelDescriptor& k, Addr dram_base = 0x8000'0000) {
        constexpr std::uint64_t g = 64 * KiB;
        DmaLayout l;
        l.code_base = dram_base;
        l.in_base = l.code_base + ceil_div(k.code_size_bytes, g) * g;
        l.out_base = l.in_base + ceil_div(k.bytes_in, g) * g;
        return l;
    }
};

/// Tile-sized DMA transactions of one invocation: all input tiles, then all
/// output tiles.
[[nodiscard]] inline std::vector<MemTxn> dma_plan(const KernelDescriptor& k, const DmaLayout& layout, bool reads_only = false) {
    if (k.tile_bytes == 0) throw std::invalid_argument("dma_plan: tile_bytes must be > 0");
    std::vector<MemTxn> txns;
    auto emit = [&](AccessKind kind, Addr base, std::uint64_t bytes) {
        for (std::uint64_t off = 0; off < bytes; off += k.tile_bytes)
            txns.emplace_back(kind, base + off, std::min(k.tile_bytes, bytes - off), Initiator::PmcaDma);
    };
    emit(AccessKind::Read, layout.in_base, k.bytes_in);
    if (!reads_only) emit(AccessKind::Write, layout.out_base, k.bytes_out);
    return txns;
}

template <MemoryBackend B>
[[nodiscard]] Cycles soc_cycles_of(const std::vector<MemTxn>& txns, const B& backend) {
    Cycles c = 0;
    for (const auto& t : txns) c += backend.soc_cycles(t);
    return c;
}

struct PmcaExec {
    double compute_cycles = 0;     ///< per invocation, cluster cycles
    double mem_cycles = 0;         ///< per invocation, cluster cycles
    double prologue_cycles = 0;    ///< first input tile
    double epilogue_cycles = 0;    ///< last output tile
    double invocation_cycles = 0;  ///< max(compute, mem) + prologue + epilogue
    double cluster_cycles = 0;     ///< invocations x invocation_cycles
    std::uint64_t invocations = 1;
    std::vector<MemTxn> mem_txns;  ///< one invocation's DMA traffic

    [[nodiscard]] std::uint64_t bytes_per_invocation() const noexcept {
        std::uint64_t b = 0;
        for (const auto& t : mem_txns) b += t.total_bytes();
        return b;
    }
    [[nodiscard]] std::uint64_t total_dma_bytes() const noexcept { return invocations * bytes_per_invocation(); }
};

template <MemoryBackend B>
[[nodiscard]] PmcaExec pmca_exec_cycles(const KernelDescriptor& k, const B& backend, const Clocks& clocks,
                                        Addr dram_base = 0x8000'0000) {
    if (k.tile_bytes == 0) throw std::invalid_argument("pmca_exec_cycles: tile_bytes must be > 0");
    const double soc = clocks.soc_mhz();
    const double cl = clocks.cluster_mhz();
    auto to_cluster = [&](Cycles soc_cycles) { return static_cast<double>(convert_cycles(soc_cycles, soc, cl)); };

    PmcaExec e;
    e.invocations = k.invocations;
    e.mem_txns = dma_plan(k, DmaLayout::packed(k, dram_base));
    e.compute_cycles = static_cast<double>(k.total_ops) / k.pmca_ops_per_cycle;
    e.mem_cycles = to_cluster(soc_cycles_of(e.mem_txns, backend));
    if (k.bytes_in > 0) e.prologue_cycles = to_cluster(backend.soc_cycles(e.mem_txns.front()));
    if (k.bytes_out > 0) e.epilogue_cycles = to_cluster(backend.soc_cycles(e.mem_txns.back()));
    e.invocation_cycles = std::max(e.compute_cycles, e.mem_cycles) + e.prologue_cycles + e.epilogue_cycles;
    e.cluster_cycles = static_cast<double>(k.invocations) * e.invocation_cycles;
    return e;
}

struct OffloadCost {
    double total_cycles = 0;
    double overhead_cycles = 0;
    PmcaExec exec;
};

/// Total offload cost: the code binary is fetched lazily before the first
/// invocation, plus the fixed handshake; both are charged once.
template <MemoryBackend B>
[[nodiscard]] OffloadCost offload_total_cycles(const KernelDescriptor& k, const B& backend, const Clocks& clocks,
                                               std::uint64_t offload_fixed_cycles, Addr dram_base = 0x8000'0000) {
    OffloadCost c;
    c.exec = pmca_exec_cycles(k, backend, clocks, dram_base);
    c.overhead_cycles = static_cast<double>(offload_fixed_cycles);
    if (k.code_size_bytes > 0) {
        const Cycles load = backend.soc_cycles(MemTxn::read(DmaLayout::packed(k, dram_base).code_base, k.code_size_bytes, Initiator::Host));
        c.overhead_cycles += static_cast<double>(convert_cycles(load, clocks.soc_mhz(), clocks.cluster_mhz()));
    }
    c.total_cycles = c.overhead_cycles + c.exec.cluster_cycles;
    return c;
}

[[nodiscard]] inline double host_cycles(const KernelDescriptor& k) {
    return static_cast<double>(k.invocations) * static_cast<double>(k.total_ops) / k.host_ops_per_cycle;
}

/// Host cycles over total offload cycles, each counted in its own clock domain.
template <MemoryBackend B>
[[nodiscard]] double speedup_vs_host(const KernelDescriptor& k, const B& backend, const Clocks& clocks,
                                     std::uint64_t offload_fixed_cycles, Addr dram_base = 0x8000'0000) {
    return host_cycles(k) / offload_total_cycles(k, backend, clocks, offload_fixed_cycles, dram_base).total_cycles;
}

/// Compute-phase throughput of the cluster in GOps.
[[nodiscard]] inline double pmca_gops(const KernelDescriptor& k, const Clocks& clocks) {
    return k.pmca_ops_per_cycle * clocks.cluster_mhz() / 1000.0;
}

[[nodiscard]] inline double host_gops(const KernelDescriptor& k, const Clocks& clocks) {
    return k.host_ops_per_cycle * clocks.host_core_mhz() / 1000.0;
}

}  // namespace ulpsim
