#pragma once

/// @file mem_backends.hpp
/// @brief Main-memory timing: the HyperRAM controller (chip-select and dual
/// bus address mapping, 2D burst expansion, affine bus timing) and an ideal
/// DDR4/LPDDR4 backend used as the high-bandwidth reference.
///
/// Both backends answer one question: how many SoC (host-domain) cycles does
/// a transaction occupy the memory port? Transactions are serialized, so the
/// cost of a sequence is the sum of the individual costs.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "ulpsim/core.hpp"

namespace ulpsim {

struct HyperConfig {
    std::uint32_t n_cs = 4;
    std::uint32_t n_buses = 2;
    std::uint64_t mem_bytes_per_cs = 64 * MiB;
    double bus_freq_mhz = 200.0;
    std::uint32_t t_init_bus_cycles = 7;
    double device_power_mw = 25.0;

    /// Bytes covered by one chip select across all buses.
    [[nodiscard]] std::uint64_t cs_span_bytes() const noexcept { return mem_bytes_per_cs * n_buses; }
    [[nodiscard]] std::uint64_t total_bytes() const noexcept {
        return static_cast<std::uint64_t>(n_cs) * n_buses * mem_bytes_per_cs;
    }
    /// 3 control + n CS + 8 DQ pins per HyperBUS.
    [[nodiscard]] std::uint32_t pins_per_bus() const noexcept { return 11 + n_cs; }
    [[nodiscard]] std::uint32_t total_pins() const noexcept { return n_buses * pins_per_bus(); }

    friend bool operator==(const HyperConfig&, const HyperConfig&) = default;
};

inline void validate(const HyperConfig& c, const std::string& path = "hyper") {
    if (c.n_cs < 1) throw ConfigError(path + ".n_cs", "must be >= 1");
    if (c.n_buses != 1 && c.n_buses != 2) throw ConfigError(path + ".n_buses", "must be 1 or 2");
    if (c.mem_bytes_per_cs == 0 || c.mem_bytes_per_cs > 64 * MiB)
        throw ConfigError(path + ".mem_bytes_per_cs", "must be in (0, 64 MiB]");
    if (c.mem_bytes_per_cs % 2 != 0) throw ConfigError(path + ".mem_bytes_per_cs", "must be even");
    if (!(c.bus_freq_mhz > 0.0) || c.bus_freq_mhz > 200.0)
        throw ConfigError(path + ".bus_freq_mhz", "must be in (0, 200]");
    if (c.device_power_mw < 0.0) throw ConfigError(path + ".device_power_mw", "must be >= 0");
}

struct DdrConfig {
    std::uint32_t fixed_latency_soc_cycles = 10;
    std::uint32_t bytes_per_soc_cycle = 8;
    /// Controller + PHY + device power. When unset, the config loader derives
    /// it from the HyperRAM system power (see soc_config.hpp).
    std::optional<double> subsystem_power_mw;

    friend bool operator==(const DdrConfig&, const DdrConfig&) = default;
};

inline void validate(const DdrConfig& c, const std::string& path = "ddr") {
    if (c.bytes_per_soc_cycle == 0) throw ConfigError(path + ".bytes_per_soc_cycle", "must be > 0");
    if (c.subsystem_power_mw && *c.subsystem_power_mw < 0.0)
        throw ConfigError(path + ".subsystem_power_mw", "must be >= 0");
}

struct DeviceLocation {
    std::uint32_t bus_id = 0;
    std::uint32_t cs_id = 0;
    std::uint64_t device_addr = 0;

    friend bool operator==(const DeviceLocation&, const DeviceLocation&) = default;
};

/// Maps a DRAM-relative byte address onto (bus, chip select, device offset).
/// Devices on one bus sit back to back; with two buses the devices sharing a
/// chip select are interleaved at 16-bit granularity.
[[nodiscard]] inline DeviceLocation map_address(const HyperConfig& cfg, Addr addr) {
    if (addr >= cfg.total_bytes()) throw std::out_of_range("map_address: address beyond HyperRAM capacity");
    if (cfg.n_buses == 1) {
        return {0, static_cast<std::uint32_t>(addr / cfg.mem_bytes_per_cs), addr % cfg.mem_bytes_per_cs};
    }
    const std::uint64_t pair_bytes = 2 * cfg.mem_bytes_per_cs;
    const std::uint64_t p = addr % pair_bytes;
    const std::uint64_t half_word = p / 2;
    return {static_cast<std::uint32_t>(half_word % 2), static_cast<std::uint32_t>(addr / pair_bytes),
            (half_word / 2) * 2 + p % 2};
}

namespace detail {
// Bytes of [0, x) that land on bus 0 under the 16-bit interleave.
[[nodiscard]] constexpr std::uint64_t bus0_prefix(std::uint64_t x) noexcept {
    return (x / 4) * 2 + std::min<std::uint64_t>(x % 4, 2);
}
}  // namespace detail

/// Bus cycles for a 1D transaction that stays within one chip select:
/// t_init + ceil(bytes/2) per bus, buses running in parallel.
[[nodiscard]] inline Cycles hyper_access_cycles(const HyperConfig& cfg, const MemTxn& txn) {
    if (txn.burst2d) throw std::invalid_argument("hyper_access_cycles: expand 2D bursts first");
    const std::uint64_t span = cfg.cs_span_bytes();
    const std::uint64_t off = txn.addr % span;
    if (txn.addr / span >= cfg.n_cs || off + txn.len_bytes > span)
        throw std::invalid_argument("hyper_access_cycles: transaction crosses a device boundary");

    auto bus_time = [&](std::uint64_t bytes) -> Cycles {
        return bytes == 0 ? 0 : cfg.t_init_bus_cycles + ceil_div(bytes, 2);
    };
    if (cfg.n_buses == 1) return bus_time(txn.len_bytes);
    const std::uint64_t on_bus0 = detail::bus0_prefix(off + txn.len_bytes) - detail::bus0_prefix(off);
    return std::max(bus_time(on_bus0), bus_time(txn.len_bytes - on_bus0));
}

/// Sustained bandwidth of a `len_bytes` transfer starting at a device boundary.
[[nodiscard]] inline double hyper_sustained_gbps(const HyperConfig& cfg, std::uint64_t len_bytes) {
    const Cycles c = hyper_access_cycles(cfg, MemTxn::read(0, len_bytes));
    return static_cast<double>(len_bytes) * 8.0 * cfg.bus_freq_mhz * 1e6 / static_cast<double>(c) / 1e9;
}

/// SoC cycles of the ideal DDR backend: fixed latency plus one beat per cycle.
[[nodiscard]] inline Cycles ddr_access_cycles(const DdrConfig& cfg, const MemTxn& txn) {
    const std::uint64_t lines = txn.burst2d ? txn.burst2d->count : 1;
    return lines * (cfg.fixed_latency_soc_cycles + ceil_div(txn.len_bytes, cfg.bytes_per_soc_cycle));
}

/// Unrolls a 2D burst into its 1D lines, in order.
[[nodiscard]] inline std::vector<MemTxn> dma_expand_2d(const MemTxn& txn) {
    if (!txn.burst2d) return {txn};
    std::vector<MemTxn> lines;
    lines.reserve(txn.burst2d->count);
    for (std::uint32_t i = 0; i < txn.burst2d->count; ++i)
        lines.emplace_back(txn.kind, txn.addr + i * txn.burst2d->stride_bytes, txn.len_bytes, txn.source);
    return lines;
}

/// Splits a 1D transaction wherever it crosses a chip-select span. `base` is
/// the address that maps to device offset 0 (the DRAM region base).
[[nodiscard]] inline std::vector<MemTxn> split_at_devices(const HyperConfig& cfg, const MemTxn& txn,
                                                          Addr base = 0) {
    std::vector<MemTxn> pieces;
    const std::uint64_t span = cfg.cs_span_bytes();
    Addr a = txn.addr;
    std::uint64_t left = txn.len_bytes;
    while (left > 0) {
        const std::uint64_t room = span - (a - base) % span;
        const std::uint64_t n = std::min(room, left);
        pieces.emplace_back(txn.kind, a, n, txn.source);
        a += n;
        left -= n;
    }
    return pieces;
}

enum class BackendKind : std::uint8_t { None, HyperRam, Lpddr };

[[nodiscard]] constexpr std::string_view to_string(BackendKind k) noexcept {
    switch (k) {
        case BackendKind::None: return "none";
        case BackendKind::HyperRam: return "hyper";
        case BackendKind::Lpddr: return "ddr4";
    }
    return "?";
}

/// Anything that prices a transaction in SoC cycles.
template <typename B>
concept MemoryBackend = requires(const B& b, const MemTxn& t) {
    { b.soc_cycles(t) } -> std::convertible_to<Cycles>;
    { b.kind() } -> std::convertible_to<BackendKind>;
};

/// HyperRAM controller front-end: takes absolute addresses in the DRAM
/// region, expands 2D bursts, splits at device boundaries, times each PHY
/// packet and converts the total from bus to SoC cycles (rounding up).
class HyperRamBackend {
public:
    HyperRamBackend(HyperConfig cfg, Addr dram_base, double soc_mhz)
        : cfg_(cfg), base_(dram_base), soc_mhz_(soc_mhz) {}

    [[nodiscard]] BackendKind kind() const noexcept { return BackendKind::HyperRam; }
    [[nodiscard]] const HyperConfig& config() const noexcept { return cfg_; }

    [[nodiscard]] Cycles bus_cycles(const MemTxn& txn) const {
        Cycles total = 0;
        for (const MemTxn& line : dma_expand_2d(txn)) {
            if (line.addr < base_ || line.addr - base_ + line.len_bytes > cfg_.total_bytes())
                throw std::out_of_range("HyperRamBackend: address outside the DRAM region");
            for (MemTxn piece : split_at_devices(cfg_, line, base_)) {
                piece.addr -= base_;
                total += hyper_access_cycles(cfg_, piece);
            }
        }
        return total;
    }

    [[nodiscard]] Cycles soc_cycles(const MemTxn& txn) const {
        return convert_cycles(bus_cycles(txn), cfg_.bus_freq_mhz, soc_mhz_);
    }

private:
    HyperConfig cfg_;
    Addr base_;
    double soc_mhz_;
};

class DdrBackend {
public:
    explicit DdrBackend(DdrConfig cfg) : cfg_(std::move(cfg)) {}

    [[nodiscard]] BackendKind kind() const noexcept { return BackendKind::Lpddr; }
    [[nodiscard]] const DdrConfig& config() const noexcept { return cfg_; }
    [[nodiscard]] Cycles soc_cycles(const MemTxn& txn) const { return ddr_access_cycles(cfg_, txn); }

private:
    DdrConfig cfg_;
};

static_assert(MemoryBackend<HyperRamBackend>);
static_assert(MemoryBackend<DdrBackend>);

using AnyBackend = std::variant<HyperRamBackend, DdrBackend>;

[[nodiscard]] inline Cycles soc_cycles(const AnyBackend& b, const MemTxn& txn) {
    return std::visit([&](const auto& be) { return be.soc_cycles(txn); }, b);
}

[[nodiscard]] inline BackendKind kind_of(const AnyBackend& b) {
    return std::visit([](const auto& be) { return be.kind(); }, b);
}

}  // namespace ulpsim
