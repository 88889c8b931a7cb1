#pragma once

/// @file core.hpp
/// @brief Basic vocabulary shared by every model: addresses, transactions,
/// clock domains and the error types.

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ulpsim {

using Addr = std::uint64_t;
using Cycles = std::uint64_t;

inline constexpr std::uint64_t KiB = 1024;
inline constexpr std::uint64_t MiB = 1024 * KiB;

/// Base class of all errors raised by the simulator.
class SimError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent configuration. `path()` names the offending field,
/// e.g. `hyper.bus_freq_mhz` or `clocks.cluster.freq_mhz`.
class ConfigError : public SimError {
public:
    ConfigError(std::string path, const std::string& what)
        : SimError(path + ": " + what), path_(std::move(path)) {}

    [[nodiscard]] const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

[[nodiscard]] constexpr bool is_pow2(std::uint64_t v) noexcept { return std::has_single_bit(v); }

[[nodiscard]] constexpr std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) noexcept {
    return (a + b - 1) / b;
}

[[nodiscard]] constexpr std::uint64_t align_down(std::uint64_t v, std::uint64_t pow2) noexcept {
    return v & ~(pow2 - 1);
}

/// Half-open address range [base, base + size).
struct Region {
    Addr base = 0;
    std::uint64_t size = 0;

    [[nodiscard]] constexpr Addr end() const noexcept { return base + size; }
    [[nodiscard]] constexpr bool contains(Addr a) const noexcept { return a >= base && a - base < size; }
    [[nodiscard]] constexpr bool contains(const Region& r) const noexcept {
        return r.base >= base && r.end() <= end();
    }
    [[nodiscard]] constexpr bool overlaps(const Region& r) const noexcept {
        return base < r.end() && r.base < end();
    }

    friend bool operator==(const Region&, const Region&) = default;
};

enum class AccessKind : std::uint8_t { Read, Write };

/// Who put a transaction on the interconnect.
enum class Initiator : std::uint8_t { Host, Llc, PmcaDma, Udma };

[[nodiscard]] constexpr std::string_view to_string(AccessKind k) noexcept {
    return k == AccessKind::Read ? "read" : "write";
}

[[nodiscard]] constexpr std::string_view to_string(Initiator i) noexcept {
    switch (i) {
        case Initiator::Host: return "host";
        case Initiator::Llc: return "llc";
        case Initiator::PmcaDma: return "pmca-dma";
        case Initiator::Udma: return "udma";
    }
    return "?";
}

/// 2D burst shape: `count` lines of the transaction length, `stride_bytes` apart.
struct Burst2d {
    std::uint32_t count = 1;
    std::uint64_t stride_bytes = 0;

    friend bool operator==(const Burst2d&, const Burst2d&) = default;
};

/// A read or write on the memory side of the hierarchy. The constructor
/// enforces len_bytes > 0 and a well-formed 2D shape.
struct MemTxn {
    AccessKind kind = AccessKind::Read;
    Addr addr = 0;
    std::uint64_t len_bytes = 0;
    std::optional<Burst2d> burst2d;
    Initiator source = Initiator::Host;

    MemTxn(AccessKind k, Addr a, std::uint64_t len, Initiator src = Initiator::Host,
           std::optional<Burst2d> burst = std::nullopt)
        : kind(k), addr(a), len_bytes(len), burst2d(burst), source(src) {
        if (len_bytes == 0) throw std::invalid_argument("MemTxn: len_bytes must be > 0");
        if (burst2d) {
            if (burst2d->count == 0) throw std::invalid_argument("MemTxn: burst2d.count must be >= 1");
            if (burst2d->stride_bytes < len_bytes)
                throw std::invalid_argument("MemTxn: burst2d.stride_bytes must be >= len_bytes");
        }
    }

    static MemTxn read(Addr a, std::uint64_t len, Initiator src = Initiator::Host) {
        return {AccessKind::Read, a, len, src};
    }
    static MemTxn write(Addr a, std::uint64_t len, Initiator src = Initiator::Host) {
        return {AccessKind::Write, a, len, src};
    }

    /// Payload bytes summed over all lines of a 2D burst.
    [[nodiscard]] std::uint64_t total_bytes() const noexcept {
        return burst2d ? len_bytes * burst2d->count : len_bytes;
    }

    friend bool operator==(const MemTxn&, const MemTxn&) = default;
};

// ---------------------------------------------------------------------------
// Clock domains
// ---------------------------------------------------------------------------

enum class Domain : std::uint8_t { HostCore = 0, HostDomain = 1, Peripheral = 2, Cluster = 3 };

inline constexpr std::array<Domain, 4> kAllDomains = {Domain::HostCore, Domain::HostDomain,
                                                      Domain::Peripheral, Domain::Cluster};

[[nodiscard]] constexpr std::string_view to_string(Domain d) noexcept {
    switch (d) {
        case Domain::HostCore: return "host-core";
        case Domain::HostDomain: return "host-domain";
        case Domain::Peripheral: return "peripheral-domain";
        case Domain::Cluster: return "cluster";
    }
    return "?";
}

[[nodiscard]] inline std::optional<Domain> domain_from_string(std::string_view s) noexcept {
    for (Domain d : kAllDomains)
        if (to_string(d) == s) return d;
    return std::nullopt;
}

struct ClockDomain {
    double freq_mhz = 0.0;
    double max_freq_mhz = 0.0;

    friend bool operator==(const ClockDomain&, const ClockDomain&) = default;
};

/// The four FLL-driven frequency domains. The host-domain clock is the "SoC
/// clock" that the interconnect, LLC and memory front-ends count in.
struct Clocks {
    std::array<ClockDomain, 4> domains{};

    [[nodiscard]] const ClockDomain& operator[](Domain d) const noexcept {
        return domains[static_cast<std::size_t>(d)];
    }
    [[nodiscard]] ClockDomain& operator[](Domain d) noexcept { return domains[static_cast<std::size_t>(d)]; }

    [[nodiscard]] double soc_mhz() const noexcept { return (*this)[Domain::HostDomain].freq_mhz; }
    [[nodiscard]] double cluster_mhz() const noexcept { return (*this)[Domain::Cluster].freq_mhz; }
    [[nodiscard]] double host_core_mhz() const noexcept { return (*this)[Domain::HostCore].freq_mhz; }

    friend bool operator==(const Clocks&, const Clocks&) = default;
};

inline void validate(const Clocks& clocks, const std::string& path = "clocks") {
    for (Domain d : kAllDomains) {
        const auto& c = clocks[d];
        const std::string p = path + "." + std::string(to_string(d));
        if (!(c.max_freq_mhz > 0.0)) throw ConfigError(p + ".max_freq_mhz", "must be > 0");
        if (!(c.freq_mhz > 0.0)) throw ConfigError(p + ".freq_mhz", "must be > 0");
        if (c.freq_mhz > c.max_freq_mhz) throw ConfigError(p + ".freq_mhz", "exceeds max_freq_mhz");
    }
}

/// Converts a cycle count between two clocks, rounding up.
[[nodiscard]] inline Cycles convert_cycles(Cycles cycles, double from_mhz, double to_mhz) {
    // Exact when the ratio is integral (the common 2:1 and 1:1 cases).
    const double exact = static_cast<double>(cycles) * to_mhz / from_mhz;
    const double rounded = std::nearbyint(exact);
    if (std::abs(exact - rounded) < 1e-9 * (1.0 + exact)) return static_cast<Cycles>(rounded);
    return static_cast<Cycles>(std::ceil(exact));
}

}  // namespace ulpsim
