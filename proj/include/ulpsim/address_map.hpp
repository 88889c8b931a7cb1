#pragma once

#include <string_view>

#include "ulpsim/core.hpp"

namespace ulpsim {

struct AddressMap {
    Region l2spm{0x1C00'0000, 512 * KiB};
    Region dram{0x8000'0000, 512 * MiB};
    Region cacheable_window{0x8000'0000, 512 * MiB};

    friend bool operator==(const AddressMap&, const AddressMap&) = default;
};

enum class RegionTag : std::uint8_t { L2spm, DramCacheable, DramBypass, Unmapped };

[[nodiscard]] constexpr std::string_view to_string(RegionTag t) noexcept {
    switch (t) {
        case RegionTag::L2spm: return "l2spm";
        case RegionTag::DramCacheable: return "dram-cacheable";
        case RegionTag::DramBypass: return "dram-bypass";
        case RegionTag::Unmapped: return "unmapped";
    }
    return "?";
}

[[nodiscard]] constexpr RegionTag classify_address(const AddressMap& map, Addr addr) noexcept {
    if (map.l2spm.contains(addr)) return RegionTag::L2spm;
    if (map.cacheable_window.contains(addr)) return RegionTag::DramCacheable;
    if (map.dram.contains(addr)) return RegionTag::DramBypass;
    return RegionTag::Unmapped;
}

inline void validate(const AddressMap& m, const std::string& path = "address_map") {
    auto check = [&](const Region& r, const char* name) {
        const std::string p = path + "." + name;
        if (!is_pow2(r.size)) throw ConfigError(p + ".size", "must be a power of two");
        if (r.base % r.size != 0) throw ConfigError(p + ".base", "must be aligned to the region size");
        if (r.end() < r.base) throw ConfigError(p, "wraps around the address space");
    };
    check(m.l2spm, "l2spm");
    check(m.dram, "dram");
    check(m.cacheable_window, "cacheable_window");
    if (m.l2spm.overlaps(m.dram)) throw ConfigError(path + ".l2spm", "overlaps dram");
    if (!m.dram.contains(m.cacheable_window))
        throw ConfigError(path + ".cacheable_window", "must lie inside dram");
}

}  // namespace ulpsim
