#pragma once

/// @file llc.hpp
/// @brief Parameterizable set-associative last-level cache in front of the
/// main-memory controller.
///
/// Incoming transactions are filtered by the cacheable window: anything
/// outside goes straight to the backend. Cacheable transactions are split
/// into line descriptors, each looked up in the tag array (one cycle). Hits
/// cost one further cycle per accessed block. A miss first writes back a
/// dirty victim, then refills the whole line, both timed by the backend.
///
/// Policy: true LRU, write-back, write-allocate. Only tags and flags are
/// tracked; no data payloads.

#include <cstdint>
#include <optional>
#include <vector>

#include "ulpsim/core.hpp"
#include "ulpsim/mem_backends.hpp"

namespace ulpsim {

struct LlcConfig {
    std::uint32_t axi_dw_bits = 64;
    std::uint32_t n_blocks = 8;
    std::uint32_t n_lines = 256;
    std::uint32_t n_ways = 8;

    [[nodiscard]] std::uint64_t block_bytes() const noexcept { return axi_dw_bits / 8; }
    [[nodiscard]] std::uint64_t line_bytes() const noexcept { return n_blocks * block_bytes(); }
    [[nodiscard]] std::uint64_t size_bytes() const noexcept {
        return static_cast<std::uint64_t>(n_ways) * n_lines * n_blocks * axi_dw_bits / 8;
    }

    friend bool operator==(const LlcConfig&, const LlcConfig&) = default;
};

inline void validate(const LlcConfig& c, const std::string& path = "llc") {
    if (c.axi_dw_bits < 8 || !is_pow2(c.axi_dw_bits))
        throw ConfigError(path + ".axi_dw_bits", "must be a power of two >= 8");
    if (!is_pow2(c.n_blocks)) throw ConfigError(path + ".n_blocks", "must be a power of two");
    if (!is_pow2(c.n_lines)) throw ConfigError(path + ".n_lines", "must be a power of two");
    if (!is_pow2(c.n_ways) || c.n_ways > 65535) throw ConfigError(path + ".n_ways", "must be a power of two");
}

/// One line-granular slice of a cacheable transaction.
struct LineDescriptor {
    Addr line_addr = 0;
    AccessKind kind = AccessKind::Read;
    std::uint64_t set_index = 0;
    std::uint64_t tag = 0;
    /// Blocks of this line touched by the originating transaction.
    std::uint32_t blocks = 1;

    friend bool operator==(const LineDescriptor&, const LineDescriptor&) = default;
};

[[nodiscard]] inline LineDescriptor make_descriptor(const LlcConfig& cfg, Addr addr, AccessKind kind,
                                                    std::uint32_t blocks = 1) {
    const std::uint64_t lb = cfg.line_bytes();
    const Addr line = align_down(addr, lb);
    return {line, kind, (line / lb) % cfg.n_lines, line / (lb * cfg.n_lines), blocks};
}

/// Line descriptors covering [addr, addr + len) of every line of `txn`,
/// line-aligned and in ascending order without duplicates.
[[nodiscard]] inline std::vector<LineDescriptor> decompose(const LlcConfig& cfg, const MemTxn& txn) {
    const std::uint64_t lb = cfg.line_bytes();
    const std::uint64_t bb = cfg.block_bytes();
    std::vector<LineDescriptor> out;
    for (const MemTxn& row : dma_expand_2d(txn)) {
        const Addr last = row.addr + row.len_bytes - 1;
        for (Addr line = align_down(row.addr, lb); line <= last; line += lb) {
            const Addr lo = std::max(line, row.addr);
            const Addr hi = std::min(line + lb - 1, last);
            const auto blocks = static_cast<std::uint32_t>(hi / bb - lo / bb + 1);
            if (!out.empty() && out.back().line_addr == line) {
                out.back().blocks = std::min<std::uint32_t>(out.back().blocks + blocks, cfg.n_blocks);
                continue;
            }
            out.push_back(make_descriptor(cfg, line, row.kind, blocks));
        }
    }
    return out;
}

struct Eviction {
    Addr victim_addr = 0;
    bool dirty = false;

    friend bool operator==(const Eviction&, const Eviction&) = default;
};

struct LookupOutcome {
    bool hit = false;
    std::optional<Eviction> eviction;

    friend bool operator==(const LookupOutcome&, const LookupOutcome&) = default;
};

/// Flat statistics record, one per simulation instance.
struct LlcStats {
    std::uint64_t hits = 0;
    std::uint64_t misses = 0;
    std::uint64_t evictions = 0;
    std::uint64_t writebacks = 0;
    Cycles cycles = 0;

    [[nodiscard]] double miss_ratio() const noexcept {
        const auto n = hits + misses;
        return n == 0 ? 0.0 : static_cast<double>(misses) / static_cast<double>(n);
    }

    friend bool operator==(const LlcStats&, const LlcStats&) = default;
};

enum class LlcTrafficKind : std::uint8_t { PassThrough, WriteBack, Refill };

struct LlcTraffic {
    LlcTrafficKind kind;
    MemTxn txn;
};

struct LlcAccessResult {
    Cycles soc_cycles = 0;
    std::vector<LlcTraffic> backend_txns;
    std::uint64_t hit_count = 0;
    std::uint64_t miss_count = 0;
};

class Llc {
public:
    /// `cacheable` is the window whose requests go through the tag array.
    Llc(LlcConfig cfg, Region cacheable)
        : cfg_(cfg),
          cacheable_(cacheable),
          tags_(slots(), 0),
          valid_(slots(), 0),
          dirty_(slots(), 0),
          order_(slots()) {
        validate(cfg_);
        for (std::uint64_t s = 0; s < cfg_.n_lines; ++s)
            for (std::uint32_t w = 0; w < cfg_.n_ways; ++w) order_[s * cfg_.n_ways + w] = static_cast<std::uint16_t>(w);
    }

    [[nodiscard]] const LlcConfig& config() const noexcept { return cfg_; }
    [[nodiscard]] const Region& cacheable() const noexcept { return cacheable_; }
    [[nodiscard]] const LlcStats& stats() const noexcept { return stats_; }
    void reset_stats() noexcept { stats_ = {}; }

    /// Tag lookup plus LRU/flag update for one descriptor. Does not touch
    /// the cycle counter; `access` does the timing.
    LookupOutcome lookup_and_update(const LineDescriptor& d) {
        const std::uint64_t base = d.set_index * cfg_.n_ways;
        std::uint16_t* order = &order_[base];

        for (std::uint32_t pos = 0; pos < cfg_.n_ways; ++pos) {
            const std::uint16_t w = order[pos];
            if (valid_[base + w] && tags_[base + w] == d.tag) {
                promote(order, pos);
                if (d.kind == AccessKind::Write) dirty_[base + w] = 1;
                ++stats_.hits;
                return {true, std::nullopt};
            }
        }

        ++stats_.misses;
        // Invalid ways are preferred; otherwise the LRU-oldest way.
        std::uint32_t pos = cfg_.n_ways - 1;
        for (std::uint32_t p = 0; p < cfg_.n_ways; ++p) {
            if (!valid_[base + order[p]]) {
                pos = p;
                break;
            }
        }
        const std::uint16_t w = order[pos];
        std::optional<Eviction> ev;
        if (valid_[base + w]) {
            ev = Eviction{line_address(tags_[base + w], d.set_index), dirty_[base + w] != 0};
            ++stats_.evictions;
            if (ev->dirty) ++stats_.writebacks;
        }
        tags_[base + w] = d.tag;
        valid_[base + w] = 1;
        dirty_[base + w] = d.kind == AccessKind::Write ? 1 : 0;
        promote(order, pos);
        return {false, ev};
    }

    /// Full timed access: bypass filtering, descriptor split, lookup and the
    /// resulting write-back/refill traffic.
    template <MemoryBackend B>
    LlcAccessResult access(const MemTxn& txn, const B& backend) {
        LlcAccessResult r;
        if (!cacheable_.contains(txn.addr)) {
            r.soc_cycles = backend.soc_cycles(txn);
            r.backend_txns.push_back({LlcTrafficKind::PassThrough, txn});
            stats_.cycles += r.soc_cycles;
            return r;
        }
        const std::uint64_t lb = cfg_.line_bytes();
        for (const LineDescriptor& d : decompose(cfg_, txn)) {
            r.soc_cycles += 1;
            const LookupOutcome o = lookup_and_update(d);
            if (o.hit) {
                ++r.hit_count;
            } else {
                ++r.miss_count;
                if (o.eviction && o.eviction->dirty) {
                    MemTxn wb = MemTxn::write(o.eviction->victim_addr, lb, Initiator::Llc);
                    r.soc_cycles += backend.soc_cycles(wb);
                    r.backend_txns.push_back({LlcTrafficKind::WriteBack, wb});
                }
                MemTxn refill = MemTxn::read(d.line_addr, lb, Initiator::Llc);
                r.soc_cycles += backend.soc_cycles(refill);
                r.backend_txns.push_back({LlcTrafficKind::Refill, refill});
            }
            r.soc_cycles += d.blocks;
        }
        stats_.cycles += r.soc_cycles;
        return r;
    }

    [[nodiscard]] std::uint64_t valid_lines() const noexcept {
        std::uint64_t n = 0;
        for (auto v : valid_) n += v;
        return n;
    }

    [[nodiscard]] bool resident(Addr addr) const noexcept {
        const LineDescriptor d = make_descriptor(cfg_, addr, AccessKind::Read);
        for (std::uint32_t w = 0; w < cfg_.n_ways; ++w) {
            const auto i = d.set_index * cfg_.n_ways + w;
            if (valid_[i] && tags_[i] == d.tag) return true;
        }
        return false;
    }

    /// Structural invariants: no duplicate valid tag in a set, dirty implies
    /// valid, and each set's LRU order is a permutation of its ways.
    [[nodiscard]] bool invariants_hold() const {
        std::vector<std::uint8_t> seen(cfg_.n_ways);
        for (std::uint64_t s = 0; s < cfg_.n_lines; ++s) {
            const std::uint64_t base = s * cfg_.n_ways;
            std::fill(seen.begin(), seen.end(), 0);
            for (std::uint32_t p = 0; p < cfg_.n_ways; ++p) {
                const auto w = order_[base + p];
                if (w >= cfg_.n_ways || seen[w]) return false;
                seen[w] = 1;
            }
            for (std::uint32_t a = 0; a < cfg_.n_ways; ++a) {
                if (dirty_[base + a] && !valid_[base + a]) return false;
                for (std::uint32_t b = a + 1; b < cfg_.n_ways; ++b)
                    if (valid_[base + a] && valid_[base + b] && tags_[base + a] == tags_[base + b]) return false;
            }
        }
        return true;
    }

private:
    [[nodiscard]] std::size_t slots() const noexcept {
        return static_cast<std::size_t>(cfg_.n_lines) * cfg_.n_ways;
    }

    [[nodiscard]] Addr line_address(std::uint64_t tag, std::uint64_t set) const noexcept {
        return (tag * cfg_.n_lines + set) * cfg_.line_bytes();
    }

    // Moves order[pos] to the MRU slot.
    static void promote(std::uint16_t* order, std::uint32_t pos) noexcept {
        const std::uint16_t w = order[pos];
        for (; pos > 0; --pos) order[pos] = order[pos - 1];
        order[0] = w;
    }

    LlcConfig cfg_;
    Region cacheable_;
    std::vector<std::uint64_t> tags_;
    std::vector<std::uint8_t> valid_;
    std::vector<std::uint8_t> dirty_;
    std::vector<std::uint16_t> order_;  // per set, MRU first
    LlcStats stats_;
};

}  // namespace ulpsim
