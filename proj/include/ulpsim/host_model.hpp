#pragma once

/// @file host_model.hpp
/// @brief Host core data path: write-through L1 D-cache, the synthetic
/// stride benchmark, and serialized trace replay through L1 -> LLC -> DRAM.

#include <cstdint>
#include <optional>
#include <vector>

#include "ulpsim/address_map.hpp"
#include "ulpsim/core.hpp"
#include "ulpsim/llc.hpp"
#include "ulpsim/mem_backends.hpp"

namespace ulpsim {

struct L1Config {
    std::uint64_t size_bytes = 32 * KiB;
    std::uint64_t way_bytes = 4 * KiB;
    std::uint64_t line_bytes = 64;

    [[nodiscard]] std::uint64_t ways() const noexcept { return size_bytes / way_bytes; }
    [[nodiscard]] std::uint64_t sets() const noexcept { return way_bytes / line_bytes; }

    friend bool operator==(const L1Config&, const L1Config&) = default;
};

inline void validate(const L1Config& c, const std::string& path = "l1") {
    if (!is_pow2(c.line_bytes) || c.line_bytes < 8) throw ConfigError(path + ".line_bytes", "must be a power of two >= 8");
    if (!is_pow2(c.way_bytes) || c.way_bytes < c.line_bytes)
        throw ConfigError(path + ".way_bytes", "must be a power of two >= line_bytes");
    if (c.size_bytes == 0 || c.size_bytes % c.way_bytes != 0)
        throw ConfigError(path + ".size_bytes", "must be a multiple of way_bytes");
}

struct TraceRecord {
    AccessKind op = AccessKind::Read;
    Addr addr = 0;
    std::uint32_t len_bytes = 8;

    friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

/// Records are 1, 2, 4 or 8 bytes and naturally aligned, so they never
/// straddle a cache line.
[[nodiscard]] constexpr bool is_valid(const TraceRecord& r) noexcept {
    return (r.len_bytes == 1 || r.len_bytes == 2 || r.len_bytes == 4 || r.len_bytes == 8) &&
           r.addr % r.len_bytes == 0;
}

struct L1Outcome {
    bool hit = false;
    std::optional<MemTxn> downstream;
};

/// Write-through, no-write-allocate, LRU. Write hits refresh recency.
class L1Cache {
public:
    explicit L1Cache(L1Config cfg = {})
        : cfg_(cfg), tags_(cfg.ways() * cfg.sets()), valid_(cfg.ways() * cfg.sets(), 0), order_(cfg.ways() * cfg.sets()) {
        validate(cfg_);
        for (std::uint64_t s = 0; s < cfg_.sets(); ++s)
            for (std::uint64_t w = 0; w < cfg_.ways(); ++w) order_[s * cfg_.ways() + w] = static_cast<std::uint32_t>(w);
    }

    [[nodiscard]] const L1Config& config() const noexcept { return cfg_; }

    L1Outcome access(const TraceRecord& rec) {
        const std::uint64_t line = rec.addr / cfg_.line_bytes;
        const std::uint64_t set = line % cfg_.sets();
        const std::uint64_t tag = line / cfg_.sets();
        const std::uint64_t ways = cfg_.ways();
        std::uint32_t* order = &order_[set * ways];

        std::optional<std::uint64_t> pos;
        for (std::uint64_t p = 0; p < ways; ++p) {
            const auto i = set * ways + order[p];
            if (valid_[i] && tags_[i] == tag) {
                pos = p;
                break;
            }
        }

        if (rec.op == AccessKind::Write) {
            if (pos) promote(order, *pos);
            return {pos.has_value(), MemTxn::write(rec.addr, rec.len_bytes)};
        }
        if (pos) {
            promote(order, *pos);
            return {true, std::nullopt};
        }
        std::uint64_t victim = ways - 1;
        for (std::uint64_t p = 0; p < ways; ++p) {
            if (!valid_[set * ways + order[p]]) {
                victim = p;
                break;
            }
        }
        const auto i = set * ways + order[victim];
        tags_[i] = tag;
        valid_[i] = 1;
        promote(order, victim);
        return {false, MemTxn::read(line * cfg_.line_bytes, cfg_.line_bytes)};
    }

    [[nodiscard]] bool resident(Addr addr) const noexcept {
        const std::uint64_t line = addr / cfg_.line_bytes;
        const std::uint64_t set = line % cfg_.sets();
        for (std::uint64_t w = 0; w < cfg_.ways(); ++w) {
            const auto i = set * cfg_.ways() + w;
            if (valid_[i] && tags_[i] == line / cfg_.sets()) return true;
        }
        return false;
    }

private:
    static void promote(std::uint32_t* order, std::uint64_t pos) noexcept {
        const auto w = order[pos];
        for (; pos > 0; --pos) order[pos] = order[pos - 1];
        order[0] = w;
    }

    L1Config cfg_;
    std::vector<std::uint64_t> tags_;
    std::vector<std::uint8_t> valid_;
    std::vector<std::uint32_t> order_;
};

// ---------------------------------------------------------------------------
// Stride benchmark
// ---------------------------------------------------------------------------

/// Fill one 4 KiB L1 way with sequential reads, then `rounds` rounds that
/// each touch a way's worth of lines (4 KiB / line_bytes of them) spaced
/// `stride_s` lines apart. The touch count per round is constant, so the
/// footprint grows with the stride.
struct StrideBenchmarkSpec {
    std::uint32_t stride_s = 1;
    std::uint32_t rounds = 8;
    std::uint32_t access_bytes = 8;
    Addr base_addr = 0x8000'0000;
};

struct StrideTrace {
    std::vector<TraceRecord> records;
    /// Fill phase plus the first (warm-up) round; measurement starts here.
    std::size_t warmup_records = 0;
};

[[nodiscard]] inline StrideTrace gen_stride_trace(const StrideBenchmarkSpec& spec, const L1Config& l1 = {}) {
    if (spec.stride_s < 1) throw std::invalid_argument("stride benchmark: stride_s must be >= 1");
    if (spec.rounds < 3) throw std::invalid_argument("stride benchmark: rounds must be >= 3");
    const TraceRecord probe{AccessKind::Read, spec.base_addr, spec.access_bytes};
    if (!is_valid(probe)) throw std::invalid_argument("stride benchmark: bad access_bytes or base alignment");

    StrideTrace t;
    const std::uint64_t way = l1.way_bytes;
    const std::uint64_t touches = way / l1.line_bytes;
    t.records.reserve(way / spec.access_bytes + touches * spec.rounds);
    for (std::uint64_t off = 0; off < way; off += spec.access_bytes)
        t.records.push_back({AccessKind::Read, spec.base_addr + off, spec.access_bytes});
    for (std::uint32_t r = 0; r < spec.rounds; ++r) {
        if (r == 1) t.warmup_records = t.records.size();
        for (std::uint64_t i = 0; i < touches; ++i)
            t.records.push_back(
                {AccessKind::Read, spec.base_addr + i * spec.stride_s * l1.line_bytes, spec.access_bytes});
    }
    return t;
}

// ---------------------------------------------------------------------------
// Trace replay
// ---------------------------------------------------------------------------

/// Replay error carrying the index of the offending record.
class TraceError : public SimError {
public:
    TraceError(std::size_t index, const std::string& what)
        : SimError("record " + std::to_string(index) + ": " + what), index_(index) {}
    [[nodiscard]] std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

struct SimResult {
    std::uint64_t records = 0;
    Cycles cycles = 0;
    std::uint64_t l1_hits = 0;
    std::uint64_t l1_misses = 0;
    LlcStats llc{};
    std::uint64_t l2spm_accesses = 0;
    std::uint64_t dram_read_bytes = 0;
    std::uint64_t dram_write_bytes = 0;

    [[nodiscard]] double l1_miss_ratio() const noexcept {
        const auto n = l1_hits + l1_misses;
        return n == 0 ? 0.0 : static_cast<double>(l1_misses) / static_cast<double>(n);
    }

    friend bool operator==(const SimResult&, const SimResult&) = default;
};

/// On-chip scratchpad: one cycle of address phase plus one 64-bit beat per cycle.
[[nodiscard]] constexpr Cycles l2spm_access_cycles(std::uint64_t len_bytes) noexcept {
    return 1 + ceil_div(len_bytes, 8);
}

/// Replays `trace` fully serialized: an access that hits L1 takes one cycle,
/// anything else stalls for the downstream latency on top of that. Counters
/// and cycles cover records from `measure_from` on; earlier records only
/// warm the caches. `llc` may be null for the no-LLC configurations.
template <MemoryBackend B>
SimResult run_trace(const std::vector<TraceRecord>& trace, L1Cache& l1, Llc* llc, const B& backend,
                    const AddressMap& map, std::size_t measure_from = 0) {
    SimResult res;
    LlcStats llc_at_start{};
    if (llc && measure_from == 0) llc_at_start = llc->stats();

    for (std::size_t i = 0; i < trace.size(); ++i) {
        const TraceRecord& rec = trace[i];
        if (llc && i == measure_from) llc_at_start = llc->stats();
        if (!is_valid(rec)) throw TraceError(i, "invalid size or misaligned access");
        const RegionTag region = classify_address(map, rec.addr);
        if (region == RegionTag::Unmapped) throw TraceError(i, "unmapped address");

        const bool measured = i >= measure_from;
        const L1Outcome o = l1.access(rec);
        Cycles c = 1;
        if (o.downstream) {
            const MemTxn& txn = *o.downstream;
            if (region == RegionTag::L2spm) {
                c += l2spm_access_cycles(txn.len_bytes);
                if (measured) ++res.l2spm_accesses;
            } else if (llc) {
                const LlcAccessResult r = llc->access(txn, backend);
                c += r.soc_cycles;
                if (measured) {
                    for (const auto& t : r.backend_txns)
                        (t.txn.kind == AccessKind::Read ? res.dram_read_bytes : res.dram_write_bytes) += t.txn.total_bytes();
                }
            } else {
                c += backend.soc_cycles(txn);
                if (measured) (txn.kind == AccessKind::Read ? res.dram_read_bytes : res.dram_write_bytes) += txn.total_bytes();
            }
        }
        if (!measured) continue;
        ++res.records;
        res.cycles += c;
        (o.hit ? res.l1_hits : res.l1_misses) += 1;
    }

    if (llc && measure_from < trace.size()) {
        const LlcStats& now = llc->stats();
        res.llc = {now.hits - llc_at_start.hits, now.misses - llc_at_start.misses,
                   now.evictions - llc_at_start.evictions, now.writebacks - llc_at_start.writebacks,
                   now.cycles - llc_at_start.cycles};
    }
    return res;
}

}  // namespace ulpsim
