#pragma once

// Brute-force cache references. Each keeps, per set, the explicit list of
// resident lines with a last-use timestamp and scans it linearly.

#include <cstdint>
#include <vector>

#include "ulpsim/host_model.hpp"
#include "ulpsim/llc.hpp"
#include "ulpsim/traces.hpp"

namespace ref {

struct Entry {
    std::uint64_t line = 0;
    std::uint64_t last_use = 0;
    bool dirty = false;
};

struct RefEvent {
    bool hit = false;
    bool evicted = false;
    std::uint64_t victim_line = 0;
    bool victim_dirty = false;

    friend bool operator==(const RefEvent&, const RefEvent&) = default;
};

/// Write-back, write-allocate LRU cache over line numbers.
class LruWriteBack {
public:
    LruWriteBack(std::uint64_t sets, std::uint64_t ways) : sets_(sets), ways_(ways), lists_(sets) {}

    RefEvent touch(std::uint64_t line, bool write) {
        auto& set = lists_[line % sets_];
        ++clock_;
        for (auto& e : set) {
            if (e.line == line) {
                e.last_use = clock_;
                e.dirty = e.dirty || write;
                return {true, false, 0, false};
            }
        }
        RefEvent ev;
        if (set.size() == ways_) {
            std::size_t oldest = 0;
            for (std::size_t i = 1; i < set.size(); ++i)
                if (set[i].last_use < set[oldest].last_use) oldest = i;
            ev.evicted = true;
            ev.victim_line = set[oldest].line;
            ev.victim_dirty = set[oldest].dirty;
            set.erase(set.begin() + static_cast<std::ptrdiff_t>(oldest));
        }
        set.push_back({line, clock_, write});
        return ev;
    }

    [[nodiscard]] std::uint64_t resident_lines() const {
        std::uint64_t n = 0;
        for (const auto& s : lists_) n += s.size();
        return n;
    }

private:
    std::uint64_t sets_, ways_;
    std::vector<std::vector<Entry>> lists_;
    std::uint64_t clock_ = 0;
};

/// Write-through, no-write-allocate LRU; write hits refresh recency.
class L1Reference {
public:
    L1Reference(std::uint64_t sets, std::uint64_t ways, std::uint64_t line_bytes)
        : sets_(sets), ways_(ways), line_bytes_(line_bytes), lists_(sets) {}

    bool access(const ulpsim::TraceRecord& r) {
        const std::uint64_t line = r.addr / line_bytes_;
        auto& set = lists_[line % sets_];
        ++clock_;
        for (auto& e : set) {
            if (e.line == line) {
                e.last_use = clock_;
                return true;
            }
        }
        if (r.op == ulpsim::AccessKind::Write) return false;
        if (set.size() == ways_) {
            std::size_t oldest = 0;
            for (std::size_t i = 1; i < set.size(); ++i)
                if (set[i].last_use < set[oldest].last_use) oldest = i;
            set.erase(set.begin() + static_cast<std::ptrdiff_t>(oldest));
        }
        set.push_back({line, clock_, false});
        return false;
    }

private:
    std::uint64_t sets_, ways_, line_bytes_;
    std::vector<std::vector<Entry>> lists_;
    std::uint64_t clock_ = 0;
};

/// Random mixed trace with enough reuse to exercise hits, misses and evictions.
inline std::vector<ulpsim::TraceRecord> mixed_trace(std::uint64_t seed, std::size_t n, ulpsim::Addr base,
                                                    std::uint64_t span) {
    ulpsim::TraceRng rng(seed);
    std::vector<ulpsim::TraceRecord> t;
    t.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto op = rng.chance(0.35) ? ulpsim::AccessKind::Write : ulpsim::AccessKind::Read;
        // Half the accesses revisit a small hot region.
        const std::uint64_t range = rng.chance(0.5) ? span / 16 : span;
        t.push_back({op, base + rng.below(range / 8) * 8, 8});
    }
    return t;
}

/// Compares the L1 model against the reference record by record. Returns the
/// index of the first mismatch, or n on agreement.
inline std::size_t l1_first_mismatch(const ulpsim::L1Config& cfg, const std::vector<ulpsim::TraceRecord>& trace) {
    ulpsim::L1Cache l1(cfg);
    L1Reference r(cfg.sets(), cfg.ways(), cfg.line_bytes);
    for (std::size_t i = 0; i < trace.size(); ++i)
        if (l1.access(trace[i]).hit != r.access(trace[i])) return i;
    return trace.size();
}

/// Same for the LLC, including eviction victims and their dirty state.
inline std::size_t llc_first_mismatch(const ulpsim::LlcConfig& cfg, const std::vector<ulpsim::TraceRecord>& trace) {
    ulpsim::Llc llc(cfg, {0, ~std::uint64_t{0}});
    LruWriteBack r(cfg.n_lines, cfg.n_ways);
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const auto& rec = trace[i];
        const auto d = ulpsim::make_descriptor(cfg, rec.addr, rec.op);
        const auto got = llc.lookup_and_update(d);
        const auto want = r.touch(rec.addr / cfg.line_bytes(), rec.op == ulpsim::AccessKind::Write);
        RefEvent g{got.hit, got.eviction.has_value(), got.eviction ? got.eviction->victim_addr / cfg.line_bytes() : 0,
                   got.eviction ? got.eviction->dirty : false};
        if (!(g == want) || !llc.invariants_hold()) return i;
    }
    return trace.size();
}

}  // namespace ref
