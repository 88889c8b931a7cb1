#include <gtest/gtest.h>

#include <deque>
#include <set>

#include "reference_models.hpp"
#include "ulpsim/llc.hpp"

using namespace ulpsim;

namespace {

const Region kWindow{0x8000'0000, 512 * MiB};

// Backend that records what it was asked to do and charges a fixed cost.
struct RecordingBackend {
    mutable std::vector<MemTxn> seen;
    Cycles cost = 40;
    [[nodiscard]] Cycles soc_cycles(const MemTxn& t) const {
        seen.push_back(t);
        return cost;
    }
    [[nodiscard]] BackendKind kind() const { return BackendKind::None; }
};
static_assert(MemoryBackend<RecordingBackend>);

std::vector<Addr> line_addrs(const std::vector<LineDescriptor>& ds) {
    std::vector<Addr> out;
    for (const auto& d : ds) out.push_back(d.line_addr);
    return out;
}

}  // namespace

TEST(LlcGeometry, DefaultIs128KiB) {
    const LlcConfig c;
    EXPECT_EQ(c.size_bytes(), 131072u);
    EXPECT_EQ(c.line_bytes(), 64u);
    EXPECT_EQ(c.n_lines, 256u);
    EXPECT_EQ(c.n_ways, 8u);
    EXPECT_EQ(c.block_bytes(), 8u);
}

TEST(LlcGeometry, ValidationRejectsNonPowersOfTwo) {
    LlcConfig c;
    c.n_lines = 300;
    EXPECT_THROW(validate(c), ConfigError);
    c = LlcConfig{};
    c.axi_dw_bits = 48;
    EXPECT_THROW(validate(c), ConfigError);
    c = LlcConfig{};
    c.n_ways = 3;
    EXPECT_THROW(validate(c), ConfigError);
}

TEST(Decompose, AlignedMultiLine) {
    const auto ds = decompose(LlcConfig{}, MemTxn::read(0x100, 256));
    EXPECT_EQ(line_addrs(ds), (std::vector<Addr>{0x100, 0x140, 0x180, 0x1C0}));
    for (const auto& d : ds) EXPECT_EQ(d.blocks, 8u);
}

TEST(Decompose, StraddlingAccess) {
    const auto ds = decompose(LlcConfig{}, MemTxn::read(0x13C, 8));
    EXPECT_EQ(line_addrs(ds), (std::vector<Addr>{0x100, 0x140}));
    EXPECT_EQ(ds[0].blocks, 1u);
    EXPECT_EQ(ds[1].blocks, 1u);
}

TEST(Decompose, ExactLine) {
    const auto ds = decompose(LlcConfig{}, MemTxn::read(0x140, 64));
    ASSERT_EQ(ds.size(), 1u);
    EXPECT_EQ(ds[0].line_addr, 0x140u);
    EXPECT_EQ(ds[0].blocks, 8u);
}

TEST(Decompose, SetAndTagFields) {
    const LlcConfig c;
    const auto d = make_descriptor(c, 0x8000'0000 + 5 * 64 + 3 * 256 * 64 + 17, AccessKind::Write);
    EXPECT_EQ(d.set_index, 5u);
    EXPECT_EQ(d.tag, (0x8000'0000u / (256 * 64)) + 3);
    EXPECT_EQ(d.kind, AccessKind::Write);
}

TEST(Decompose, TwoDimensionalBurstCoversEveryTouchedLine) {
    const LlcConfig c;
    const MemTxn t(AccessKind::Read, 0x1000, 24, Initiator::Udma, Burst2d{6, 40});
    std::set<Addr> want;
    for (std::uint32_t i = 0; i < 6; ++i)
        for (Addr a = 0x1000 + i * 40; a < 0x1000 + i * 40 + 24; ++a) want.insert(align_down(a, 64));
    const auto ds = decompose(c, t);
    const auto lines = line_addrs(ds);
    const std::set<Addr> got(lines.begin(), lines.end());
    EXPECT_EQ(got, want);
    for (std::size_t i = 1; i < ds.size(); ++i) EXPECT_GT(ds[i].line_addr, ds[i - 1].line_addr);
}

TEST(Lookup, ColdMissThenHit) {
    Llc llc(LlcConfig{}, kWindow);
    const auto d = make_descriptor(llc.config(), 0x8000'0040, AccessKind::Read);
    const auto first = llc.lookup_and_update(d);
    EXPECT_FALSE(first.hit);
    EXPECT_FALSE(first.eviction.has_value());
    EXPECT_TRUE(llc.lookup_and_update(d).hit);
}

TEST(Lookup, NinthTagEvictsTheFirst) {
    const LlcConfig c;
    Llc llc(c, kWindow);
    ref::LruWriteBack reference(c.n_lines, c.n_ways);
    const std::uint64_t set_stride = c.n_lines * c.line_bytes();
    std::vector<Addr> addrs;
    for (int i = 0; i < 9; ++i) addrs.push_back(0x8000'0000 + i * set_stride);
    addrs.push_back(addrs[0]);

    std::vector<LookupOutcome> got;
    for (Addr a : addrs) {
        got.push_back(llc.lookup_and_update(make_descriptor(c, a, AccessKind::Read)));
        const auto want = reference.touch(a / c.line_bytes(), false);
        EXPECT_EQ(got.back().hit, want.hit);
        EXPECT_EQ(got.back().eviction.has_value(), want.evicted);
    }
    ASSERT_TRUE(got[8].eviction.has_value());
    EXPECT_EQ(got[8].eviction->victim_addr, addrs[0]);
    EXPECT_FALSE(got[9].hit);
}

TEST(Lookup, WriteMarksDirtyAndEvictionReportsIt) {
    LlcConfig c;
    c.n_ways = 1;
    Llc llc(c, kWindow);
    const std::uint64_t set_stride = c.n_lines * c.line_bytes();
    llc.lookup_and_update(make_descriptor(c, 0x8000'0000, AccessKind::Write));
    const auto out = llc.lookup_and_update(make_descriptor(c, 0x8000'0000 + set_stride, AccessKind::Read));
    ASSERT_TRUE(out.eviction.has_value());
    EXPECT_TRUE(out.eviction->dirty);
    EXPECT_EQ(llc.stats().writebacks, 1u);
}

TEST(Lookup, MatchesReferenceOnRandomTraces) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto trace = ref::mixed_trace(seed, 10'000, 0x8000'0000, 1 * MiB);
        EXPECT_EQ(ref::llc_first_mismatch(LlcConfig{}, trace), trace.size()) << "seed " << seed;
    }
}

TEST(Lookup, MatchesReferenceOnSmallGeometries) {
    for (const LlcConfig c : {LlcConfig{64, 8, 4, 2}, LlcConfig{32, 4, 16, 4}, LlcConfig{64, 2, 1, 8}}) {
        const auto trace = ref::mixed_trace(99, 10'000, 0, 64 * KiB);
        EXPECT_EQ(ref::llc_first_mismatch(c, trace), trace.size());
    }
}

TEST(Lookup, HitIffLruStackDistanceBelowWays) {
    // Independent characterisation of LRU: a line hits iff fewer than n_ways
    // distinct lines of its set were touched since its previous use.
    LlcConfig c{64, 8, 16, 4};
    Llc llc(c, {0, 1 * MiB});
    std::vector<std::deque<std::uint64_t>> history(c.n_lines);
    const auto trace = ref::mixed_trace(3, 10'000, 0, 32 * KiB);
    for (const auto& r : trace) {
        const std::uint64_t line = r.addr / c.line_bytes();
        auto& h = history[line % c.n_lines];
        std::set<std::uint64_t> between;
        bool seen = false;
        for (auto it = h.rbegin(); it != h.rend(); ++it) {
            if (*it == line) {
                seen = true;
                break;
            }
            between.insert(*it);
        }
        const bool expect_hit = seen && between.size() < c.n_ways;
        ASSERT_EQ(llc.lookup_and_update(make_descriptor(c, r.addr, r.op)).hit, expect_hit);
        h.push_back(line);
    }
}

TEST(Access, BypassGoesStraightThrough) {
    Llc llc(LlcConfig{}, {0x8000'0000, 256 * MiB});
    RecordingBackend be;
    const MemTxn t = MemTxn::read(0x9000'0000, 64);
    const auto r = llc.access(t, be);
    ASSERT_EQ(r.backend_txns.size(), 1u);
    EXPECT_EQ(r.backend_txns[0].kind, LlcTrafficKind::PassThrough);
    EXPECT_EQ(r.backend_txns[0].txn, t);
    EXPECT_EQ(r.hit_count, 0u);
    EXPECT_EQ(r.miss_count, 0u);
    EXPECT_EQ(r.soc_cycles, be.cost);
    EXPECT_EQ(llc.valid_lines(), 0u);
}

TEST(Access, WarmFullLineHitTakesNineCycles) {
    Llc llc(LlcConfig{}, kWindow);
    RecordingBackend be;
    (void)llc.access(MemTxn::read(0x8000'0000, 64), be);
    be.seen.clear();
    const auto r = llc.access(MemTxn::read(0x8000'0000, 64), be);
    // Audit: one tag lookup plus one cycle for each of the 8 blocks.
    const Cycles tag = 1;
    const Cycles blocks = 64 / LlcConfig{}.block_bytes();
    EXPECT_EQ(r.soc_cycles, tag + blocks);
    EXPECT_EQ(r.soc_cycles, 9u);
    EXPECT_TRUE(r.backend_txns.empty());
    EXPECT_TRUE(be.seen.empty());
}

TEST(Access, ColdMissWithCleanVictimRefillsOnce) {
    Llc llc(LlcConfig{}, kWindow);
    RecordingBackend be;
    const auto r = llc.access(MemTxn::read(0x8000'0010, 8), be);
    ASSERT_EQ(r.backend_txns.size(), 1u);
    EXPECT_EQ(r.backend_txns[0].kind, LlcTrafficKind::Refill);
    EXPECT_EQ(r.backend_txns[0].txn.addr, 0x8000'0000u);
    EXPECT_EQ(r.backend_txns[0].txn.len_bytes, 64u);
    EXPECT_EQ(r.backend_txns[0].txn.kind, AccessKind::Read);
    EXPECT_EQ(r.soc_cycles, 1 + be.cost + 1);
}

TEST(Access, DirtyMissWritesBackBeforeRefill) {
    LlcConfig c;
    c.n_ways = 1;
    Llc llc(c, kWindow);
    RecordingBackend be;
    (void)llc.access(MemTxn::write(0x8000'0000, 8), be);
    be.seen.clear();
    const Addr conflicting = 0x8000'0000 + c.n_lines * c.line_bytes();
    const auto r = llc.access(MemTxn::read(conflicting, 8), be);
    ASSERT_EQ(r.backend_txns.size(), 2u);
    EXPECT_EQ(r.backend_txns[0].kind, LlcTrafficKind::WriteBack);
    EXPECT_EQ(r.backend_txns[0].txn.addr, 0x8000'0000u);
    EXPECT_EQ(r.backend_txns[0].txn.kind, AccessKind::Write);
    EXPECT_EQ(r.backend_txns[1].kind, LlcTrafficKind::Refill);
    EXPECT_EQ(r.backend_txns[1].txn.addr, conflicting);
    EXPECT_EQ(r.soc_cycles, 1 + 2 * be.cost + 1);
}

TEST(Access, TrafficConservation) {
    // Over any trace from empty: refilled lines minus evicted lines equals the
    // growth of the valid-line count, and write-back bytes equal dirty
    // evictions times the line size.
    const LlcConfig c{64, 8, 16, 2};
    Llc llc(c, kWindow);
    RecordingBackend be;
    std::uint64_t refill_bytes = 0, wb_bytes = 0;
    const auto trace = ref::mixed_trace(11, 20'000, 0x8000'0000, 64 * KiB);
    for (const auto& rec : trace) {
        const MemTxn t = rec.op == AccessKind::Read ? MemTxn::read(rec.addr, rec.len_bytes)
                                                    : MemTxn::write(rec.addr, rec.len_bytes);
        for (const auto& x : llc.access(t, be).backend_txns) {
            ASSERT_NE(x.kind, LlcTrafficKind::PassThrough);
            (x.kind == LlcTrafficKind::Refill ? refill_bytes : wb_bytes) += x.txn.len_bytes;
            const AccessKind want = x.kind == LlcTrafficKind::Refill ? AccessKind::Read : AccessKind::Write;
            ASSERT_EQ(x.txn.kind, want);
        }
    }
    const auto& s = llc.stats();
    EXPECT_GT(s.writebacks, 0u);
    EXPECT_EQ(refill_bytes - c.line_bytes() * s.evictions, c.line_bytes() * llc.valid_lines());
    EXPECT_EQ(wb_bytes, c.line_bytes() * s.writebacks);
    EXPECT_EQ(refill_bytes, c.line_bytes() * s.misses);
    EXPECT_TRUE(llc.invariants_hold());
}

TEST(Access, StatsAccumulateCycles) {
    Llc llc(LlcConfig{}, kWindow);
    RecordingBackend be;
    Cycles total = 0;
    for (Addr a = 0x8000'0000; a < 0x8000'0000 + 4096; a += 32) total += llc.access(MemTxn::read(a, 32), be).soc_cycles;
    EXPECT_EQ(llc.stats().cycles, total);
    EXPECT_EQ(llc.stats().hits + llc.stats().misses, 128u);
    EXPECT_EQ(llc.stats().misses, 64u);
    EXPECT_DOUBLE_EQ(llc.stats().miss_ratio(), 0.5);
    llc.reset_stats();
    EXPECT_EQ(llc.stats(), LlcStats{});
}
