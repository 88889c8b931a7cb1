#pragma once

/// @file traces.hpp
/// @brief Trace files (`R|W,<hex-address>,<len>` per line, `#` comments) and
/// seeded synthetic trace generators.

#include <cstdint>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ulpsim/host_model.hpp"

namespace ulpsim {

/// Reads a trace. Errors carry the 1-based line number as the index.
[[nodiscard]] inline std::vector<TraceRecord> parse_trace(std::istream& in) {
    std::vector<TraceRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;

        std::istringstream ls(line.substr(first));
        std::string op, addr, len;
        if (!std::getline(ls, op, ',') || !std::getline(ls, addr, ',') || !std::getline(ls, len))
            throw TraceError(lineno, "expected R|W,<hex-address>,<len>");
        TraceRecord r;
        if (op == "R")
            r.op = AccessKind::Read;
        else if (op == "W")
            r.op = AccessKind::Write;
        else
            throw TraceError(lineno, "operation must be R or W");
        try {
            std::size_t pos = 0;
            r.addr = std::stoull(addr, &pos, 16);
            if (pos != addr.size()) throw std::invalid_argument(addr);
            r.len_bytes = static_cast<std::uint32_t>(std::stoul(len, &pos, 10));
            if (pos != len.size()) throw std::invalid_argument(len);
        } catch (const std::exception&) {
            throw TraceError(lineno, "malformed address or length");
        }
        if (!is_valid(r)) throw TraceError(lineno, "length must be 1, 2, 4 or 8 and naturally aligned");
        out.push_back(r);
    }
    return out;
}

inline void write_trace(std::ostream& out, const std::vector<TraceRecord>& trace, const std::string& comment = {}) {
    if (!comment.empty()) out << "# " << comment << '\n';
    for (const auto& r : trace)
        out << (r.op == AccessKind::Read ? 'R' : 'W') << ",0x" << std::hex << r.addr << std::dec << ',' << r.len_bytes
            << '\n';
}

/// Seeded generator with platform-independent output (raw mt19937_64 words;
/// standard distributions are implementation-defined).
class TraceRng {
public:
    explicit TraceRng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t below(std::uint64_t n) { return eng_() % n; }
    bool chance(double p) { return static_cast<double>(eng_() >> 11) * 0x1.0p-53 < p; }

private:
    std::mt19937_64 eng_;
};

/// Uniformly random 8-byte accesses over [base, base + span): no locality.
[[nodiscard]] inline std::vector<TraceRecord> random_trace(std::uint64_t seed, std::size_t n, Addr base,
                                                           std::uint64_t span, double write_fraction = 0.3) {
    TraceRng rng(seed);
    std::vector<TraceRecord> t;
    t.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const AccessKind op = rng.chance(write_fraction) ? AccessKind::Write : AccessKind::Read;
        t.push_back({op, base + rng.below(span / 8) * 8, 8});
    }
    return t;
}

/// A working set walked in sequential runs of 8-byte accesses with random
/// jumps between runs, preceded by one read pass over the whole set.
struct LocalityTraceSpec {
    std::uint64_t working_set_bytes = 64 * KiB;
    std::size_t records = 20'000;
    double write_fraction = 0.25;
    double mean_run = 16.0;  ///< expected sequential accesses per run
    Addr base = 0x8000'0000;
};

[[nodiscard]] inline StrideTrace gen_locality_trace(const LocalityTraceSpec& spec, std::uint64_t seed) {
    if (spec.working_set_bytes < 8 || spec.working_set_bytes % 8 != 0)
        throw std::invalid_argument("locality trace: working set must be a positive multiple of 8");
    if (spec.mean_run < 1.0) throw std::invalid_argument("locality trace: mean_run must be >= 1");
    TraceRng rng(seed);
    StrideTrace t;
    const std::uint64_t words = spec.working_set_bytes / 8;
    for (std::uint64_t w = 0; w < words; ++w) t.records.push_back({AccessKind::Read, spec.base + w * 8, 8});
    t.warmup_records = t.records.size();

    std::uint64_t pos = rng.below(words);
    for (std::size_t i = 0; i < spec.records; ++i) {
        if (rng.chance(1.0 / spec.mean_run))
            pos = rng.below(words);
        else
            pos = (pos + 1) % words;
        const AccessKind op = rng.chance(spec.write_fraction) ? AccessKind::Write : AccessKind::Read;
        t.records.push_back({op, spec.base + pos * 8, 8});
    }
    return t;
}

}  // namespace ulpsim
