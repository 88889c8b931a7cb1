#pragma once

/// @file harness.hpp
/// @brief Named experiments over the models and their CSV output.
///
/// Every experiment is a pure function of (configuration, experiment spec,
/// seed). Sweep points are independent simulation instances; with jobs > 1
/// they run concurrently and are merged back in declaration order.

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <string>
#include <variant>
#include <vector>

#include "ulpsim/config_io.hpp"
#include "ulpsim/energy.hpp"
#include "ulpsim/host_model.hpp"
#include "ulpsim/traces.hpp"

namespace ulpsim {

// ---------------------------------------------------------------------------
// Result tables and CSV
// ---------------------------------------------------------------------------

using Cell = std::variant<std::string, std::int64_t, double>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row) {
        if (row.size() != columns.size()) throw std::logic_error("Table::add: row width mismatch");
        rows.push_back(std::move(row));
    }
};

/// Integers verbatim, reals with 6 significant digits.
[[nodiscard]] inline std::string format_cell(const Cell& c) {
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    const double d = std::get<double>(c);
    if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", d);
    return buf;
}

inline void write_csv(std::ostream& out, const Table& t) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
        out << '\n';
    }
}

[[nodiscard]] inline std::string to_csv(const Table& t) {
    std::ostringstream os;
    write_csv(os, t);
    return os.str();
}

inline void emit_csv(const Table& t, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw SimError("cannot write '" + path.string() + "'");
    write_csv(out, t);
    if (!out) throw SimError("I/O error writing '" + path.string() + "'");
}

/// Header plus rows of raw fields; cells are never quoted by `write_csv`.
struct CsvData {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] std::size_t column(std::string_view name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw SimError("no column '" + std::string(name) + "'");
    }
};

[[nodiscard]] inline CsvData parse_csv(std::istream& in) {
    auto split = [](const std::string& line) {
        std::vector<std::string> f;
        std::string cur;
        std::istringstream ls(line);
        while (std::getline(ls, cur, ',')) f.push_back(cur);
        if (!line.empty() && line.back() == ',') f.emplace_back();
        return f;
    };
    CsvData d;
    std::string line;
    if (!std::getline(in, line)) return d;
    d.header = split(line);
    while (std::getline(in, line))
        if (!line.empty()) d.rows.push_back(split(line));
    return d;
}

// ---------------------------------------------------------------------------
// Memory configurations
// ---------------------------------------------------------------------------

enum class MemoryConfig : std::uint8_t { Ddr4Llc, HyperLlc, Ddr4, Hyper };

inline constexpr std::array<MemoryConfig, 4> kAllMemoryConfigs = {MemoryConfig::Ddr4Llc, MemoryConfig::HyperLlc,
                                                                  MemoryConfig::Ddr4, MemoryConfig::Hyper};

[[nodiscard]] constexpr std::string_view to_string(MemoryConfig m) noexcept {
    switch (m) {
        case MemoryConfig::Ddr4Llc: return "ddr4+llc";
        case MemoryConfig::HyperLlc: return "hyper+llc";
        case MemoryConfig::Ddr4: return "ddr4";
        case MemoryConfig::Hyper: return "hyper";
    }
    return "?";
}

[[nodiscard]] inline MemoryConfig memory_config_from_string(std::string_view s) {
    for (MemoryConfig m : kAllMemoryConfigs)
        if (to_string(m) == s) return m;
    throw SimError("unknown memory configuration '" + std::string(s) + "'");
}

[[nodiscard]] constexpr bool has_llc(MemoryConfig m) noexcept {
    return m == MemoryConfig::Ddr4Llc || m == MemoryConfig::HyperLlc;
}

[[nodiscard]] constexpr BackendKind backend_of(MemoryConfig m) noexcept {
    return (m == MemoryConfig::Ddr4Llc || m == MemoryConfig::Ddr4) ? BackendKind::Lpddr : BackendKind::HyperRam;
}

/// Fresh caches and backend, then one replay of `trace`.
[[nodiscard]] inline SimResult simulate(const SocConfig& cfg, MemoryConfig mem, const std::vector<TraceRecord>& trace,
                                        std::size_t measure_from = 0) {
    L1Cache l1(cfg.l1);
    std::optional<Llc> llc;
    if (has_llc(mem)) llc.emplace(cfg.llc, cfg.address_map.cacheable_window);
    const AnyBackend backend = make_backend(cfg, backend_of(mem));
    return std::visit(
        [&](const auto& be) { return run_trace(trace, l1, llc ? &*llc : nullptr, be, cfg.address_map, measure_from); },
        backend);
}

// ---------------------------------------------------------------------------
// Experiments
// ---------------------------------------------------------------------------

enum class ExperimentKind : std::uint8_t { StrideSweep, LlcCompare, PmcaSpeedup, CcrEfficiency, PowerReport, TraceReplay };

[[nodiscard]] constexpr std::string_view to_string(ExperimentKind k) noexcept {
    switch (k) {
        case ExperimentKind::StrideSweep: return "stride-sweep";
        case ExperimentKind::LlcCompare: return "llc-compare";
        case ExperimentKind::PmcaSpeedup: return "pmca-speedup";
        case ExperimentKind::CcrEfficiency: return "ccr-efficiency";
        case ExperimentKind::PowerReport: return "power-report";
        case ExperimentKind::TraceReplay: return "trace-replay";
    }
    return "?";
}

struct StrideSweepParams {
    std::vector<std::uint32_t> strides{1, 2, 4, 8, 16, 32};
    std::uint32_t rounds = 10;
    std::uint32_t access_bytes = 8;
};

struct LlcCompareParams {
    std::vector<std::string> trace_files;          ///< replayed as-is
    std::vector<std::uint64_t> working_sets_kib;   ///< synthetic locality traces
    std::size_t records = 20'000;
    double write_fraction = 0.25;
    double mean_run = 16.0;
    std::uint32_t traces_per_working_set = 1;
};

struct PmcaSpeedupParams {
    std::string catalog_file;  ///< empty: shipped catalog
    std::vector<std::string> kernels;  ///< empty: all
    std::vector<std::uint64_t> invocations{1, 1000};
};

struct CcrEfficiencyParams {
    std::vector<double> ccr_grid{0.1, 0.2, 0.3, 0.5, 0.7, 1.0, 1.5, 2.0, 3.0, 4.0};
    std::string calibration_entry = "matmul-int8";
    std::uint64_t bytes_in = 256 * KiB;
    std::uint64_t bytes_out = 64 * KiB;
    std::uint64_t tile_bytes = 32 * KiB;
    bool include_catalog = true;
    bool reads_only = false;
};

struct TraceReplayParams {
    std::string trace_file;
    std::uint64_t warmup_records = 0;
};

struct Experiment {
    ExperimentKind kind = ExperimentKind::PowerReport;
    std::string name;  ///< output file stem; defaults to the kind
    std::uint64_t seed = 1;
    std::vector<MemoryConfig> configs{kAllMemoryConfigs.begin(), kAllMemoryConfigs.end()};
    std::variant<std::monostate, StrideSweepParams, LlcCompareParams, PmcaSpeedupParams, CcrEfficiencyParams,
                 TraceReplayParams>
        params;

    [[nodiscard]] std::string output_stem() const { return name.empty() ? std::string(to_string(kind)) : name; }
};

namespace detail {

template <typename T>
void read_list(ObjectReader& o, std::string_view key, std::vector<T>& out) {
    const json* v = o.child(key);
    if (!v) return;
    if (!v->is_array()) throw ConfigError(o.at(key), "expected an array");
    out.clear();
    for (std::size_t i = 0; i < v->size(); ++i) {
        const std::string p = o.at(key) + "[" + std::to_string(i) + "]";
        const json& e = (*v)[i];
        if constexpr (std::is_same_v<T, std::string>) {
            if (!e.is_string()) throw ConfigError(p, "expected a string");
            out.push_back(e.get<std::string>());
        } else if constexpr (std::is_floating_point_v<T>) {
            if (!e.is_number()) throw ConfigError(p, "expected a number");
            out.push_back(e.get<double>());
        } else {
            const auto u = ObjectReader::to_uint(e, p);
            if (u > std::numeric_limits<T>::max()) throw ConfigError(p, "value too large");
            out.push_back(static_cast<T>(u));
        }
    }
}

inline void read_bool(ObjectReader& o, std::string_view key, bool& out) {
    if (const json* v = o.child(key)) {
        if (!v->is_boolean()) throw ConfigError(o.at(key), "expected true or false");
        out = v->get<bool>();
    }
}

inline std::string resolve_path(const std::string& p, const std::filesystem::path& base_dir) {
    const std::filesystem::path fp(p);
    return (fp.is_absolute() || base_dir.empty()) ? p : (base_dir / fp).string();
}

}  // namespace detail

/// Parses one experiment object. Relative file names resolve against `base_dir`.
[[nodiscard]] inline Experiment experiment_from_json(const json& j, const std::filesystem::path& base_dir = {},
                                                     const std::string& path = "experiment") {
    Experiment e;
    detail::ObjectReader o(j, path);
    std::string kind;
    o.read("kind", kind);
    bool found = false;
    for (auto k : {ExperimentKind::StrideSweep, ExperimentKind::LlcCompare, ExperimentKind::PmcaSpeedup,
                   ExperimentKind::CcrEfficiency, ExperimentKind::PowerReport, ExperimentKind::TraceReplay})
        if (to_string(k) == kind) e.kind = k, found = true;
    if (!found) throw ConfigError(o.at("kind"), "unknown experiment kind '" + kind + "'");
    o.read("name", e.name);
    o.read("seed", e.seed);
    std::vector<std::string> configs;
    detail::read_list(o, "configs", configs);
    if (!configs.empty()) {
        e.configs.clear();
        for (const auto& c : configs) {
            try {
                e.configs.push_back(memory_config_from_string(c));
            } catch (const SimError& err) {
                throw ConfigError(o.at("configs"), err.what());
            }
        }
    }

    switch (e.kind) {
        case ExperimentKind::StrideSweep: {
            StrideSweepParams p;
            detail::read_list(o, "strides", p.strides);
            o.read("rounds", p.rounds);
            o.read("access_bytes", p.access_bytes);
            e.params = p;
            break;
        }
        case ExperimentKind::LlcCompare: {
            LlcCompareParams p;
            detail::read_list(o, "traces", p.trace_files);
            for (auto& f : p.trace_files) f = detail::resolve_path(f, base_dir);
            detail::read_list(o, "working_sets_kib", p.working_sets_kib);
            std::uint64_t records = p.records;
            o.read("records", records);
            p.records = records;
            o.read("write_fraction", p.write_fraction);
            o.read("mean_run", p.mean_run);
            o.read("traces_per_working_set", p.traces_per_working_set);
            if (p.trace_files.empty() && p.working_sets_kib.empty())
                throw ConfigError(path, "llc-compare needs traces or working_sets_kib");
            e.params = p;
            break;
        }
        case ExperimentKind::PmcaSpeedup: {
            PmcaSpeedupParams p;
            o.read("catalog", p.catalog_file);
            if (!p.catalog_file.empty()) p.catalog_file = detail::resolve_path(p.catalog_file, base_dir);
            detail::read_list(o, "kernels", p.kernels);
            detail::read_list(o, "invocations", p.invocations);
            e.params = p;
            break;
        }
        case ExperimentKind::CcrEfficiency: {
            CcrEfficiencyParams p;
            detail::read_list(o, "ccr_grid", p.ccr_grid);
            o.read("calibration_entry", p.calibration_entry);
            o.read("bytes_in", p.bytes_in);
            o.read("bytes_out", p.bytes_out);
            o.read("tile_bytes", p.tile_bytes);
            detail::read_bool(o, "include_catalog", p.include_catalog);
            detail::read_bool(o, "reads_only", p.reads_only);
            e.params = p;
            break;
        }
        case ExperimentKind::PowerReport: break;
        case ExperimentKind::TraceReplay: {
            TraceReplayParams p;
            o.read("trace", p.trace_file);
            if (p.trace_file.empty()) throw ConfigError(o.at("trace"), "required");
            p.trace_file = detail::resolve_path(p.trace_file, base_dir);
            o.read("warmup_records", p.warmup_records);
            e.params = p;
            break;
        }
    }
    o.finish();
    return e;
}

/// An experiment document holds either one experiment object or
/// `{"experiments": [...]}`.
[[nodiscard]] inline std::vector<Experiment> load_experiments(std::string_view text,
                                                              const std::filesystem::path& base_dir = {}) {
    const json doc = detail::parse_document(text);
    if (doc.is_object() && doc.contains("experiments")) {
        detail::ObjectReader o(doc, "");
        const json* list = o.child("experiments");
        o.finish();
        if (!list->is_array()) throw ConfigError("experiments", "expected an array");
        std::vector<Experiment> out;
        for (std::size_t i = 0; i < list->size(); ++i)
            out.push_back(experiment_from_json((*list)[i], base_dir, "experiments[" + std::to_string(i) + "]"));
        return out;
    }
    return {experiment_from_json(doc, base_dir)};
}

[[nodiscard]] inline std::vector<Experiment> load_experiments_file(const std::string& path) {
    return load_experiments(detail::read_file(path), std::filesystem::path(path).parent_path());
}

namespace detail {

/// Evaluates `fn(i)` for i in [0, n), concurrently when jobs > 1, and returns
/// the results in index order.
template <typename Fn>
auto run_points(std::size_t n, unsigned jobs, Fn fn) {
    using R = decltype(fn(std::size_t{0}));
    std::vector<R> out;
    out.reserve(n);
    if (jobs <= 1) {
        for (std::size_t i = 0; i < n; ++i) out.push_back(fn(i));
        return out;
    }
    for (std::size_t start = 0; start < n; start += jobs) {
        std::vector<std::future<R>> batch;
        for (std::size_t i = start; i < std::min<std::size_t>(n, start + jobs); ++i)
            batch.push_back(std::async(std::launch::async, fn, i));
        for (auto& f : batch) out.push_back(f.get());
    }
    return out;
}

inline std::int64_t i64(std::uint64_t v) { return static_cast<std::int64_t>(v); }

}  // namespace detail

[[nodiscard]] inline Table power_report(const SocConfig& cfg) {
    Table t{{"component", "domain", "leakage_mw", "dynamic_uw_per_mhz", "max_freq_mhz", "max_power_mw",
             "freq_mhz", "power_mw"},
            {}};
    double leak = 0, dyn = 0, pmax = 0, pcfg = 0;
    for (const auto& p : cfg.power) {
        const double f = cfg.clocks[p.domain].freq_mhz;
        const double at_max = component_power_mw(p, p.max_freq_mhz);
        const double at_cfg = component_power_mw(p, f);
        leak += p.leakage_mw;
        dyn += p.dynamic_uw_per_mhz;
        pmax += at_max;
        pcfg += at_cfg;
        t.add({p.component, std::string(to_string(p.domain)), p.leakage_mw, p.dynamic_uw_per_mhz, p.max_freq_mhz,
               at_max, f, at_cfg});
    }
    t.add({std::string("total"), std::string("-"), leak, dyn, 0.0, pmax, 0.0, pcfg});
    return t;
}

[[nodiscard]] inline Table stride_sweep(const SocConfig& cfg, const Experiment& e, const StrideSweepParams& p,
                                        unsigned jobs) {
    Table t{{"stride", "config", "l1_miss_ratio", "llc_miss_ratio", "cycles"}, {}};
    struct Point {
        std::uint32_t stride;
        MemoryConfig mem;
    };
    std::vector<Point> points;
    for (auto s : p.strides)
        for (auto m : e.configs) points.push_back({s, m});
    const auto results = detail::run_points(points.size(), jobs, [&](std::size_t i) {
        StrideBenchmarkSpec spec{points[i].stride, p.rounds, p.access_bytes, cfg.address_map.dram.base};
        const StrideTrace tr = gen_stride_trace(spec, cfg.l1);
        return simulate(cfg, points[i].mem, tr.records, tr.warmup_records);
    });
    for (std::size_t i = 0; i < points.size(); ++i)
        t.add({detail::i64(points[i].stride), std::string(to_string(points[i].mem)), results[i].l1_miss_ratio(),
               results[i].llc.miss_ratio(), detail::i64(results[i].cycles)});
    return t;
}

inline const std::vector<std::string> kReplayColumns = {"records", "l1_miss_ratio", "llc_miss_ratio", "cycles",
                                                        "dram_read_bytes", "dram_write_bytes"};

inline void append_replay(std::vector<Cell>& row, const SimResult& r) {
    row.insert(row.end(), {detail::i64(r.records), r.l1_miss_ratio(), r.llc.miss_ratio(), detail::i64(r.cycles),
                           detail::i64(r.dram_read_bytes), detail::i64(r.dram_write_bytes)});
}

[[nodiscard]] inline Table llc_compare(const SocConfig& cfg, const Experiment& e, const LlcCompareParams& p,
                                       unsigned jobs) {
    struct Named {
        std::string name;
        StrideTrace trace;
    };
    std::vector<Named> traces;
    for (const auto& f : p.trace_files) {
        std::ifstream in(f);
        if (!in) throw SimError("cannot open trace '" + f + "'");
        traces.push_back({std::filesystem::path(f).filename().string(), {parse_trace(in), 0}});
    }
    for (auto ws : p.working_sets_kib) {
        for (std::uint32_t k = 0; k < p.traces_per_working_set; ++k) {
            const std::uint64_t seed = e.seed * 1'000'003 + ws * 131 + k;
            LocalityTraceSpec spec{ws * KiB, p.records, p.write_fraction, p.mean_run, cfg.address_map.dram.base};
            traces.push_back({"ws" + std::to_string(ws) + "k-" + std::to_string(k), gen_locality_trace(spec, seed)});
        }
    }

    std::vector<std::string> cols{"trace", "config"};
    cols.insert(cols.end(), kReplayColumns.begin(), kReplayColumns.end());
    Table t{cols, {}};
    const std::size_t nc = e.configs.size();
    const auto results = detail::run_points(traces.size() * nc, jobs, [&](std::size_t i) {
        const auto& tr = traces[i / nc].trace;
        return simulate(cfg, e.configs[i % nc], tr.records, tr.warmup_records);
    });
    for (std::size_t i = 0; i < results.size(); ++i) {
        std::vector<Cell> row{traces[i / nc].name, std::string(to_string(e.configs[i % nc]))};
        append_replay(row, results[i]);
        t.add(std::move(row));
    }
    return t;
}

[[nodiscard]] inline Table trace_replay(const SocConfig& cfg, const Experiment& e, const TraceReplayParams& p,
                                        unsigned jobs) {
    std::ifstream in(p.trace_file);
    if (!in) throw SimError("cannot open trace '" + p.trace_file + "'");
    const auto trace = parse_trace(in);
    std::vector<std::string> cols{"config"};
    cols.insert(cols.end(), kReplayColumns.begin(), kReplayColumns.end());
    Table t{cols, {}};
    const auto results = detail::run_points(e.configs.size(), jobs, [&](std::size_t i) {
        return simulate(cfg, e.configs[i], trace, p.warmup_records);
    });
    for (std::size_t i = 0; i < results.size(); ++i) {
        std::vector<Cell> row{std::string(to_string(e.configs[i]))};
        append_replay(row, results[i]);
        t.add(std::move(row));
    }
    return t;
}

[[nodiscard]] inline Table pmca_speedup(const SocConfig& cfg, const PmcaSpeedupParams& p) {
    const KernelCatalog cat =
        p.catalog_file.empty() ? default_catalog(cfg) : load_catalog(detail::read_file(p.catalog_file), cfg);
    std::vector<KernelDescriptor> kernels;
    if (p.kernels.empty())
        kernels = cat.descriptors();
    else
        for (const auto& n : p.kernels) kernels.push_back(cat.descriptor(n));

    const HyperRamBackend hyper = make_hyper_backend(cfg);
    const PowerParams* pmca = cfg.find_power("pmca");
    const PowerParams* cva6 = cfg.find_power("cva6");
    if (!pmca || !cva6) throw SimError("pmca-speedup needs 'pmca' and 'cva6' power entries");
    const double pmca_w = component_power_mw(*pmca, cfg.clocks[pmca->domain].freq_mhz) * 1e-3;
    const double cva6_w = component_power_mw(*cva6, cfg.clocks[cva6->domain].freq_mhz) * 1e-3;

    Table t{{"kernel", "invocations", "inner_cycles", "overhead_cycles", "pmca_cycles", "host_cycles", "speedup",
             "pmca_gops", "pmca_gops_per_w", "host_gops_per_w", "efficiency_ratio", "ccr_hyper"},
            {}};
    for (KernelDescriptor k : kernels) {
        for (auto n : p.invocations) {
            k.invocations = n;
            const OffloadCost c = offload_total_cycles(k, hyper, cfg.clocks, cat.calibration.offload_fixed_cycles,
                                                       cfg.address_map.dram.base);
            const double pg = pmca_gops(k, cfg.clocks) / pmca_w;
            const double hg = host_gops(k, cfg.clocks) / cva6_w;
            t.add({k.name, detail::i64(n), c.exec.invocation_cycles, c.overhead_cycles, c.total_cycles, host_cycles(k),
                   host_cycles(k) / c.total_cycles, pmca_gops(k, cfg.clocks), pg, hg, pg / hg,
                   ccr(k, hyper, cfg.clocks, false, cfg.address_map.dram.base).ccr_hyper});
        }
    }
    return t;
}

/// A kernel with the traffic of `p` whose op count puts it at `target_ccr`
/// on the HyperRAM backend.
[[nodiscard]] inline KernelDescriptor synthetic_ccr_kernel(const SocConfig& cfg, const CcrEfficiencyParams& p,
                                                           double target_ccr) {
    const auto it = cfg.calibration.entries.find(p.calibration_entry);
    if (it == cfg.calibration.entries.end())
        throw SimError("unknown kernel '" + p.calibration_entry + "': no calibration entry");
    KernelDescriptor k{"synthetic", 0, p.bytes_in, p.bytes_out, it->second.host_ops_per_cycle,
                       it->second.pmca_ops_per_cycle, it->second.code_size_bytes, 1, p.tile_bytes};
    validate(k);
    const double t_mem = transfer_time_s(k, make_hyper_backend(cfg), cfg.clocks, p.reads_only, cfg.address_map.dram.base);
    k.total_ops = static_cast<std::uint64_t>(
        std::llround(target_ccr * t_mem * cfg.clocks.cluster_mhz() * 1e6 * k.pmca_ops_per_cycle));
    return k;
}

[[nodiscard]] inline Table ccr_efficiency(const SocConfig& cfg, const CcrEfficiencyParams& p) {
    Table t{{"kernel", "ccr_target", "ccr_hyper", "t_compute_s", "t_mem_hyper_s", "t_mem_lpddr_s", "gops_hyper",
             "gops_lpddr", "power_hyper_mw", "power_lpddr_mw", "gops_per_w_hyper", "gops_per_w_lpddr",
             "relative_efficiency"},
            {}};
    const HyperRamBackend hyper = make_hyper_backend(cfg);
    const DdrBackend lpddr = make_ddr_backend(cfg);
    auto row = [&](const std::string& name, Cell target, const KernelDescriptor& k) {
        const KernelAnalysis a = relative_efficiency(cfg, k, hyper, lpddr, p.reads_only);
        t.add({name, std::move(target), a.ccr_hyper, a.t_compute_s, a.hyper.t_mem_s, a.lpddr.t_mem_s, a.hyper.gops,
               a.lpddr.gops, a.hyper.power_mw, a.lpddr.power_mw, a.hyper.gops_per_w, a.lpddr.gops_per_w,
               a.relative_efficiency});
    };
    for (double c : p.ccr_grid) {
        if (!(c > 0.0)) throw ConfigError("ccr_grid", "values must be > 0");
        row("synthetic", c, synthetic_ccr_kernel(cfg, p, c));
    }
    if (p.include_catalog)
        for (const auto& k : default_catalog(cfg).descriptors()) row(k.name, std::string("-"), k);
    return t;
}

[[nodiscard]] inline Table run_experiment(const SocConfig& cfg, const Experiment& e, unsigned jobs = 1) {
    switch (e.kind) {
        case ExperimentKind::PowerReport: return power_report(cfg);
        case ExperimentKind::StrideSweep:
            return stride_sweep(cfg, e, std::holds_alternative<StrideSweepParams>(e.params)
                                            ? std::get<StrideSweepParams>(e.params)
                                            : StrideSweepParams{},
                                jobs);
        case ExperimentKind::LlcCompare: return llc_compare(cfg, e, std::get<LlcCompareParams>(e.params), jobs);
        case ExperimentKind::TraceReplay: return trace_replay(cfg, e, std::get<TraceReplayParams>(e.params), jobs);
        case ExperimentKind::PmcaSpeedup:
            return pmca_speedup(cfg, std::holds_alternative<PmcaSpeedupParams>(e.params)
                                         ? std::get<PmcaSpeedupParams>(e.params)
                                         : PmcaSpeedupParams{});
        case ExperimentKind::CcrEfficiency:
            return ccr_efficiency(cfg, std::holds_alternative<CcrEfficiencyParams>(e.params)
                                           ? std::get<CcrEfficiencyParams>(e.params)
                                           : CcrEfficiencyParams{});
    }
    throw SimError("unhandled experiment kind");
}

}  // namespace ulpsim
