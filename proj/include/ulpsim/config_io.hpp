#pragma once

/// @file config_io.hpp
/// @brief Reading and writing the configuration and kernel-catalog documents.
///
/// The grammar is plain JSON with two restrictions: unknown keys are errors,
/// and integers may alternatively be written as "0x..." hex strings (used for
/// addresses). Missing keys take their default values.

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ulpsim/soc_config.hpp"

namespace ulpsim {

using json = nlohmann::json;

namespace detail {

inline std::string hex(std::uint64_t v) {
    std::ostringstream os;
    os << "0x" << std::hex << v;
    return os.str();
}

/// Walks one JSON object, remembering which keys were consumed so that
/// `finish()` can reject the rest.
class ObjectReader {
public:
    ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(path_.empty() ? "<document>" : path_, "expected an object");
    }

    [[nodiscard]] std::string at(std::string_view key) const {
        return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
    }

    [[nodiscard]] const json* child(std::string_view key) {
        const auto it = j_.find(key);
        if (it == j_.end()) return nullptr;
        used_.insert(std::string(key));
        return &*it;
    }

    void read(std::string_view key, std::uint64_t& out) {
        if (const json* v = child(key)) out = to_uint(*v, at(key));
    }
    void read(std::string_view key, std::uint32_t& out) {
        if (const json* v = child(key)) {
            const auto u = to_uint(*v, at(key));
            if (u > 0xFFFF'FFFFull) throw ConfigError(at(key), "value too large");
            out = static_cast<std::uint32_t>(u);
        }
    }
    void read(std::string_view key, double& out) {
        if (const json* v = child(key)) {
            if (!v->is_number()) throw ConfigError(at(key), "expected a number");
            out = v->get<double>();
        }
    }
    void read(std::string_view key, std::string& out) {
        if (const json* v = child(key)) {
            if (!v->is_string()) throw ConfigError(at(key), "expected a string");
            out = v->get<std::string>();
        }
    }

    void finish() const {
        for (const auto& [k, _] : j_.items())
            if (!used_.contains(k)) throw ConfigError(at(k), "unknown key");
    }

    static std::uint64_t to_uint(const json& v, const std::string& path) {
        if (v.is_number_unsigned()) return v.get<std::uint64_t>();
        if (v.is_number_integer()) {
            const auto i = v.get<std::int64_t>();
            if (i < 0) throw ConfigError(path, "must be non-negative");
            return static_cast<std::uint64_t>(i);
        }
        if (v.is_string()) {
            const auto s = v.get<std::string>();
            if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
                std::size_t pos = 0;
                try {
                    const auto u = std::stoull(s.substr(2), &pos, 16);
                    if (pos == s.size() - 2) return u;
                } catch (const std::exception&) {
                }
            }
            throw ConfigError(path, "malformed hex integer '" + s + "'");
        }
        throw ConfigError(path, "expected a non-negative integer");
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> used_;
};

inline Region read_region(const json& j, const std::string& path, Region r) {
    ObjectReader o(j, path);
    o.read("base", r.base);
    o.read("size", r.size);
    o.finish();
    return r;
}

inline void read_calibration(const json& j, const std::string& path, CalibrationTable& cal) {
    ObjectReader o(j, path);
    o.read("offload_fixed_cycles", cal.offload_fixed_cycles);
    if (const json* ks = o.child("kernels")) {
        ObjectReader kr(*ks, o.at("kernels"));
        for (const auto& [name, val] : ks->items()) {
            (void)kr.child(name);
            CalibrationEntry e = cal.entries.contains(name) ? cal.entries.at(name) : CalibrationEntry{};
            ObjectReader er(val, kr.at(name));
            er.read("host_ops_per_cycle", e.host_ops_per_cycle);
            er.read("pmca_ops_per_cycle", e.pmca_ops_per_cycle);
            er.read("code_size_bytes", e.code_size_bytes);
            er.finish();
            cal.entries[name] = e;
        }
    }
    o.finish();
}

inline json calibration_to_json(const CalibrationTable& cal) {
    json ks = json::object();
    for (const auto& [name, e] : cal.entries)
        ks[name] = {{"host_ops_per_cycle", e.host_ops_per_cycle},
                    {"pmca_ops_per_cycle", e.pmca_ops_per_cycle},
                    {"code_size_bytes", e.code_size_bytes}};
    return {{"offload_fixed_cycles", cal.offload_fixed_cycles}, {"kernels", ks}};
}

inline json parse_document(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<document>", std::string("parse error: ") + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SimError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace detail

/// Builds a validated configuration from a parsed document.
[[nodiscard]] inline SocConfig config_from_json(const json& doc) {
    SocConfig cfg;
    detail::ObjectReader top(doc, "");

    if (const json* j = top.child("clocks")) {
        detail::ObjectReader o(*j, "clocks");
        for (Domain d : kAllDomains) {
            const std::string name(to_string(d));
            if (const json* dj = o.child(name)) {
                detail::ObjectReader dr(*dj, o.at(name));
                dr.read("freq_mhz", cfg.clocks[d].freq_mhz);
                dr.read("max_freq_mhz", cfg.clocks[d].max_freq_mhz);
                dr.finish();
            }
        }
        o.finish();
    }
    if (const json* j = top.child("l1")) {
        detail::ObjectReader o(*j, "l1");
        o.read("size_bytes", cfg.l1.size_bytes);
        o.read("way_bytes", cfg.l1.way_bytes);
        o.read("line_bytes", cfg.l1.line_bytes);
        o.finish();
    }
    if (const json* j = top.child("llc")) {
        detail::ObjectReader o(*j, "llc");
        o.read("axi_dw_bits", cfg.llc.axi_dw_bits);
        o.read("n_blocks", cfg.llc.n_blocks);
        o.read("n_lines", cfg.llc.n_lines);
        o.read("n_ways", cfg.llc.n_ways);
        o.finish();
    }
    if (const json* j = top.child("hyper")) {
        detail::ObjectReader o(*j, "hyper");
        o.read("n_cs", cfg.hyper.n_cs);
        o.read("n_buses", cfg.hyper.n_buses);
        o.read("mem_bytes_per_cs", cfg.hyper.mem_bytes_per_cs);
        o.read("bus_freq_mhz", cfg.hyper.bus_freq_mhz);
        o.read("t_init_bus_cycles", cfg.hyper.t_init_bus_cycles);
        o.read("device_power_mw", cfg.hyper.device_power_mw);
        o.finish();
    }
    if (const json* j = top.child("ddr")) {
        detail::ObjectReader o(*j, "ddr");
        o.read("fixed_latency_soc_cycles", cfg.ddr.fixed_latency_soc_cycles);
        o.read("bytes_per_soc_cycle", cfg.ddr.bytes_per_soc_cycle);
        double p = -1.0;
        if (j->contains("subsystem_power_mw")) {
            o.read("subsystem_power_mw", p);
            cfg.ddr.subsystem_power_mw = p;
        }
        o.finish();
    }
    // DRAM size follows the HyperRAM capacity and the cacheable window
    // follows the DRAM region unless they are given explicitly.
    cfg.address_map.dram.size = cfg.hyper.total_bytes();
    cfg.address_map.cacheable_window = cfg.address_map.dram;
    if (const json* j = top.child("address_map")) {
        detail::ObjectReader o(*j, "address_map");
        auto& m = cfg.address_map;
        if (const json* r = o.child("l2spm")) m.l2spm = detail::read_region(*r, o.at("l2spm"), m.l2spm);
        if (const json* r = o.child("dram")) m.dram = detail::read_region(*r, o.at("dram"), m.dram);
        m.cacheable_window = m.dram;
        if (const json* r = o.child("cacheable_window"))
            m.cacheable_window = detail::read_region(*r, o.at("cacheable_window"), m.dram);
        o.finish();
    }
    if (const json* j = top.child("power")) {
        if (!j->is_array()) throw ConfigError("power", "expected an array");
        cfg.power.clear();
        for (std::size_t i = 0; i < j->size(); ++i) {
            const std::string path = "power[" + std::to_string(i) + "]";
            detail::ObjectReader o((*j)[i], path);
            PowerParams p;
            o.read("component", p.component);
            std::string dom = "host-domain";
            o.read("domain", dom);
            const auto d = domain_from_string(dom);
            if (!d) throw ConfigError(path + ".domain", "unknown clock domain '" + dom + "'");
            p.domain = *d;
            o.read("leakage_mw", p.leakage_mw);
            o.read("dynamic_uw_per_mhz", p.dynamic_uw_per_mhz);
            o.read("max_freq_mhz", p.max_freq_mhz);
            o.finish();
            cfg.power.push_back(std::move(p));
        }
    }
    if (const json* j = top.child("calibration")) detail::read_calibration(*j, "calibration", cfg.calibration);
    top.finish();

    validate(cfg);
    return cfg;
}

[[nodiscard]] inline SocConfig load_config(std::string_view text) { return config_from_json(detail::parse_document(text)); }

[[nodiscard]] inline SocConfig load_config_file(const std::string& path) { return load_config(detail::read_file(path)); }

/// Complete document with every field spelled out; loads back to an equal config.
[[nodiscard]] inline json to_json(const SocConfig& cfg) {
    json doc = json::object();
    json clocks = json::object();
    for (Domain d : kAllDomains)
        clocks[std::string(to_string(d))] = {{"freq_mhz", cfg.clocks[d].freq_mhz},
                                             {"max_freq_mhz", cfg.clocks[d].max_freq_mhz}};
    doc["clocks"] = clocks;
    auto region = [](const Region& r) { return json{{"base", detail::hex(r.base)}, {"size", r.size}}; };
    doc["address_map"] = {{"l2spm", region(cfg.address_map.l2spm)},
                          {"dram", region(cfg.address_map.dram)},
                          {"cacheable_window", region(cfg.address_map.cacheable_window)}};
    doc["l1"] = {{"size_bytes", cfg.l1.size_bytes}, {"way_bytes", cfg.l1.way_bytes}, {"line_bytes", cfg.l1.line_bytes}};
    doc["llc"] = {{"axi_dw_bits", cfg.llc.axi_dw_bits},
                  {"n_blocks", cfg.llc.n_blocks},
                  {"n_lines", cfg.llc.n_lines},
                  {"n_ways", cfg.llc.n_ways}};
    doc["hyper"] = {{"n_cs", cfg.hyper.n_cs},
                    {"n_buses", cfg.hyper.n_buses},
                    {"mem_bytes_per_cs", cfg.hyper.mem_bytes_per_cs},
                    {"bus_freq_mhz", cfg.hyper.bus_freq_mhz},
                    {"t_init_bus_cycles", cfg.hyper.t_init_bus_cycles},
                    {"device_power_mw", cfg.hyper.device_power_mw}};
    json ddr = {{"fixed_latency_soc_cycles", cfg.ddr.fixed_latency_soc_cycles},
                {"bytes_per_soc_cycle", cfg.ddr.bytes_per_soc_cycle}};
    if (cfg.ddr.subsystem_power_mw) ddr["subsystem_power_mw"] = *cfg.ddr.subsystem_power_mw;
    doc["ddr"] = ddr;
    json power = json::array();
    for (const auto& p : cfg.power)
        power.push_back({{"component", p.component},
                         {"domain", std::string(to_string(p.domain))},
                         {"leakage_mw", p.leakage_mw},
                         {"dynamic_uw_per_mhz", p.dynamic_uw_per_mhz},
                         {"max_freq_mhz", p.max_freq_mhz}});
    doc["power"] = power;
    doc["calibration"] = detail::calibration_to_json(cfg.calibration);
    return doc;
}

[[nodiscard]] inline std::string serialize(const SocConfig& cfg) { return to_json(cfg).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Kernel catalog
// ---------------------------------------------------------------------------

/// Kernel shapes plus the calibration they resolve against (the config's
/// table with any overrides from the catalog document merged in).
struct KernelCatalog {
    std::vector<KernelShape> kernels;
    CalibrationTable calibration;

    [[nodiscard]] std::vector<KernelDescriptor> descriptors() const { return resolve_all(kernels, calibration); }
    [[nodiscard]] KernelDescriptor descriptor(std::string_view name) const {
        for (const auto& s : kernels)
            if (s.name == name) return resolve(s, calibration);
        throw SimError("unknown kernel '" + std::string(name) + "'");
    }
};

[[nodiscard]] inline KernelCatalog default_catalog(const SocConfig& cfg) {
    return {default_kernel_shapes(), cfg.calibration};
}

[[nodiscard]] inline KernelCatalog catalog_from_json(const json& doc, const SocConfig& cfg) {
    KernelCatalog cat{{}, cfg.calibration};
    detail::ObjectReader top(doc, "");
    if (const json* c = top.child("calibration")) detail::read_calibration(*c, "calibration", cat.calibration);
    if (const json* ks = top.child("kernels")) {
        if (!ks->is_array()) throw ConfigError("kernels", "expected an array");
        for (std::size_t i = 0; i < ks->size(); ++i) {
            const std::string path = "kernels[" + std::to_string(i) + "]";
            detail::ObjectReader o((*ks)[i], path);
            KernelShape s;
            o.read("name", s.name);
            if (s.name.empty()) throw ConfigError(path + ".name", "required");
            o.read("total_ops", s.total_ops);
            o.read("bytes_in", s.bytes_in);
            o.read("bytes_out", s.bytes_out);
            o.read("tile_bytes", s.tile_bytes);
            o.read("invocations", s.invocations);
            o.finish();
            cat.kernels.push_back(std::move(s));
        }
    }
    top.finish();
    (void)cat.descriptors();  // every kernel must resolve and validate
    return cat;
}

[[nodiscard]] inline KernelCatalog load_catalog(std::string_view text, const SocConfig& cfg) {
    return catalog_from_json(detail::parse_document(text), cfg);
}

[[nodiscard]] inline json to_json(const KernelCatalog& cat) {
    json ks = json::array();
    for (const auto& s : cat.kernels)
        ks.push_back({{"name", s.name},
                      {"total_ops", s.total_ops},
                      {"bytes_in", s.bytes_in},
                      {"bytes_out", s.bytes_out},
                      {"tile_bytes", s.tile_bytes},
                      {"invocations", s.invocations}});
    return {{"calibration", detail::calibration_to_json(cat.calibration)}, {"kernels", ks}};
}

}  // namespace ulpsim
