// Command-line front end: runs experiments and writes one CSV per experiment.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>

#include "ulpsim/ulpsim.hpp"

namespace fs = std::filesystem;
using namespace ulpsim;

namespace {

SocConfig config_or_default(const std::string& path) {
    return path.empty() ? default_config() : load_config_file(path);
}

int run(const std::string& config_path, const std::string& experiment_path, const fs::path& out_dir,
        std::optional<std::uint64_t> seed, unsigned jobs) {
    const SocConfig cfg = config_or_default(config_path);
    auto experiments = load_experiments_file(experiment_path);
    fs::create_directories(out_dir);
    for (auto& e : experiments) {
        if (seed) e.seed = *seed;
        const fs::path out = out_dir / (e.output_stem() + ".csv");
        emit_csv(run_experiment(cfg, e, jobs), out);
        std::cout << out.string() << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trace-driven performance, power and energy model of a heterogeneous RISC-V SoC"};
    app.set_version_flag("--version", "ulpsim 1.0");

    std::string config_path, experiment_path, out_dir = ".";
    std::optional<std::uint64_t> seed;
    unsigned jobs = 1;
    app.add_option("--config", config_path, "configuration file (built-in defaults when omitted)");
    app.add_option("--experiment", experiment_path, "experiment file");
    app.add_option("--out", out_dir, "output directory for CSV files");
    app.add_option("--seed", seed, "override the experiment seed");
    app.add_option("--jobs", jobs, "concurrent sweep points")->check(CLI::Range(1u, 256u));

    auto* validate_cmd = app.add_subcommand("validate", "check a configuration (and experiments) without running");
    std::string v_config, v_experiment;
    validate_cmd->add_option("--config", v_config, "configuration file")->required();
    validate_cmd->add_option("--experiment", v_experiment, "experiment file");

    auto* dump_cmd = app.add_subcommand("dump-config", "print the effective configuration");
    std::string d_config;
    dump_cmd->add_option("--config", d_config, "configuration file (built-in defaults when omitted)");

    auto* trace_cmd = app.add_subcommand("stride-trace", "write the stride benchmark trace for stride S");
    std::uint32_t t_stride = 1, t_rounds = 10;
    trace_cmd->add_option("--stride", t_stride, "stride in cache lines")->required();
    trace_cmd->add_option("--rounds", t_rounds, "measured rounds + 1");

    app.require_subcommand(0, 1);
    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate_cmd) {
            const SocConfig cfg = load_config_file(v_config);
            if (!v_experiment.empty()) (void)load_experiments_file(v_experiment);
            std::cout << "ok: " << v_config << " (LLC " << cfg.llc.size_bytes() << " B, DRAM "
                      << cfg.hyper.total_bytes() << " B)\n";
            return 0;
        }
        if (*dump_cmd) {
            std::cout << serialize(config_or_default(d_config));
            return 0;
        }
        if (*trace_cmd) {
            const SocConfig cfg = default_config();
            const auto t = gen_stride_trace({t_stride, t_rounds, 8, cfg.address_map.dram.base}, cfg.l1);
            write_trace(std::cout, t.records,
                        "stride " + std::to_string(t_stride) + ", warm-up records " + std::to_string(t.warmup_records));
            return 0;
        }
        if (experiment_path.empty()) {
            std::cerr << "error: --experiment is required\n" << app.help();
            return 2;
        }
        return run(config_path, experiment_path, out_dir, seed, jobs);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
    } catch (const TraceError& e) {
        std::cerr << "trace error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
    }
    return 1;
}
