#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ulpsim/harness.hpp"

using namespace ulpsim;
namespace fs = std::filesystem;

namespace {

const SocConfig kCfg = default_config();

Experiment parse(const std::string& text) { return load_experiments(text).at(0); }

std::string run_csv(const std::string& text, unsigned jobs = 1) { return to_csv(run_experiment(kCfg, parse(text), jobs)); }

fs::path temp_dir() {
    const fs::path d = fs::temp_directory_path() / ("ulpsim-test-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST(Csv, Formatting) {
    EXPECT_EQ(format_cell(std::int64_t{-42}), "-42");
    EXPECT_EQ(format_cell(std::int64_t{123456789012}), "123456789012");
    EXPECT_EQ(format_cell(1.0 / 3.0), "0.333333");
    EXPECT_EQ(format_cell(2.0), "2");
    EXPECT_EQ(format_cell(1.62049e10), "1.62049e+10");
    EXPECT_EQ(format_cell(std::numeric_limits<double>::infinity()), "inf");
    EXPECT_EQ(format_cell(std::string("hyper+llc")), "hyper+llc");
}

TEST(Csv, EmptyTableIsHeaderOnly) {
    const Table t{{"a", "b"}, {}};
    EXPECT_EQ(to_csv(t), "a,b\n");
    const fs::path p = temp_dir() / "empty.csv";
    emit_csv(t, p);
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), "a,b\n");
}

TEST(Csv, RowWidthChecked) {
    Table t{{"a", "b"}, {}};
    EXPECT_THROW(t.add({std::int64_t{1}}), std::logic_error);
}

TEST(Csv, UnwritablePathFails) {
    EXPECT_THROW(emit_csv(Table{{"a"}, {}}, "/nonexistent-dir/x.csv"), SimError);
}

TEST(Csv, RoundTripAggregates) {
    const Table t = run_experiment(kCfg, parse(R"({"kind": "stride-sweep"})"));
    std::istringstream in(to_csv(t));
    const CsvData d = parse_csv(in);
    ASSERT_EQ(d.header, t.columns);
    ASSERT_EQ(d.rows.size(), t.rows.size());
    const std::size_t cyc = d.column("cycles");
    const std::size_t miss = d.column("l1_miss_ratio");
    std::int64_t sum_table = 0, sum_csv = 0;
    double miss_table = 0, miss_csv = 0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        sum_table += std::get<std::int64_t>(t.rows[i][cyc]);
        sum_csv += std::stoll(d.rows[i][cyc]);
        miss_table += std::get<double>(t.rows[i][miss]);
        miss_csv += std::stod(d.rows[i][miss]);
    }
    EXPECT_EQ(sum_csv, sum_table);
    EXPECT_DOUBLE_EQ(miss_csv, miss_table);  // ratios here are exactly 0 or 1
}

TEST(Experiments, StrideSweepSchemaAndOrder) {
    const Table t = run_experiment(kCfg, parse(R"({"kind": "stride-sweep", "strides": [1, 16]})"));
    EXPECT_EQ(t.columns, (std::vector<std::string>{"stride", "config", "l1_miss_ratio", "llc_miss_ratio", "cycles"}));
    ASSERT_EQ(t.rows.size(), 8u);
    EXPECT_EQ(std::get<std::string>(t.rows[0][1]), "ddr4+llc");
    EXPECT_EQ(std::get<std::string>(t.rows[3][1]), "hyper");
    EXPECT_EQ(std::get<std::int64_t>(t.rows[4][0]), 16);
}

TEST(Experiments, DeterministicAcrossRunsAndJobs) {
    for (const char* e : {R"({"kind": "stride-sweep", "seed": 3})",
                          R"({"kind": "llc-compare", "seed": 3, "working_sets_kib": [32, 160], "records": 4000})",
                          R"({"kind": "pmca-speedup"})", R"({"kind": "ccr-efficiency"})",
                          R"({"kind": "power-report"})"}) {
        const std::string a = run_csv(e), b = run_csv(e), c = run_csv(e, 4);
        EXPECT_EQ(a, b) << e;
        EXPECT_EQ(a, c) << e;
    }
}

TEST(Experiments, SeedChangesRandomisedTraces) {
    const std::string base = R"({"kind": "llc-compare", "working_sets_kib": [160], "records": 4000, "seed": )";
    EXPECT_NE(run_csv(base + "1}"), run_csv(base + "2}"));
}

TEST(Experiments, PmcaSpeedupHeadline) {
    const Table t = run_experiment(kCfg, parse(R"({"kind": "pmca-speedup", "kernels": ["matmul-int8"]})"));
    ASSERT_EQ(t.rows.size(), 2u);
    const auto& r = t.rows[1];
    EXPECT_EQ(std::get<std::int64_t>(r[1]), 1000);
    EXPECT_NEAR(std::get<double>(r[6]), 112.0, 112.0 * 0.05);
    EXPECT_NEAR(std::get<double>(r[8]), 157.0, 157.0 * 0.01);
}

TEST(Experiments, TraceReplayFromFile) {
    const fs::path dir = temp_dir();
    {
        std::ofstream out(dir / "t.trace");
        write_trace(out, gen_stride_trace({16, 4}).records);
    }
    {
        std::ofstream out(dir / "e.json");
        out << R"({"kind": "trace-replay", "trace": "t.trace", "warmup_records": 576, "configs": ["hyper"]})";
    }
    const auto es = load_experiments_file((dir / "e.json").string());
    const Table t = run_experiment(kCfg, es.at(0));
    ASSERT_EQ(t.rows.size(), 1u);
    EXPECT_EQ(std::get<std::int64_t>(t.rows[0][1]), 3 * 64);
    EXPECT_DOUBLE_EQ(std::get<double>(t.rows[0][2]), 1.0);
}

TEST(Experiments, MultiDocument) {
    const auto es = load_experiments(R"({"experiments": [{"kind": "power-report"}, {"kind": "stride-sweep", "name": "s"}]})");
    ASSERT_EQ(es.size(), 2u);
    EXPECT_EQ(es[0].output_stem(), "power-report");
    EXPECT_EQ(es[1].output_stem(), "s");
}

TEST(Experiments, ParseErrors) {
    auto path_of = [](const std::string& text) -> std::string {
        try {
            (void)load_experiments(text);
        } catch (const ConfigError& e) {
            return e.path();
        }
        return "<no error>";
    };
    EXPECT_EQ(path_of(R"({"kind": "fig9"})"), "experiment.kind");
    EXPECT_EQ(path_of(R"({"kind": "stride-sweep", "configs": ["sram"]})"), "experiment.configs");
    EXPECT_EQ(path_of(R"({"kind": "stride-sweep", "strides": [1, "x"]})"), "experiment.strides[1]");
    EXPECT_EQ(path_of(R"({"kind": "power-report", "strides": [1]})"), "experiment.strides");
    EXPECT_EQ(path_of(R"({"kind": "trace-replay"})"), "experiment.trace");
    EXPECT_EQ(path_of(R"({"kind": "llc-compare"})"), "experiment");
    EXPECT_EQ(path_of(R"({"experiments": [{"kind": "power-report"}, {"kind": "nope"}]})"), "experiments[1].kind");
}

TEST(Experiments, UnresolvableReferences) {
    EXPECT_THROW((void)run_experiment(kCfg, parse(R"({"kind": "pmca-speedup", "kernels": ["conv-int4"]})")), SimError);
    EXPECT_THROW((void)run_experiment(kCfg, parse(R"({"kind": "trace-replay", "trace": "/nonexistent.trace"})")),
                 SimError);
    EXPECT_THROW(
        (void)run_experiment(kCfg, parse(R"({"kind": "ccr-efficiency", "calibration_entry": "conv-int4"})")),
        SimError);
}
