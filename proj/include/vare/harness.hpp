#pragma once

#include "vare/engine.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vare {

struct ExperimentConfig {
    std::string problem = "DF4";
    int variables = 0;  // 0 selects the problem default
    int severity = 10;  // n_t
    int frequency = 10; // tau_t
    int changes = 49;
    int runs = 1;
    std::uint64_t seed = 1;
    Variant variant = Variant::vare;
    int lag = 5;
    int gamma = 1;
    Operator op = Operator::rm_meda;
    int divisions = 0;
    std::size_t pf_samples = 10000;
    std::filesystem::path out = "results";
    int workers = 1;

    void validate() const;
    /// Engine settings of run `run` (seed = base seed + run).
    [[nodiscard]] EngineConfig engine_config(int run) const;
    [[nodiscard]] nlohmann::ordered_json to_json() const;
};

std::string_view to_string(Operator op);
Operator parse_operator(std::string_view name);

struct RunResult {
    int run = 0;
    std::uint64_t seed = 0;
    std::vector<EnvironmentRecord> records;
    DynamicMetrics metrics;
    double runtime_ms = 0.0;
};

struct ExperimentSummary {
    std::string problem;
    std::string variant;
    double migd_mean = 0.0;
    double migd_std = 0.0;
    double mhv_mean = 0.0;
    double mhv_std = 0.0;
    std::vector<double> migd_runs;
    std::vector<double> mhv_runs;
    double runtime_s = 0.0;

    [[nodiscard]] nlohmann::ordered_json to_json() const;
    static ExperimentSummary from_json(const nlohmann::json& j);
};

struct ExperimentResult {
    std::vector<RunResult> runs;
    ExperimentSummary summary;
};

/// Executes the seeded runs (in parallel up to `workers`) without touching the filesystem.
ExperimentResult execute_experiment(const ExperimentConfig& config);

/// Executes and writes trace.csv, timing.csv, summary.json and config.json into config.out.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// "run,environment,igd,hv" rows; depends only on config and seeds.
std::string trace_csv(std::span<const RunResult> runs);
/// "run,environment,wall_ms" rows.
std::string timing_csv(std::span<const RunResult> runs);

double mean(std::span<const double> values);
/// Sample standard deviation; 0 for fewer than two values.
double stddev(std::span<const double> values);

struct RankSumTest {
    double statistic = 0.0;  // rank sum of the first sample
    double z = 0.0;
    double p_value = 1.0;
    bool significant = false;
};

/// Two-sided Wilcoxon rank-sum test, normal approximation with tie and continuity corrections.
RankSumTest wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b, double alpha = 0.05);

struct Comparison {
    RankSumTest migd;
    RankSumTest mhv;
    std::string migd_verdict;  // "a-better", "b-better" or "equivalent"
    std::string mhv_verdict;
    std::vector<int> ranks;  // of (a, b) under paired nondominated sorting

    [[nodiscard]] nlohmann::ordered_json to_json() const;
};

/// Requires at least 5 per-run values in each summary.
Comparison compare(const ExperimentSummary& a, const ExperimentSummary& b, double alpha = 0.05);

enum class SweepParameter { lag, gamma };
SweepParameter parse_sweep_parameter(std::string_view name);

struct SweepPoint {
    int value = 0;
    ExperimentSummary summary;
};

/// One experiment per value, each written under config.out / "<parameter>-<value>", plus
/// config.out / "sweep.csv" with columns value,mhv_mean,mhv_std.
std::vector<SweepPoint> sweep(const ExperimentConfig& config, SweepParameter parameter,
                              std::span<const int> values);

std::string format_double(double v);

}  // namespace vare
