#include "vare/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace vare {

std::string_view to_string(Operator op) {
    switch (op) {
        case Operator::rm_meda: return "rm-meda";
        case Operator::sbx: return "sbx";
    }
    return "unknown";
}

Operator parse_operator(std::string_view name) {
    if (name == "rm-meda") return Operator::rm_meda;
    if (name == "sbx") return Operator::sbx;
    throw std::invalid_argument("unknown operator: " + std::string(name));
}

void ExperimentConfig::validate() const {
    auto problem_instance = make_problem(problem, variables);
    if (runs < 1) throw std::invalid_argument("runs must be at least 1");
    if (changes < 0) throw std::invalid_argument("changes must be nonnegative");
    if (gamma < 1) throw std::invalid_argument("gamma must be at least 1");
    if (workers < 1) throw std::invalid_argument("workers must be at least 1");
    if (divisions == 0 && problem_instance->objectives() > 3)
        throw std::invalid_argument("no default population size for this problem");
    engine_config(0).validate();
}

EngineConfig ExperimentConfig::engine_config(int run) const {
    EngineConfig e;
    e.changes = changes;
    e.change_frequency = frequency;
    e.change_severity = severity;
    e.response.variant = variant;
    e.response.lag = lag;
    e.window_multiplier = gamma;
    e.variation.op = op;
    e.divisions = divisions;
    e.seed = seed + static_cast<std::uint64_t>(run);
    e.pf_samples = pf_samples;
    return e;
}

nlohmann::ordered_json ExperimentConfig::to_json() const {
    return {
        {"problem", problem},
        {"variables", variables},
        {"nt", severity},
        {"taut", frequency},
        {"changes", changes},
        {"runs", runs},
        {"seed", seed},
        {"variant", std::string(to_string(variant))},
        {"lag", lag},
        {"gamma", gamma},
        {"operator", std::string(to_string(op))},
        {"divisions", divisions},
        {"pf_samples", pf_samples},
        {"workers", workers},
    };
}

double mean(std::span<const double> values) {
    if (values.empty()) return 0.0;
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double stddev(std::span<const double> values) {
    if (values.size() < 2) return 0.0;
    const double m = mean(values);
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::ordered_json ExperimentSummary::to_json() const {
    return {
        {"problem", problem},       {"variant", variant},     {"migd_mean", migd_mean},
        {"migd_std", migd_std},     {"mhv_mean", mhv_mean},   {"mhv_std", mhv_std},
        {"migd_runs", migd_runs},   {"mhv_runs", mhv_runs},   {"runtime_s", runtime_s},
    };
}

ExperimentSummary ExperimentSummary::from_json(const nlohmann::json& j) {
    ExperimentSummary s;
    s.problem = j.value("problem", "");
    s.variant = j.value("variant", "");
    s.migd_mean = j.at("migd_mean").get<double>();
    s.migd_std = j.at("migd_std").get<double>();
    s.mhv_mean = j.at("mhv_mean").get<double>();
    s.mhv_std = j.at("mhv_std").get<double>();
    s.migd_runs = j.at("migd_runs").get<std::vector<double>>();
    s.mhv_runs = j.at("mhv_runs").get<std::vector<double>>();
    s.runtime_s = j.value("runtime_s", 0.0);
    return s;
}

ExperimentResult execute_experiment(const ExperimentConfig& config) {
    config.validate();
    const auto started = std::chrono::steady_clock::now();
    const auto problem = make_problem(config.problem, config.variables);
    PfCache cache(*problem, config.pf_samples);

    ExperimentResult result;
    result.runs.resize(static_cast<std::size_t>(config.runs));
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (int r = next++; r < config.runs; r = next++) {
            try {
                const auto t0 = std::chrono::steady_clock::now();
                RunResult rr;
                rr.run = r;
                rr.seed = config.seed + static_cast<std::uint64_t>(r);
                std::vector<MetricRecord> metric_records;
                rr.records = run(*problem, config.engine_config(r), &cache);
                for (const auto& rec : rr.records)
                    metric_records.push_back({rec.environment, rec.igd, rec.hv, rec.wall_ms});
                rr.metrics = aggregate(metric_records);
                rr.runtime_ms =
                    std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
                result.runs[static_cast<std::size_t>(r)] = std::move(rr);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const int threads = std::min(config.workers, config.runs);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    auto& s = result.summary;
    s.problem = problem->name();
    s.variant = std::string(to_string(config.variant));
    for (const auto& rr : result.runs) {
        s.migd_runs.push_back(rr.metrics.migd);
        s.mhv_runs.push_back(rr.metrics.mhv);
    }
    s.migd_mean = mean(s.migd_runs);
    s.migd_std = stddev(s.migd_runs);
    s.mhv_mean = mean(s.mhv_runs);
    s.mhv_std = stddev(s.mhv_runs);
    s.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

std::string trace_csv(std::span<const RunResult> runs) {
    std::ostringstream out;
    out << "run,environment,igd,hv\n";
    for (const auto& rr : runs)
        for (const auto& rec : rr.records)
            out << rr.run << ',' << rec.environment << ',' << format_double(rec.igd) << ','
                << format_double(rec.hv) << '\n';
    return out.str();
}

std::string timing_csv(std::span<const RunResult> runs) {
    std::ostringstream out;
    out << "run,environment,wall_ms\n";
    for (const auto& rr : runs)
        for (const auto& rec : rr.records)
            out << rr.run << ',' << rec.environment << ',' << format_double(rec.wall_ms) << '\n';
    return out.str();
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

void ensure_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    ensure_directory(config.out);
    // Fail on an unwritable directory before spending time on the runs.
    write_file(config.out / "config.json", config.to_json().dump(2) + "\n");

    ExperimentResult result = execute_experiment(config);
    write_file(config.out / "trace.csv", trace_csv(result.runs));
    write_file(config.out / "timing.csv", timing_csv(result.runs));
    write_file(config.out / "summary.json", result.summary.to_json().dump(2) + "\n");
    return result;
}

RankSumTest wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b, double alpha) {
    if (a.empty() || b.empty()) throw std::invalid_argument("wilcoxon_rank_sum: empty sample");
    const std::size_t n1 = a.size();
    const std::size_t n2 = b.size();
    const std::size_t N = n1 + n2;

    std::vector<std::pair<double, int>> pooled;
    pooled.reserve(N);
    for (double v : a) pooled.emplace_back(v, 0);
    for (double v : b) pooled.emplace_back(v, 1);
    std::sort(pooled.begin(), pooled.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    double rank_sum = 0.0;
    double tie_term = 0.0;
    for (std::size_t i = 0; i < N;) {
        std::size_t j = i;
        while (j < N && pooled[j].first == pooled[i].first) ++j;
        const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);
        const auto t = static_cast<double>(j - i);
        tie_term += t * t * t - t;
        for (std::size_t k = i; k < j; ++k)
            if (pooled[k].second == 0) rank_sum += avg_rank;
        i = j;
    }

    RankSumTest out;
    out.statistic = rank_sum;
    const double dn1 = static_cast<double>(n1);
    const double dn2 = static_cast<double>(n2);
    const double dN = static_cast<double>(N);
    const double expected = dn1 * (dN + 1.0) / 2.0;
    const double variance = dn1 * dn2 / 12.0 * ((dN + 1.0) - tie_term / (dN * (dN - 1.0)));
    if (variance <= 0.0) return out;
    const double deviation = std::max(std::abs(rank_sum - expected) - 0.5, 0.0);
    out.z = std::copysign(deviation / std::sqrt(variance), rank_sum - expected);
    out.p_value = std::min(1.0, std::erfc(std::abs(out.z) / std::sqrt(2.0)));
    out.significant = out.p_value < alpha;
    return out;
}

nlohmann::ordered_json Comparison::to_json() const {
    auto test = [](const RankSumTest& t) {
        return nlohmann::ordered_json{{"rank_sum", t.statistic}, {"z", t.z}, {"p_value", t.p_value},
                                      {"significant", t.significant}};
    };
    return {{"migd", test(migd)},
            {"migd_verdict", migd_verdict},
            {"mhv", test(mhv)},
            {"mhv_verdict", mhv_verdict},
            {"ranks", ranks}};
}

Comparison compare(const ExperimentSummary& a, const ExperimentSummary& b, double alpha) {
    if (a.migd_runs.size() < 5 || b.migd_runs.size() < 5 || a.mhv_runs.size() < 5 || b.mhv_runs.size() < 5)
        throw std::invalid_argument("compare: need at least 5 per-run values in each summary");
    Comparison c;
    c.migd = wilcoxon_rank_sum(a.migd_runs, b.migd_runs, alpha);
    c.mhv = wilcoxon_rank_sum(a.mhv_runs, b.mhv_runs, alpha);
    // Lower MIGD is better; higher MHV is better.
    c.migd_verdict = !c.migd.significant ? "equivalent" : (c.migd.z < 0 ? "a-better" : "b-better");
    c.mhv_verdict = !c.mhv.significant ? "equivalent" : (c.mhv.z > 0 ? "a-better" : "b-better");
    const DynamicMetrics paired[2] = {{a.migd_mean, a.mhv_mean}, {b.migd_mean, b.mhv_mean}};
    c.ranks = rank_algorithms(paired);
    return c;
}

SweepParameter parse_sweep_parameter(std::string_view name) {
    if (name == "lag" || name == "l") return SweepParameter::lag;
    if (name == "gamma") return SweepParameter::gamma;
    throw std::invalid_argument("unknown sweep parameter: " + std::string(name));
}

std::vector<SweepPoint> sweep(const ExperimentConfig& config, SweepParameter parameter,
                              std::span<const int> values) {
    if (values.empty()) throw std::invalid_argument("sweep: no values");
    const std::string name = parameter == SweepParameter::lag ? "lag" : "gamma";
    for (int v : values) {
        ExperimentConfig c = config;
        (parameter == SweepParameter::lag ? c.lag : c.gamma) = v;
        c.validate();
    }
    ensure_directory(config.out);

    std::vector<SweepPoint> points;
    std::ostringstream csv;
    csv << "value,mhv_mean,mhv_std\n";
    for (int v : values) {
        ExperimentConfig c = config;
        (parameter == SweepParameter::lag ? c.lag : c.gamma) = v;
        c.out = config.out / (name + "-" + std::to_string(v));
        auto result = run_experiment(c);
        csv << v << ',' << format_double(result.summary.mhv_mean) << ','
            << format_double(result.summary.mhv_std) << '\n';
        points.push_back({v, std::move(result.summary)});
    }
    write_file(config.out / "sweep.csv", csv.str());
    return points;
}

}  // namespace vare
