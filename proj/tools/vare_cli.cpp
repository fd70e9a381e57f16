#include "vare/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

void add_experiment_options(CLI::App& cmd, vare::ExperimentConfig& cfg, std::string& variant,
                            std::string& op) {
    cmd.add_option("--problem", cfg.problem, "DF1, DF4, DF5 or FDA4")->capture_default_str();
    cmd.add_option("--variables", cfg.variables, "decision variables (0 = problem default)");
    cmd.add_option("--nt", cfg.severity, "severity of change n_t")->capture_default_str();
    cmd.add_option("--taut", cfg.frequency, "frequency of change tau_t")->capture_default_str();
    cmd.add_option("--changes", cfg.changes, "number of environmental changes")->capture_default_str();
    cmd.add_option("--runs", cfg.runs, "independent runs")->capture_default_str();
    cmd.add_option("--seed", cfg.seed, "base seed; run i uses seed + i")->capture_default_str();
    cmd.add_option("--variant", variant, "vare, var-only or eah-only")->capture_default_str();
    cmd.add_option("--lag", cfg.lag, "VAR lag order")->capture_default_str();
    cmd.add_option("--gamma", cfg.gamma, "success window multiplier (L = gamma * lag)")->capture_default_str();
    cmd.add_option("--operator", op, "rm-meda or sbx")->capture_default_str();
    cmd.add_option("--divisions", cfg.divisions, "reference lattice resolution (0 = default)");
    cmd.add_option("--pf-samples", cfg.pf_samples, "true-PF reference points per environment")
        ->capture_default_str();
    cmd.add_option("--out", cfg.out, "output directory")->capture_default_str();
    cmd.add_option("--workers", cfg.workers, "parallel runs")->capture_default_str();
}

void print_summary(const vare::ExperimentSummary& s) {
    std::cout << s.problem << " " << s.variant << "  MIGD " << s.migd_mean << " (" << s.migd_std
              << ")  MHV " << s.mhv_mean << " (" << s.mhv_std << ")  " << s.runtime_s << " s\n";
}

vare::ExperimentSummary load_summary(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    try {
        return vare::ExperimentSummary::from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dynamic multi-objective optimization with VAR prediction and hypermutation"};
    app.require_subcommand(1);

    vare::ExperimentConfig cfg;
    std::string variant = "vare";
    std::string op = "rm-meda";

    auto* run_cmd = app.add_subcommand("run", "run an experiment and write trace/summary files");
    add_experiment_options(*run_cmd, cfg, variant, op);

    std::string parameter = "lag";
    std::vector<int> values;
    auto* sweep_cmd = app.add_subcommand("sweep", "repeat an experiment over lag or gamma values");
    add_experiment_options(*sweep_cmd, cfg, variant, op);
    sweep_cmd->add_option("--parameter", parameter, "lag or gamma")->capture_default_str();
    sweep_cmd->add_option("--values", values, "values to test")->required()->delimiter(',');

    std::string summary_a, summary_b, compare_out;
    auto* compare_cmd = app.add_subcommand("compare", "Wilcoxon rank-sum comparison of two summaries");
    compare_cmd->add_option("summary_a", summary_a, "summary.json of algorithm A")->required();
    compare_cmd->add_option("summary_b", summary_b, "summary.json of algorithm B")->required();
    compare_cmd->add_option("--out", compare_out, "write the report as JSON to this file");

    int objectives = 2;
    int divisions = 0;
    auto* refdirs_cmd = app.add_subcommand("refdirs", "print a reference direction set as CSV");
    refdirs_cmd->add_option("--objectives", objectives, "number of objectives")->capture_default_str();
    refdirs_cmd->add_option("--divisions", divisions, "lattice resolution (0 = default)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd || *sweep_cmd) {
            cfg.variant = vare::parse_variant(variant);
            cfg.op = vare::parse_operator(op);
        }
        if (*run_cmd) {
            const auto result = vare::run_experiment(cfg);
            print_summary(result.summary);
            std::cout << "wrote " << cfg.out.string() << "\n";
        } else if (*sweep_cmd) {
            const auto points = vare::sweep(cfg, vare::parse_sweep_parameter(parameter), values);
            for (const auto& p : points) {
                std::cout << parameter << "=" << p.value << "  ";
                print_summary(p.summary);
            }
            std::cout << "wrote " << (cfg.out / "sweep.csv").string() << "\n";
        } else if (*compare_cmd) {
            const auto report = vare::compare(load_summary(summary_a), load_summary(summary_b));
            const std::string text = report.to_json().dump(2);
            std::cout << text << "\n";
            if (!compare_out.empty()) {
                std::ofstream out(compare_out);
                if (!(out << text << "\n")) throw std::runtime_error("cannot write " + compare_out);
            }
        } else if (*refdirs_cmd) {
            const int h = divisions > 0 ? divisions : vare::default_divisions(objectives);
            for (const auto& d : vare::generate_reference_directions(objectives, h)) {
                for (Eigen::Index j = 0; j < d.size(); ++j)
                    std::cout << (j ? "," : "") << vare::format_double(d[j]);
                std::cout << "\n";
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
