#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "vare/benchmarks.hpp"
#include "vare/engine.hpp"
#include "vare/forecast.hpp"
#include "vare/harness.hpp"
#include "vare/metrics.hpp"
#include "vare/response.hpp"

namespace py = pybind11;

namespace {

using Rows = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::vector<vare::Vector> to_points(const Rows& m) {
    std::vector<vare::Vector> out;
    out.reserve(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) out.emplace_back(m.row(i).transpose());
    return out;
}

Rows to_rows(const std::vector<vare::Vector>& pts) {
    if (pts.empty()) return Rows(0, 0);
    Rows m(static_cast<Eigen::Index>(pts.size()), pts.front().size());
    for (std::size_t i = 0; i < pts.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = pts[i].transpose();
    return m;
}

py::dict record_dict(const vare::EnvironmentRecord& r) {
    py::dict d;
    d["environment"] = r.environment;
    d["time"] = r.time;
    d["igd"] = r.igd;
    d["hv"] = r.hv;
    d["mean_pca_rank"] = r.mean_pca_rank;
    d["prediction_attempts"] = r.prediction_attempts;
    d["prediction_successes"] = r.prediction_successes;
    d["mutation_attempts"] = r.mutation_attempts;
    d["mutation_successes"] = r.mutation_successes;
    d["eta"] = r.eta;
    d["approximation"] = to_rows(r.approximation);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Dynamic multi-objective optimization with adaptive VAR prediction and hypermutation";

    m.def("reference_directions",
          [](int objectives, int divisions) {
              return to_rows(vare::generate_reference_directions(objectives, divisions).directions());
          },
          py::arg("objectives"), py::arg("divisions"));

    py::class_<vare::DynamicProblem>(m, "Problem")
        .def_property_readonly("name", &vare::DynamicProblem::name)
        .def_property_readonly("objectives", &vare::DynamicProblem::objectives)
        .def_property_readonly("variables", &vare::DynamicProblem::variables)
        .def_property_readonly("lower", [](const vare::DynamicProblem& p) { return p.bounds().lower; })
        .def_property_readonly("upper", [](const vare::DynamicProblem& p) { return p.bounds().upper; })
        .def("evaluate", &vare::DynamicProblem::evaluate, py::arg("x"), py::arg("t"))
        .def("sample_true_pf",
             [](const vare::DynamicProblem& p, double t, std::size_t count) {
                 return to_rows(p.sample_true_pf(t, count));
             },
             py::arg("t"), py::arg("count"));

    m.def("make_problem", &vare::make_problem, py::arg("name"), py::arg("variables") = 0);
    m.def("problem_names", &vare::problem_names);

    m.def("igd", [](const Rows& ref, const Rows& approx) { return vare::igd(to_points(ref), to_points(approx)); },
          py::arg("reference"), py::arg("approximation"));
    m.def("hypervolume",
          [](const Rows& pts, const vare::Vector& ref) { return vare::hypervolume(to_points(pts), ref); },
          py::arg("points"), py::arg("reference_point"));

    m.def("mutation_index", &vare::mutation_index, py::arg("delta_f"), py::arg("delta_x"));

    py::class_<vare::PcaBasis>(m, "PcaBasis")
        .def_readonly("mean", &vare::PcaBasis::mean)
        .def_readonly("components", &vare::PcaBasis::components)
        .def_readonly("eigenvalues", &vare::PcaBasis::eigenvalues)
        .def_readonly("spectrum", &vare::PcaBasis::spectrum)
        .def_property_readonly("rank", &vare::PcaBasis::rank);
    m.def("fit_pca",
          [](const Rows& series, double threshold) { return vare::fit_pca(to_points(series), threshold); },
          py::arg("series"), py::arg("variance_threshold") = vare::kDefaultVarianceThreshold);
    m.def("project", &vare::project, py::arg("basis"), py::arg("x"));
    m.def("reconstruct", &vare::reconstruct, py::arg("basis"), py::arg("y"));

    py::class_<vare::VarCoefficients>(m, "VarCoefficients")
        .def_readonly("intercept", &vare::VarCoefficients::intercept)
        .def_readonly("lags", &vare::VarCoefficients::lags)
        .def_property_readonly("lag", &vare::VarCoefficients::lag);
    m.def("fit_var",
          [](const Rows& series, int lag, double ridge) { return vare::fit_var(to_points(series), lag, ridge); },
          py::arg("series"), py::arg("lag"), py::arg("ridge") = vare::kDefaultRidge);
    m.def("forecast_one_step",
          [](const vare::VarCoefficients& c, const Rows& recent) {
              return vare::forecast_one_step(c, to_points(recent));
          },
          py::arg("coefficients"), py::arg("recent"),
          "`recent` holds the last `lag` vectors as rows, newest first.");

    m.def("run",
          [](const std::string& problem, int changes, int lag, const std::string& variant, std::uint64_t seed,
             int divisions, std::size_t pf_samples) {
              const auto p = vare::make_problem(problem);
              vare::EngineConfig cfg;
              cfg.changes = changes;
              cfg.response.lag = lag;
              cfg.response.variant = vare::parse_variant(variant);
              cfg.seed = seed;
              cfg.divisions = divisions;
              cfg.pf_samples = pf_samples;
              std::vector<vare::EnvironmentRecord> recs;
              {
                  py::gil_scoped_release release;
                  recs = vare::run(*p, cfg);
              }
              py::list out;
              for (const auto& r : recs) out.append(record_dict(r));
              return out;
          },
          py::arg("problem"), py::arg("changes") = 49, py::arg("lag") = 5, py::arg("variant") = "vare",
          py::arg("seed") = 1, py::arg("divisions") = 0, py::arg("pf_samples") = 10000);

    m.def("run_experiment",
          [](const std::string& problem, int changes, int runs, std::uint64_t seed, const std::string& variant,
             int lag, int gamma, const std::filesystem::path& out, int workers, std::size_t pf_samples) {
              vare::ExperimentConfig cfg;
              cfg.problem = problem;
              cfg.changes = changes;
              cfg.runs = runs;
              cfg.seed = seed;
              cfg.variant = vare::parse_variant(variant);
              cfg.lag = lag;
              cfg.gamma = gamma;
              cfg.out = out;
              cfg.workers = workers;
              cfg.pf_samples = pf_samples;
              vare::ExperimentResult result;
              {
                  py::gil_scoped_release release;
                  result = vare::run_experiment(cfg);
              }
              return py::module_::import("json").attr("loads")(result.summary.to_json().dump());
          },
          py::arg("problem"), py::arg("changes") = 49, py::arg("runs") = 1, py::arg("seed") = 1,
          py::arg("variant") = "vare", py::arg("lag") = 5, py::arg("gamma") = 1, py::arg("out") = "results",
          py::arg("workers") = 1, py::arg("pf_samples") = 10000,
          "Writes trace.csv, timing.csv, summary.json and config.json under `out`; returns the summary.");
}
