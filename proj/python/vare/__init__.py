from ._core import (
    PcaBasis,
    Problem,
    VarCoefficients,
    fit_pca,
    fit_var,
    forecast_one_step,
    hypervolume,
    igd,
    make_problem,
    mutation_index,
    problem_names,
    project,
    reconstruct,
    reference_directions,
    run,
    run_experiment,
)

__all__ = [
    "PcaBasis",
    "Problem",
    "VarCoefficients",
    "fit_pca",
    "fit_var",
    "forecast_one_step",
    "hypervolume",
    "igd",
    "make_problem",
    "mutation_index",
    "problem_names",
    "project",
    "reconstruct",
    "reference_directions",
    "run",
    "run_experiment",
]
