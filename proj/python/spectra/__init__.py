"""Random matrix and free probability experiments.

Thin wrapper over the compiled ``_spectra`` extension. ``run`` accepts the
same configuration objects as the ``spectra`` command-line tool and returns
the decoded JSON artifact.
"""

import json

from spectra._spectra import (
    InvalidParameter,
    NumericFailure,
    Pencil,
    SolverFailure,
    __version__,
    evaluate_polynomial,
    experiment_names,
    fock_moment,
    fock_semicircular_norm,
    free_polynomial_norm,
    haar_unitary_qr,
    pencil_norm,
    pseudo_haar_unitary,
    sample_grm,
    sample_sgrm,
    solve_mde,
    spectral_density,
    stieltjes,
    support,
)
from spectra import _spectra


def run(experiment, params=None, seed=0):
    """Run a named experiment and return its artifact as a dict."""
    config = {"experiment": experiment, "seed": seed, "params": params or {}}
    return json.loads(_spectra._run_config_json(json.dumps(config)))


__all__ = [
    "InvalidParameter",
    "NumericFailure",
    "Pencil",
    "SolverFailure",
    "__version__",
    "evaluate_polynomial",
    "experiment_names",
    "fock_moment",
    "fock_semicircular_norm",
    "free_polynomial_norm",
    "haar_unitary_qr",
    "pencil_norm",
    "pseudo_haar_unitary",
    "run",
    "sample_grm",
    "sample_sgrm",
    "solve_mde",
    "spectral_density",
    "stieltjes",
    "support",
]
