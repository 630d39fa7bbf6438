"""Small-cell EMF exposure simulation: path-loss exponent models, link
budget, Monte Carlo street scenario and exposure index."""

import json as _json

from ._core import (
    DomainError,
    EmptyInputError,
    FitError,
    FormatError,
    PleDistribution,
    __version__,
    downlink_dose,
    extract_ple,
    fit_gev,
    fit_scaled_beta,
    free_space_intercept,
    gps_distance,
    ks_test,
    path_loss,
    uplink_dose,
    uplink_tx_power,
)
from ._core import _simulate_json


def simulate(config, seed=None, workers=None, n_observations=None):
    """Run the scenario described by a config file and return the report
    as a dict (same content as ei_report.json)."""
    return _json.loads(_simulate_json(str(config), seed, workers, n_observations))


__all__ = [
    "DomainError",
    "EmptyInputError",
    "FitError",
    "FormatError",
    "PleDistribution",
    "__version__",
    "downlink_dose",
    "extract_ple",
    "fit_gev",
    "fit_scaled_beta",
    "free_space_intercept",
    "gps_distance",
    "ks_test",
    "path_loss",
    "simulate",
    "uplink_dose",
    "uplink_tx_power",
]
