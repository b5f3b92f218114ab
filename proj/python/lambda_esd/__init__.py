"""Two-qubit entanglement dynamics.

Signed separability distance and concurrence, exact broadband-dephasing and
double atom-cavity evolution, and detection/classification of entanglement
sudden death. The heavy lifting lives in the compiled ``_core`` extension.
"""

from lambda_esd._core import (
    LambdaEsdError,
    LambdaResult,
    XStateParams,
    concurrence,
    dephase,
    esd_onset_jc_phi,
    esd_time_dephasing,
    find_crossings,
    jc_simulate,
    lambda_,
    lambda_dephasing_closed,
    lambda_jc_phi,
    lambda_jc_psi,
    lambda_x_closed,
    negativity,
    partial_transpose,
    purity,
    separability_distance,
    x_state,
)

__all__ = [
    "LambdaEsdError",
    "LambdaResult",
    "XStateParams",
    "concurrence",
    "dephase",
    "esd_onset_jc_phi",
    "esd_time_dephasing",
    "find_crossings",
    "jc_simulate",
    "lambda_",
    "lambda_dephasing_closed",
    "lambda_jc_phi",
    "lambda_jc_psi",
    "lambda_x_closed",
    "negativity",
    "partial_transpose",
    "purity",
    "separability_distance",
    "x_state",
]

__version__ = "0.1.0"
