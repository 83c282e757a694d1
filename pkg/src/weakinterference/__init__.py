"""Weak-measurement interference: closed forms, quadrature oracle and loss inversion."""

from weakinterference.errors import (
    DarkPort,
    NonInvertible,
    OrthogonalPostSelection,
    OutOfRange,
    UnsupportedPreSelection,
    WeakInterferenceError,
    ZeroPower,
)
from weakinterference.model import (
    CouplingParams,
    GaussianPointer,
    MeasurementResult,
    MeasurementSetup,
    PolarizationState,
    PostSelectionAngles,
    make_balanced_pre,
    make_post,
    overlap,
)

__all__ = [
    "CouplingParams",
    "DarkPort",
    "GaussianPointer",
    "MeasurementResult",
    "MeasurementSetup",
    "NonInvertible",
    "OrthogonalPostSelection",
    "OutOfRange",
    "PolarizationState",
    "PostSelectionAngles",
    "UnsupportedPreSelection",
    "WeakInterferenceError",
    "ZeroPower",
    "make_balanced_pre",
    "make_post",
    "overlap",
]

__version__ = "0.1.0"
