"""Exact distributions, covariances and Rényi entropies of multivariate ARMA control systems."""

__version__ = "0.1.0"

from .charfn import CharFnValue, charfn, charfn_values
from .covariance import StationaryCovariance, autocovariance, covariance_lyapunov, covariance_series
from .entropy import (
    EntropyReport,
    c_d_alpha,
    cauchy_scale_matrix,
    model_entropy,
    model_upper_bound,
    renyi_cauchy,
    renyi_gaussian,
    renyi_upper_bound,
    shannon_upper_bound,
)
from .errors import (
    ArmaError,
    DomainError,
    ModelValidationError,
    NotPositiveDefiniteError,
    NotProportionalError,
    NumericError,
    StabilityError,
)
from .model import ArmaControlModel, Family, ResidualFamily, is_stable, load_model, validate
from .realization import build_companion, impulse_response
from .simulate import SimConfig, simulate_path

__all__ = [
    "ArmaControlModel", "ArmaError", "CharFnValue", "DomainError", "EntropyReport", "Family",
    "ModelValidationError", "NotPositiveDefiniteError", "NotProportionalError", "NumericError",
    "ResidualFamily", "SimConfig", "StabilityError", "StationaryCovariance", "autocovariance",
    "build_companion", "c_d_alpha", "cauchy_scale_matrix", "charfn", "charfn_values",
    "covariance_lyapunov", "covariance_series", "impulse_response", "is_stable", "load_model",
    "model_entropy", "model_upper_bound", "renyi_cauchy", "renyi_gaussian", "renyi_upper_bound",
    "shannon_upper_bound", "simulate_path", "validate",
]
