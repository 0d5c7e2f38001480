"""Multivariate ARMA control model, its validation and its JSON form.

The model is

    x(t) = sum_{i=1..p} A_i x(t-i) + sum_{j=0..r} B_j u(t-j) + sum_{k=0..q} D_k w(t-k)

with ``B_0 = D_0 = I`` implied (never stored), zero-mean white control
``u`` and noise ``w`` that are mutually independent.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from pathlib import Path

import numpy as np

from . import numerics
from .errors import ModelValidationError, NotPositiveDefiniteError

SCHEMA_VERSION = 1
STABILITY_MARGIN = 1e-9


class Family(str, Enum):
    GAUSSIAN = "gaussian"
    CAUCHY = "cauchy"
    LAPLACE = "laplace"

    @property
    def has_covariance(self) -> bool:
        return self is not Family.CAUCHY


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class ResidualFamily:
    """Distribution family of a residual process plus its d x d scale.

    ``scale`` is the covariance for Gaussian and Laplace residuals and the
    scale matrix for Cauchy residuals.
    """

    kind: Family
    scale: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "kind", Family(self.kind))
        object.__setattr__(self, "scale", _frozen(self.scale))

    @cached_property
    def spd(self) -> numerics.SpdMat:
        return numerics.spd_factor(self.scale)


@dataclass(frozen=True, eq=False)
class ArmaControlModel:
    d: int
    p: int
    r: int
    q: int
    A: tuple
    B: tuple
    D: tuple
    control: ResidualFamily
    noise: ResidualFamily

    def __post_init__(self):
        for name in ("A", "B", "D"):
            object.__setattr__(self, name, tuple(_frozen(m) for m in getattr(self, name)))

    @classmethod
    def create(cls, A=(), B=(), D=(), family="gaussian", S_u=None, S_w=None, d=None):
        """Build a model, inferring ``d`` and the orders from the inputs."""
        A, B, D = list(A), list(B), list(D)
        if d is None:
            d = np.asarray(S_u if S_u is not None else S_w).shape[0]
        S_u = np.eye(d) if S_u is None else S_u
        S_w = np.eye(d) if S_w is None else S_w
        return cls(
            d=d, p=len(A), r=len(B), q=len(D), A=A, B=B, D=D,
            control=ResidualFamily(family, S_u), noise=ResidualFamily(family, S_w),
        )

    @property
    def family(self) -> Family:
        return self.control.kind

    @property
    def max_order(self) -> int:
        return max(self.p, self.r, self.q)

    def __eq__(self, other):
        if not isinstance(other, ArmaControlModel):
            return NotImplemented
        return model_to_dict(self) == model_to_dict(other)

    __hash__ = None


@dataclass(frozen=True)
class Violation:
    path: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def _check_matrix(path, mat, d, out):
    if mat.shape != (d, d):
        out.append(Violation(path, f"dimension mismatch: expected {(d, d)}, got {tuple(mat.shape)}"))
        return False
    if not np.all(np.isfinite(mat)):
        out.append(Violation(path, "non-finite entries"))
        return False
    return True


def validate(m: ArmaControlModel) -> ValidationReport:
    """Collect every structural violation of ``m`` without raising."""
    out: list[Violation] = []
    for name in ("d", "p", "r", "q"):
        val = getattr(m, name)
        lo = 1 if name == "d" else 0
        if not isinstance(val, (int, np.integer)) or isinstance(val, bool) or val < lo:
            out.append(Violation(name, f"must be an integer >= {lo}"))
    if out:
        return ValidationReport(tuple(out))

    for name, order in (("A", m.p), ("B", m.r), ("D", m.q)):
        mats = getattr(m, name)
        if len(mats) != order:
            out.append(Violation(name, f"expected {order} matrices, got {len(mats)}"))
        for i, mat in enumerate(mats):
            _check_matrix(f"{name}[{i}]", mat, m.d, out)

    if m.control.kind != m.noise.kind:
        out.append(Violation(
            "family", f"mixed residual families ({m.control.kind.value} control, {m.noise.kind.value} noise)"
        ))
    for path, fam in (("S_u", m.control), ("S_w", m.noise)):
        if not _check_matrix(path, fam.scale, m.d, out):
            continue
        if not numerics.is_symmetric(fam.scale):
            out.append(Violation(path, "scale not symmetric"))
            continue
        try:
            fam.spd
        except NotPositiveDefiniteError as exc:
            out.append(Violation(path, f"scale not positive definite ({exc})"))
    return ValidationReport(tuple(out))


def require_valid(m: ArmaControlModel) -> ArmaControlModel:
    report = validate(m)
    if not report.ok:
        raise ModelValidationError(report.violations)
    return m


def ar_companion(A, d: int) -> np.ndarray:
    """Block companion matrix of the AR part (at least one block row).

    Top block row holds ``A_1 .. A_p``; identities sit on the block
    subdiagonal. With ``p = 0`` this is the d x d zero matrix.
    """
    p = max(len(A), 1)
    out = np.zeros((d * p, d * p))
    for i, a in enumerate(A):
        out[:d, i * d:(i + 1) * d] = a
    if p > 1:
        out[d:, :-d] = np.eye(d * (p - 1))
    return out


@dataclass(frozen=True)
class StabilityVerdict:
    stable: bool
    spectral_radius: float


def is_stable(m: ArmaControlModel, margin: float = STABILITY_MARGIN) -> StabilityVerdict:
    """Stable iff the AR companion has spectral radius below ``1 - margin``."""
    if m.p == 0:
        return StabilityVerdict(True, 0.0)
    rho = numerics.spectral_radius(ar_companion(m.A, m.d))
    return StabilityVerdict(rho < 1.0 - margin, rho)


# -- JSON ------------------------------------------------------------------


def _matrix_list(raw, order, name):
    if raw is None:
        return []
    arr = np.array(raw, dtype=float)
    if arr.ndim == 2 and order == 1:
        return [arr]
    if arr.size == 0:
        return []
    if arr.ndim != 3:
        raise ModelValidationError([Violation(name, f"expected a list of {order} square matrices")])
    return list(arr)


def model_from_dict(doc: dict) -> ArmaControlModel:
    """Parse the schema-version-1 dictionary form.

    Raises
    ------
    ModelValidationError
        On missing keys, wrong types or unparseable arrays. Structural checks
        (shapes, symmetry, definiteness) are left to :func:`validate`.
    """
    if not isinstance(doc, dict):
        raise ModelValidationError([Violation("$", "model document must be a JSON object")])
    version = doc.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ModelValidationError([Violation("schema_version", f"unsupported version {version!r}")])
    missing = [k for k in ("d", "p", "r", "q", "family", "S_u", "S_w") if k not in doc]
    if missing:
        raise ModelValidationError([Violation(k, "missing") for k in missing])
    try:
        d, p, r, q = (int(doc[k]) for k in ("d", "p", "r", "q"))
        A = _matrix_list(doc.get("A"), p, "A")
        B = _matrix_list(doc.get("B"), r, "B")
        D = _matrix_list(doc.get("D"), q, "D")
        fam_u = doc.get("control_family", doc["family"])
        fam_w = doc.get("noise_family", doc["family"])
        control = ResidualFamily(str(fam_u).lower(), np.array(doc["S_u"], dtype=float))
        noise = ResidualFamily(str(fam_w).lower(), np.array(doc["S_w"], dtype=float))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ModelValidationError):
            raise
        raise ModelValidationError([Violation("$", f"malformed field: {exc}")]) from exc
    return ArmaControlModel(d=d, p=p, r=r, q=q, A=A, B=B, D=D, control=control, noise=noise)


def model_to_dict(m: ArmaControlModel) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "d": int(m.d), "p": int(m.p), "r": int(m.r), "q": int(m.q),
        "A": [a.tolist() for a in m.A],
        "B": [b.tolist() for b in m.B],
        "D": [x.tolist() for x in m.D],
        "family": m.control.kind.value,
        "S_u": m.control.scale.tolist(),
        "S_w": m.noise.scale.tolist(),
    }
    if m.noise.kind != m.control.kind:
        doc["noise_family"] = m.noise.kind.value
    return doc


def load_model(path) -> ArmaControlModel:
    """Read a model file. I/O and JSON syntax errors propagate as ``OSError``/``ValueError``."""
    with open(Path(path), encoding="utf-8") as fh:
        doc = json.load(fh)
    return model_from_dict(doc)


def dump_model(m: ArmaControlModel, path) -> None:
    with open(Path(path), "w", encoding="utf-8") as fh:
        json.dump(model_to_dict(m), fh, indent=2)
        fh.write("\n")
