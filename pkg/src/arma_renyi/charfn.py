"""Characteristic function of the stationary output.

By independence of the residual terms, ``phi_x(s)`` is the product over j of
the residual characteristic functions evaluated at ``M_j' s`` and
``M*_j' s``. Products are accumulated as sums of logs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .covariance import covariance_lyapunov
from .entropy import cauchy_scale_matrix
from .errors import DomainError, NumericError
from .model import ArmaControlModel, Family
from .realization import impulse_response


@dataclass(frozen=True)
class CharFnValue:
    s: np.ndarray
    value: complex
    truncation_error: float


def _points(m: ArmaControlModel, s) -> np.ndarray:
    pts = np.atleast_2d(np.asarray(s, dtype=float))
    if pts.shape[1] != m.d:
        raise DomainError(f"frequency vectors must have length {m.d}, got {pts.shape[1]}")
    return pts


def _wrap(pts, values, errors):
    return [CharFnValue(p.copy(), complex(v), float(e)) for p, v, e in zip(pts, values, errors)]


def gaussian_values(m: ArmaControlModel, points) -> list[CharFnValue]:
    pts = _points(m, points)
    phi0 = covariance_lyapunov(m).phi0
    quad = np.einsum("ni,ij,nj->n", pts, phi0, pts)
    return _wrap(pts, np.exp(-0.5 * quad), np.zeros(len(pts)))


def charfn_gaussian(m: ArmaControlModel, s) -> CharFnValue:
    """``exp(-s' Phi(0) s / 2)`` with the exact stationary covariance."""
    return gaussian_values(m, s)[0]


def cauchy_values(m: ArmaControlModel, points, tol: float = 1e-10) -> list[CharFnValue]:
    pts = _points(m, points)
    L_u, L_w = m.control.spd.factor, m.noise.spd.factor
    l_norm = max(np.linalg.norm(L_u, 2), np.linalg.norm(L_w, 2))
    s_norm = max(float(np.max(np.linalg.norm(pts, axis=1))), 1e-300)
    ir = impulse_response(m, tol=tol / (l_norm * s_norm))
    log_val = np.zeros(len(pts))
    for seq, L in ((ir.M, L_u), (ir.Mstar, L_w)):
        for Mj in seq:
            K = Mj @ L
            log_val -= np.linalg.norm(pts @ K, axis=1)
    # omitted terms shrink the log by at most eps >= 0
    eps = np.linalg.norm(pts, axis=1) * l_norm * ir.tail_bound
    vals = np.exp(log_val)
    err = vals * -np.expm1(-eps)

    res = cauchy_scale_matrix(m, tol=tol)
    if res.proportional:
        closed = np.exp(-np.sqrt(np.maximum(np.einsum("ni,ij,nj->n", pts, res.D, pts), 0.0)))
        gap = float(np.max(np.abs(closed - vals)))
        if gap > tol + float(np.max(err)) + 1e-12:
            raise NumericError(f"product and collapsed-scale forms disagree by {gap:.3g}")
    return _wrap(pts, vals, err)


def charfn_cauchy(m: ArmaControlModel, s, tol: float = 1e-10) -> CharFnValue:
    """``exp(-sum_j ||K_j' s|| + ||K*_j' s||)`` truncated with error below ``tol``.

    When the terms are proportional the result is checked against the
    collapsed form ``exp(-sqrt(s' D s))``.
    """
    return cauchy_values(m, s, tol)[0]


def laplace_values(m: ArmaControlModel, points, tol: float = 1e-10) -> list[CharFnValue]:
    pts = _points(m, points)
    S_u, S_w = m.control.scale, m.noise.scale
    s_norm = max(np.linalg.norm(S_u, 2), np.linalg.norm(S_w, 2))
    pt_norm2 = np.sum(pts * pts, axis=1)
    env = impulse_response(m, tol=1.0).envelope
    budget = 0.5 * s_norm * env * max(float(np.max(pt_norm2)), 1e-300)
    ir = impulse_response(m, tol=tol / budget)
    log_val = np.zeros(len(pts))
    for seq, S in ((ir.M, S_u), (ir.Mstar, S_w)):
        for Mj in seq:
            q = np.einsum("ni,ij,nj->n", pts, Mj @ S @ Mj.T, pts)
            log_val -= np.log1p(0.5 * q)
    # sum of omitted 0.5 s'M S M's <= 0.5 |s|^2 ||S|| sup||M|| sum||M||
    eps = 0.5 * pt_norm2 * s_norm * env * ir.tail_bound
    vals = np.exp(log_val)
    return _wrap(pts, vals, vals * -np.expm1(-eps))


def charfn_laplace(m: ArmaControlModel, s, tol: float = 1e-10) -> CharFnValue:
    """``prod_j 1 / ((1 + s'M_j S_u M_j's / 2)(1 + s'M*_j S_w M*_j's / 2))``, truncated."""
    return laplace_values(m, s, tol)[0]


def charfn_values(m: ArmaControlModel, points, tol: float = 1e-10) -> list[CharFnValue]:
    """Evaluate the model's characteristic function at each row of ``points``."""
    if m.family is Family.GAUSSIAN:
        return gaussian_values(m, points)
    if m.family is Family.CAUCHY:
        return cauchy_values(m, points, tol)
    return laplace_values(m, points, tol)


def charfn(m: ArmaControlModel, s, tol: float = 1e-10) -> CharFnValue:
    return charfn_values(m, s, tol)[0]


__all__ = [
    "CharFnValue", "charfn", "charfn_values", "charfn_gaussian", "charfn_cauchy", "charfn_laplace",
]
