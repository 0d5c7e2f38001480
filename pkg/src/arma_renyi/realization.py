"""Companion-form realization and impulse response.

The stacked state is

    X(t) = [x(t) .. x(t-p+1), u(t) .. u(t-r+1), w(t) .. w(t-q+1)]

so that ``X(t) = theta X(t-1) + J1 u(t) + J2 w(t)`` and ``x(t) = I_sel X(t)``.
Consequently the MA(inf) weights are ``M_j = I_sel theta^j J1`` and
``M*_j = I_sel theta^j J2``; :func:`impulse_response` computes them by the
coefficient recursion and cross-checks against these powers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ArityError, DegenerateModelError, NumericError, StabilityError
from .model import ArmaControlModel, ar_companion, is_stable

CLOSED_FORM_RTOL = 1e-10


@dataclass(frozen=True)
class CompanionRealization:
    d: int
    x_blocks: int
    r: int
    q: int
    theta: np.ndarray
    sel_I: np.ndarray
    sel_J1: np.ndarray
    sel_J2: np.ndarray

    @property
    def m(self) -> int:
        """Number of d-sized blocks in the stacked state."""
        return self.x_blocks + self.r + self.q

    @property
    def theta_11(self) -> np.ndarray:
        n = self.d * self.x_blocks
        return self.theta[:n, :n]

    @property
    def theta_22(self) -> np.ndarray:
        n = self.d * self.x_blocks
        return self.theta[n:, n:]


def _shift_block(n_blocks: int, d: int) -> np.ndarray:
    out = np.zeros((d * n_blocks, d * n_blocks))
    if n_blocks > 1:
        out[d:, :-d] = np.eye(d * (n_blocks - 1))
    return out


def companion(m: ArmaControlModel) -> CompanionRealization:
    """Companion realization for any model, including ``p = r = q = 0``.

    A pure moving-average model (``p = 0``) still gets one x-block with a
    zero AR coefficient so that ``x(t)`` stays the leading block.
    """
    d = m.d
    xb = max(m.p, 1)
    n = d * (xb + m.r + m.q)
    nx = d * xb
    theta = np.zeros((n, n))
    theta[:nx, :nx] = ar_companion(m.A, d)
    for j, b in enumerate(m.B):
        theta[:d, nx + j * d: nx + (j + 1) * d] = b
    off = nx + d * m.r
    for k, dk in enumerate(m.D):
        theta[:d, off + k * d: off + (k + 1) * d] = dk
    theta[nx:nx + d * m.r, nx:nx + d * m.r] = _shift_block(m.r, d)
    theta[off:, off:] = _shift_block(m.q, d)

    eye = np.eye(d)
    sel_I = np.zeros((d, n))
    sel_I[:, :d] = eye
    J1 = np.zeros((n, d))
    J1[:d] = eye
    if m.r:
        J1[nx:nx + d] = eye
    J2 = np.zeros((n, d))
    J2[:d] = eye
    if m.q:
        J2[off:off + d] = eye
    for arr in (theta, sel_I, J1, J2):
        arr.setflags(write=False)
    return CompanionRealization(d, xb, m.r, m.q, theta, sel_I, J1, J2)


def build_companion(m: ArmaControlModel) -> CompanionRealization:
    if m.p + m.r + m.q == 0:
        raise DegenerateModelError("model has no lags (p = r = q = 0); use the direct path")
    return companion(m)


@dataclass(frozen=True)
class PowerEnvelope:
    """``||theta^j||_2 <= peak * contraction ** (j // period)`` for every j >= 0."""

    period: int
    contraction: float
    peak: float

    def tail_sum(self, start: int) -> float:
        """Upper bound on ``sum_{j >= start} ||theta^j||_2``."""
        if self.contraction == 0.0:
            return 0.0 if start >= self.period else math.inf
        return self.peak * self.period * self.contraction ** (start // self.period) / (1.0 - self.contraction)

    def first_start_below(self, bound: float) -> int:
        """Smallest ``start`` (a multiple of the period) with ``tail_sum(start) < bound``."""
        if self.contraction == 0.0:
            return self.period
        scale = self.peak * self.period / (1.0 - self.contraction)
        if scale < bound:
            return 0
        blocks = math.floor(math.log(bound / scale) / math.log(self.contraction)) + 1
        return blocks * self.period


def power_envelope(theta: np.ndarray, target: float = 0.5, max_power: int = 100_000) -> PowerEnvelope:
    """Certify geometric decay of matrix powers.

    Finds the first ``k`` with ``||theta^k||_2 <= target``; submultiplicativity
    then bounds every power by the peak of the first ``k`` powers times
    ``||theta^k||^(j // k)``.
    """
    power = np.eye(theta.shape[0])
    peak = 1.0
    for k in range(1, max_power + 1):
        power = power @ theta
        nrm = float(np.linalg.norm(power, 2))
        if nrm <= target:
            return PowerEnvelope(k, nrm, peak)
        peak = max(peak, nrm)
        if not np.isfinite(nrm):
            break
    raise NumericError("matrix powers do not contract; spectral radius too close to 1")


@dataclass(frozen=True)
class ImpulseResponse:
    M: tuple
    Mstar: tuple
    tail_bound: float
    N: int
    envelope: float = 1.0
    """Bound on ``||M_j||_F`` and ``||M*_j||_F`` valid for every ``j``."""


def _recursion(A, C, d, n_terms):
    out = [np.eye(d)]
    for i in range(1, n_terms + 1):
        mi = C[i - 1].copy() if i <= len(C) else np.zeros((d, d))
        for j in range(1, min(i, len(A)) + 1):
            mi += A[j - 1] @ out[i - j]
        out.append(mi)
    return out


def impulse_response(m: ArmaControlModel, tol: float = 1e-12, min_terms: int = 0) -> ImpulseResponse:
    """MA(inf) weights ``M_j`` (control) and ``M*_j`` (noise) up to a certified cut.

    ``N`` is the larger of ``max(p, r, q) + 1``, ``min_terms`` and the first
    index whose certified tail ``sum_{j > N} ||M_j||_F + ||M*_j||_F`` is
    below ``tol``.

    Raises
    ------
    StabilityError
        If the model is not stable.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    verdict = is_stable(m)
    if not verdict.stable:
        raise StabilityError(verdict.spectral_radius)
    real = companion(m)
    env = power_envelope(real.theta)
    d = m.d
    nj1 = math.sqrt(2.0) if m.r else 1.0
    nj2 = math.sqrt(2.0) if m.q else 1.0
    scale = math.sqrt(d) * (nj1 + nj2)
    start = env.first_start_below(tol / scale)
    N = max(m.max_order + 1, min_terms, start - 1)
    tail = scale * env.tail_sum(N + 1)

    M = _recursion(m.A, m.B, d, N)
    Ms = _recursion(m.A, m.D, d, N)
    M[0] = np.eye(d)
    Ms[0] = np.eye(d)

    _check_closed_form(real, M, Ms)
    for mat in M + Ms:
        mat.setflags(write=False)
    envelope = math.sqrt(d) * max(nj1, nj2) * env.peak
    return ImpulseResponse(tuple(M), tuple(Ms), tail, N, envelope)


def _check_closed_form(real: CompanionRealization, M, Ms) -> None:
    d = real.d
    y1, y2 = real.sel_J1.copy(), real.sel_J2.copy()
    for j, (mj, msj) in enumerate(zip(M, Ms)):
        for rec, closed in ((mj, y1[:d]), (msj, y2[:d])):
            err = np.max(np.abs(rec - closed))
            if err > CLOSED_FORM_RTOL * max(1.0, float(np.max(np.abs(rec)))):
                raise NumericError(f"impulse recursion disagrees with companion powers at j={j} (gap {err:.3g})")
        y1 = real.theta @ y1
        y2 = real.theta @ y2


def companion_weights(real: CompanionRealization, n_terms: int):
    """``I_sel theta^j J1`` and ``I_sel theta^j J2`` for ``j = 0 .. n_terms``."""
    d = real.d
    y1, y2 = real.sel_J1.copy(), real.sel_J2.copy()
    M, Ms = [], []
    for _ in range(n_terms + 1):
        M.append(real.sel_I @ y1)
        Ms.append(real.sel_I @ y2)
        y1 = real.theta @ y1
        y2 = real.theta @ y2
    return M, Ms


def autocov_recursion_step(history, A) -> np.ndarray:
    """``Phi(tau) = sum_i A_i Phi(tau - i)``.

    ``history`` lists autocovariances in increasing lag order and must end at
    ``Phi(tau - 1)``; only the last ``p`` entries are used. Valid only for
    ``tau > max(r, q)``.
    """
    p = len(A)
    if p == 0:
        if not history:
            raise ArityError("need at least one history block to infer the dimension")
        return np.zeros_like(np.asarray(history[-1], dtype=float))
    if len(history) < p:
        raise ArityError(f"need {p} preceding autocovariance blocks, got {len(history)}")
    out = np.zeros_like(np.asarray(history[-1], dtype=float))
    for i in range(1, p + 1):
        out = out + np.asarray(A[i - 1]) @ np.asarray(history[-i])
    return out
