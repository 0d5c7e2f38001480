"""Stationary covariance and autocovariances of the output process.

Two independent routes are provided:

* :func:`covariance_lyapunov` solves the stacked-state Lyapunov equation
  ``Phi~ = theta Phi~ theta' + J1 S_u J1' + J2 S_w J2'`` as the dense
  Kronecker system ``(I - theta (x) theta) vec(Phi~) = vec(S)``.
* :func:`covariance_series` sums the MA(inf) representation
  ``Phi(tau) = sum_j M_{j+tau} S_u M_j' + M*_{j+tau} S_w M*_j'`` up to a
  certified truncation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import numerics
from .errors import NoFiniteCovarianceError, SizeError, StabilityError
from .model import ArmaControlModel, is_stable
from .realization import autocov_recursion_step, companion, impulse_response

MAX_STATE_DIM = 60


@dataclass(frozen=True)
class StationaryCovariance:
    phi_tilde0: np.ndarray
    phi: tuple
    method: str
    residual: float = 0.0
    tail_bound: float = 0.0

    @property
    def phi0(self) -> np.ndarray:
        return self.phi[0]

    def at(self, tau: int) -> np.ndarray:
        """``Phi(tau) = E x(t) x(t - tau)'``; negative lags are transposes."""
        return self.phi[tau] if tau >= 0 else self.phi[-tau].T


def _require_second_moments(m: ArmaControlModel) -> None:
    if not m.family.has_covariance:
        raise NoFiniteCovarianceError(f"{m.family.value} residuals have no finite covariance")
    verdict = is_stable(m)
    if not verdict.stable:
        raise StabilityError(verdict.spectral_radius)


def _freeze(*arrays):
    for a in arrays:
        a.setflags(write=False)


def covariance_lyapunov(m: ArmaControlModel, max_state_dim: int = MAX_STATE_DIM) -> StationaryCovariance:
    """Exact stationary covariance by the dense vec/Kronecker solve.

    Returns ``Phi(0) .. Phi(p - 1)`` read off the first block row of the
    stacked covariance (just ``Phi(0)`` when ``p <= 1``).

    Raises
    ------
    NoFiniteCovarianceError
        For Cauchy residuals.
    StabilityError
        If the model is not stable.
    SizeError
        If the stacked state dimension exceeds ``max_state_dim``; the solve
        costs O((dm)^6) time and O((dm)^4) memory.
    """
    _require_second_moments(m)
    S_u, S_w = m.control.scale, m.noise.scale
    if m.p + m.r + m.q == 0:
        phi0 = S_u + S_w
        _freeze(phi0)
        return StationaryCovariance(phi0, (phi0,), "lyapunov")

    real = companion(m)
    n = real.theta.shape[0]
    if n > max_state_dim:
        raise SizeError(
            f"stacked state dimension {n} exceeds cap {max_state_dim}: "
            f"the Kronecker solve is a dense {n * n} x {n * n} system"
        )
    J1, J2 = real.sel_J1, real.sel_J2
    rhs = numerics.vec(J1 @ S_u @ J1.T + J2 @ S_w @ J2.T)
    lhs = np.eye(n * n) - numerics.kron(real.theta, real.theta)
    sol = numerics.solve(lhs, rhs)
    residual = float(np.linalg.norm(lhs @ sol - rhs) / max(np.linalg.norm(rhs), 1e-300))
    big = numerics.unvec(sol, n)
    big = 0.5 * (big + big.T)

    d = m.d
    phi = tuple(big[:d, k * d:(k + 1) * d].copy() for k in range(max(m.p, 1)))
    _freeze(big, *phi)
    return StationaryCovariance(big, phi, "lyapunov", residual=residual)


def covariance_series(m: ArmaControlModel, tol: float = 1e-10, tau_max: int = 0) -> StationaryCovariance:
    """Truncated MA(inf) covariance with a certified bound on the discarded mass.

    ``tail_bound`` bounds the Frobenius norm of the omitted part of every
    returned ``Phi(tau)``. ``phi_tilde0`` is the matching truncated series for
    the stacked state.
    """
    _require_second_moments(m)
    S_u, S_w = m.control.scale, m.noise.scale
    s_norm = max(np.linalg.norm(S_u, 2), np.linalg.norm(S_w, 2))
    # envelope from a throwaway call: sup_j ||M_j||_F is independent of tol
    env = impulse_response(m, tol=1.0).envelope
    ir_tol = tol / (s_norm * env)
    ir = impulse_response(m, tol=ir_tol)
    n_sum = ir.N
    if tau_max:
        longer = impulse_response(m, tol=ir_tol, min_terms=n_sum + tau_max)
        M, Ms = longer.M, longer.Mstar
    else:
        M, Ms = ir.M, ir.Mstar

    phi = []
    for tau in range(tau_max + 1):
        acc = np.zeros((m.d, m.d))
        for j in range(n_sum + 1):
            acc += M[j + tau] @ S_u @ M[j].T + Ms[j + tau] @ S_w @ Ms[j].T
        phi.append(acc)
    phi[0] = 0.5 * (phi[0] + phi[0].T)
    # omitted terms have j > n_sum = N, each bounded by env * ||S|| * ||M_j||_F
    tail = s_norm * env * ir.tail_bound

    real = companion(m)
    J1, J2 = real.sel_J1, real.sel_J2
    src = J1 @ S_u @ J1.T + J2 @ S_w @ J2.T
    big = np.zeros_like(src)
    power = np.eye(real.theta.shape[0])
    for _ in range(ir.N + 1):
        big += power @ src @ power.T
        power = real.theta @ power
    big = 0.5 * (big + big.T)
    _freeze(big, *phi)
    return StationaryCovariance(big, tuple(phi), "series", tail_bound=tail)


def autocovariance(m: ArmaControlModel, tau_max: int, tol: float = 1e-12) -> StationaryCovariance:
    """``Phi(0) .. Phi(tau_max)``.

    Lags below ``p`` come from the Lyapunov solve, lags above ``max(r, q)``
    from the AR recursion, and any lag in between from the lagged series.
    """
    if tau_max < 0:
        raise ValueError("tau_max must be non-negative")
    base = covariance_lyapunov(m)
    phi = list(base.phi[: min(len(base.phi), tau_max + 1)])
    gap_hi = m.max_order
    tail = 0.0
    if len(phi) <= min(gap_hi, tau_max):
        series = covariance_series(m, tol=tol, tau_max=min(gap_hi, tau_max))
        phi.extend(series.phi[len(phi):])
        tail = series.tail_bound
    while len(phi) <= tau_max:
        phi.append(autocov_recursion_step(phi, m.A) if m.p else np.zeros((m.d, m.d)))
    _freeze(*phi)
    return StationaryCovariance(base.phi_tilde0, tuple(phi), "lyapunov", residual=base.residual, tail_bound=tail)
