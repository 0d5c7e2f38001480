"""Property suites cross-checking the library against independent oracles.

Each suite returns a :class:`SuiteResult`; nothing here raises on a failed
check, so callers can print the whole report.
"""

from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from . import worked_examples as ex
from .charfn import charfn_values
from .covariance import covariance_lyapunov, covariance_series
from .entropy import c_d_alpha, renyi_gaussian
from .errors import DomainError
from .model import ArmaControlModel, ar_companion
from .numerics import spectral_radius
from .realization import companion, companion_weights, impulse_response
from .simulate import SimConfig, simulate_path

MC_SEED = 1
MC_SAMPLES = 200_000
MC_POINTS = np.array([
    [0.1, 0.0, 0.0],
    [0.0, 0.3, 0.0],
    [0.0, 0.0, 0.5],
    [0.2, -0.2, 0.2],
    [0.4, 0.1, -0.3],
])


@dataclass
class SuiteResult:
    name: str
    passed: bool
    cases: int
    worst: float
    """Largest violation ratio (observed / allowed); <= 1 means pass."""
    seconds: float = 0.0
    details: list = field(default_factory=list)


def random_spd(rng: np.random.Generator, d: int) -> np.ndarray:
    g = rng.standard_normal((d, d))
    return g @ g.T + 0.1 * np.eye(d)


def random_stable_model(rng: np.random.Generator, family: str = "gaussian", max_d: int = 3,
                        max_order: int = 2, max_radius: float = 0.9) -> ArmaControlModel:
    """Random model with spectral radius at most ``max_radius``.

    The AR lags are rescaled by ``(target / rho) ** i`` which multiplies the
    companion spectrum by ``target / rho`` exactly.
    """
    d = int(rng.integers(1, max_d + 1))
    p, r, q = (int(v) for v in rng.integers(0, max_order + 1, size=3))
    A = [rng.standard_normal((d, d)) / d for _ in range(p)]
    if p:
        rho = spectral_radius(ar_companion(A, d))
        target = rng.uniform(0.05, max_radius)
        if rho > 0:
            A = [a * (target / rho) ** (i + 1) for i, a in enumerate(A)]
    B = [rng.standard_normal((d, d)) / d for _ in range(r)]
    D = [rng.standard_normal((d, d)) / d for _ in range(q)]
    return ArmaControlModel.create(A, B, D, family, random_spd(rng, d), random_spd(rng, d), d=d)


def cross_method_suite(n_models: int = 50, seed: int = 5) -> SuiteResult:
    """Lyapunov vs truncated-series ``Phi(0)``, gap within certified tail + 1e-8."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    worst, details = 0.0, []
    for k in range(n_models):
        m = random_stable_model(rng, family="gaussian" if k % 2 == 0 else "laplace")
        lyap = covariance_lyapunov(m).phi0
        ser = covariance_series(m, tol=1e-10)
        gap = float(np.linalg.norm(lyap - ser.phi0))
        allowed = ser.tail_bound + 1e-8
        worst = max(worst, gap / allowed)
        details.append((k, m.d, m.p, m.r, m.q, gap, ser.tail_bound))
    return SuiteResult("cross-method covariance", worst <= 1.0, n_models, worst, time.perf_counter() - t0, details)


def impulse_equivalence_suite(n_models: int = 50, seed: int = 8, j_max: int = 20, tol: float = 1e-10) -> SuiteResult:
    """Recursion weights vs selector-companion powers for ``j <= j_max``."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    worst, details, exact = 0.0, [], True
    for k in range(n_models):
        m = random_stable_model(rng)
        ir = impulse_response(m, min_terms=j_max)
        Mc, Msc = companion_weights(companion(m), j_max)
        eye = np.eye(m.d)
        exact &= bool(np.array_equal(ir.M[0], eye) and np.array_equal(ir.Mstar[0], eye))
        gap = max(
            float(np.max(np.abs(ir.M[j] - Mc[j]))) for j in range(j_max + 1)
        )
        gap = max(gap, max(float(np.max(np.abs(ir.Mstar[j] - Msc[j]))) for j in range(j_max + 1)))
        worst = max(worst, gap / tol)
        details.append((k, gap))
    return SuiteResult("impulse-response equivalence", worst <= 1.0 and exact, n_models, worst,
                       time.perf_counter() - t0, details)


def _gaussian_density(S):
    inv = np.linalg.inv(S)
    d = S.shape[0]
    log_norm = -0.5 * (d * math.log(2 * math.pi) + math.log(np.linalg.det(S)))
    return inv, log_norm


def gaussian_quadrature_entropy(S, alpha: float) -> float:
    """Rényi entropy of ``N(0, S)`` by adaptive quadrature over a +-16 sigma box (d = 1, 2)."""
    S = np.atleast_2d(np.asarray(S, dtype=float))
    d = S.shape[0]
    inv, log_norm = _gaussian_density(S)
    half = 16.0 * np.sqrt(np.diag(S))

    def logf(*x):
        v = np.array(x)
        return log_norm - 0.5 * float(v @ inv @ v)

    if alpha == 1.0:
        def g(*x):
            lf = logf(*x)
            return -math.exp(lf) * lf
    else:
        def g(*x):
            return math.exp(alpha * logf(*x))

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        if d == 1:
            val, _ = integrate.quad(g, -half[0], half[0], points=[0.0], limit=500, epsabs=1e-13, epsrel=1e-12)
        elif d == 2:
            val, _ = integrate.dblquad(lambda y, x: g(x, y), -half[0], half[0], -half[1], half[1],
                                       epsabs=1e-12, epsrel=1e-11)
        else:
            raise ValueError("quadrature oracle supports d = 1, 2 only")
    return val if alpha == 1.0 else math.log(val) / (1.0 - alpha)


def entropy_oracle_suite(n_matrices: int = 10, seed: int = 13, alphas=(0.5, 1.0, 2.0, 3.0),
                         tol: float = 1e-6) -> SuiteResult:
    """Closed-form Gaussian entropy vs quadrature, plus ``C_d`` continuity and domain checks."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    worst, details = 0.0, []
    cases = 0
    for d in (1, 2):
        for _ in range(n_matrices):
            S = random_spd(rng, d)
            for a in alphas:
                gap = abs(renyi_gaussian(S, a).value - gaussian_quadrature_entropy(S, a))
                worst = max(worst, gap / tol)
                details.append(("quadrature", d, a, gap))
                cases += 1
    domain_ok = True
    for d in (1, 2, 3, 5):
        jump = max(abs(c_d_alpha(d, 1.0 + h) - c_d_alpha(d, 1.0)) for h in (1e-6, -1e-6))
        worst = max(worst, jump / 1e-4)
        details.append(("continuity", d, jump))
        for a in (d / (d + 2), 0.5 * d / (d + 2)):
            try:
                c_d_alpha(d, a)
                domain_ok = False
            except DomainError:
                pass
        cases += 1
    return SuiteResult("entropy oracle", worst <= 1.0 and domain_ok, cases, worst, time.perf_counter() - t0, details)


def monte_carlo_suite(seed: int = MC_SEED, n_samples: int = MC_SAMPLES, points=MC_POINTS) -> SuiteResult:
    """Example 1 under all three families against simulation.

    Covariance entries must sit within 3 batch-means standard errors of the
    Lyapunov ``Phi(0)`` (Gaussian and Laplace); the empirical characteristic
    function must be within ``4 / sqrt(n)`` of the analytic one.
    """
    t0 = time.perf_counter()
    worst, details = 0.0, []
    for family in ("gaussian", "cauchy", "laplace"):
        m = ex.example1_model(family)
        summary = simulate_path(m, SimConfig(seed=seed, n_samples=n_samples), points=points)
        if summary.covariance is not None:
            phi0 = covariance_lyapunov(m).phi0
            z = np.abs(summary.covariance - phi0) / summary.covariance_se
            worst = max(worst, float(np.max(z)) / 3.0)
            details.append((family, "covariance max z", float(np.max(z))))
        analytic = charfn_values(m, points)
        bound = 4.0 / math.sqrt(summary.n_samples)
        gap = max(abs(e[1] - a.value) for e, a in zip(summary.ecf, analytic))
        worst = max(worst, gap / bound)
        details.append((family, "charfn max gap", gap, bound))
    details.append(("seed", seed))
    return SuiteResult("monte carlo oracle", worst <= 1.0, 3, worst, time.perf_counter() - t0, details)


SUITES = {
    "cross-method": cross_method_suite,
    "monte-carlo": monte_carlo_suite,
    "entropy-oracle": entropy_oracle_suite,
    "impulse-equivalence": impulse_equivalence_suite,
}


def run_all() -> list[SuiteResult]:
    return [fn() for fn in SUITES.values()]
