"""Rényi entropies (nats): closed forms and covariance-based upper bounds."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from . import numerics
from .covariance import covariance_lyapunov
from .errors import DomainError, NoFiniteCovarianceError, NotProportionalError, StabilityError
from .model import ArmaControlModel, Family, is_stable
from .realization import impulse_response

PROPORTIONALITY_RTOL = 1e-8
LOG_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class EntropyReport:
    alpha: float
    value: float
    kind: str  # exact_gaussian | exact_cauchy | upper_bound
    formula: str
    components: dict = field(default_factory=dict)


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not alpha > 0 or not math.isfinite(alpha):
        raise DomainError(f"alpha must be a positive finite number, got {alpha}")
    return alpha


# Bernoulli-number coefficients B_2n / (2n (2n - 1)) of the Stirling series
_STIRLING = (1 / 12, -1 / 360, 1 / 1260, -1 / 1680, 1 / 1188, -691 / 360360)


def log_gamma_ratio(x: float, h: float) -> float:
    """``ln Gamma(x + h) - ln Gamma(x)`` without cancellation for large ``x``.

    Both arguments of the difference grow like ``1 / |alpha - 1|`` in the
    bound constant, so subtracting two ``lgamma`` values loses about
    ``|ln Gamma(x)| * eps`` in absolute accuracy.
    """
    lo = min(x, x + h)
    if lo < 15.0:
        return math.lgamma(x + h) - math.lgamma(x)
    y = x + h
    out = (x - 0.5) * math.log1p(h / x) + h * math.log(y) - h
    for n, c in enumerate(_STIRLING, start=1):
        out += c * (y ** (1 - 2 * n) - x ** (1 - 2 * n))
    return out


def c_d_alpha(d: int, alpha: float) -> float:
    """Dimension constant of the covariance bound ``C_d(alpha) + log det(S) / 2``.

    Defined for ``alpha > d / (d + 2)``.
    """
    alpha = _check_alpha(alpha)
    if d < 1:
        raise DomainError("dimension must be >= 1")
    if alpha <= d / (d + 2):
        raise DomainError(f"bound constant undefined for alpha={alpha} <= d/(d+2)={d / (d + 2):.6g}")
    if alpha == 1.0:
        return 0.5 * d * math.log(2.0 * math.pi * math.e)
    k = alpha * (d + 2) - d
    # log(k / (2 alpha)) written as log1p for accuracy next to alpha = 1
    log_ratio = math.log1p(d * (alpha - 1.0) / (2.0 * alpha))
    if alpha > 1.0:
        e = alpha - 1.0
        # k / (2e) = alpha / e + d / 2
        return (
            0.5 * d * math.log(math.pi * k / e)
            + log_ratio / e
            - log_gamma_ratio(alpha / e, 0.5 * d)
        )
    e = 1.0 - alpha
    # k / (2e) = alpha / e - d / 2
    return (
        0.5 * d * math.log(math.pi * k / e)
        - alpha / e * log_ratio
        + log_gamma_ratio(alpha / e, -0.5 * d)
    )


def _logdet_spd(S) -> tuple[float, int]:
    spd = numerics.spd_factor(S)
    return spd.logdet(), spd.dim


def renyi_gaussian(S, alpha: float) -> EntropyReport:
    """Rényi entropy of ``N(mu, S)``; Shannon entropy at ``alpha = 1``."""
    alpha = _check_alpha(alpha)
    logdet, d = _logdet_spd(S)
    half = 0.5 * (d * LOG_2PI + logdet)
    if alpha == 1.0:
        value = half + 0.5 * d
        order_term = 0.5 * d
    else:
        order_term = -d / (2.0 * (1.0 - alpha)) * math.log(alpha)
        value = half + order_term
    return EntropyReport(
        alpha, value, "exact_gaussian", "gaussian-closed-form",
        {"log_det": logdet, "half_log_det_2pi_S": half, "order_term": order_term},
    )


def _cauchy_radial_oracle(d: int, alpha: float) -> float:
    """Rényi entropy of the standard d-variate Cauchy by 1-D radial quadrature.

    Returns ``inf`` where the integral diverges (``alpha <= d / (d + 1)``).
    """
    log_norm = math.lgamma((d + 1) / 2.0) - 0.5 * (d + 1) * math.log(math.pi)
    log_sphere = math.log(2.0) + 0.5 * d * math.log(math.pi) - math.lgamma(d / 2.0)

    def logg(r):
        return log_norm - 0.5 * (d + 1) * math.log1p(r * r)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        if alpha == 1.0:
            val, _ = integrate.quad(lambda r: -(r ** (d - 1)) * math.exp(logg(r)) * logg(r), 0, math.inf, limit=500, epsabs=1e-11)
            return math.exp(log_sphere) * val
        if alpha * (d + 1) <= d:
            return math.inf
        val, _ = integrate.quad(lambda r: r ** (d - 1) * math.exp(alpha * logg(r)), 0, math.inf, limit=500, epsabs=1e-13)
    return (log_sphere + math.log(val)) / (1.0 - alpha)


def renyi_cauchy(D, d: int | None, alpha: float) -> EntropyReport:
    """Closed-form Rényi entropy of a d-variate Cauchy with scale matrix ``D``.

    Evaluates

        alpha != 1:  ln(alpha^(-d/(1-alpha)) det(4 pi D)^(1/2) Gamma((d+1)/2) / sqrt(pi))
        alpha == 1:  ln(det(4 e^2 pi D)^(1/2) Gamma((d+1)/2) / sqrt(pi))

    as stated, without correction. A quadrature value for the actual
    elliptical Cauchy density is computed alongside and reported in
    ``components`` as ``oracle_value`` / ``oracle_deviation``; the two differ
    (for the standard univariate Cauchy the closed form gives ln(2e) while the
    density's Shannon entropy is ln(4 pi)).
    """
    alpha = _check_alpha(alpha)
    logdet, dim = _logdet_spd(D)
    if d is not None and d != dim:
        raise DomainError(f"d={d} does not match scale matrix dimension {dim}")
    d = dim
    lg = math.lgamma((d + 1) / 2.0) - 0.5 * math.log(math.pi)
    if alpha == 1.0:
        value = 0.5 * (d * math.log(4.0 * math.e ** 2 * math.pi) + logdet) + lg
    else:
        value = -d / (1.0 - alpha) * math.log(alpha) + 0.5 * (d * math.log(4.0 * math.pi) + logdet) + lg
    oracle = _cauchy_radial_oracle(d, alpha) + 0.5 * logdet
    return EntropyReport(
        alpha, value, "exact_cauchy", "cauchy-closed-form",
        {"log_det": logdet, "oracle_value": oracle, "oracle_deviation": value - oracle},
    )


@dataclass(frozen=True)
class CauchyScaleResult:
    proportional: bool
    D: np.ndarray | None
    coefficients: tuple
    coefficients_star: tuple = ()
    tail_bound: float = 0.0
    max_deviation: float = 0.0

    @property
    def coefficient_sum(self) -> float:
        return float(sum(self.coefficients) + sum(self.coefficients_star))


def scale_from_coefficient_sum(a: float, S) -> np.ndarray:
    """``a^2 S``: the output scale when every term is a scalar multiple of ``S``'s factor."""
    return float(a) ** 2 * np.asarray(S, dtype=float)


def cauchy_scale_matrix(m: ArmaControlModel, tol: float = 1e-10,
                        prop_tol: float = PROPORTIONALITY_RTOL) -> CauchyScaleResult:
    """Collapse the Cauchy output into a single scale matrix when possible.

    With ``K_j = M_j L_u`` and ``K*_j = M*_j L_w``, the output is Cauchy with
    scale ``D = (sum sqrt(c_j) + sum sqrt(c*_j))^2 G`` whenever every
    ``K K'`` equals ``c G`` for one trace-normalized ``G``. Proportionality is
    judged by relative Frobenius deviation ``<= prop_tol``. The coefficient
    sum is completed to within ``tol`` using the certified impulse tail.
    """
    verdict = is_stable(m)
    if not verdict.stable:
        raise StabilityError(verdict.spectral_radius)
    L_u, L_w = m.control.spd.factor, m.noise.spd.factor
    l_norm = max(np.linalg.norm(L_u, 2), np.linalg.norm(L_w, 2))
    ir = impulse_response(m, tol=tol / l_norm)

    def outer(M, L):
        K = M @ L
        return K @ K.T

    G = outer(ir.M[0], L_u)
    G = G / np.trace(G)
    worst = 0.0
    coeffs = ([], [])
    for seq, L, out in ((ir.M, L_u, coeffs[0]), (ir.Mstar, L_w, coeffs[1])):
        for Mj in seq:
            P = outer(Mj, L)
            c = float(np.trace(P))
            if c > 0.0:
                worst = max(worst, float(np.linalg.norm(P - c * G) / c))
            out.append(math.sqrt(max(c, 0.0)))
    proportional = worst <= prop_tol
    D = None
    if proportional:
        a = sum(coeffs[0]) + sum(coeffs[1])
        D = a * a * G
        D.setflags(write=False)
    return CauchyScaleResult(proportional, D, tuple(coeffs[0]), tuple(coeffs[1]), l_norm * ir.tail_bound, worst)


def _psd_logdet(S) -> tuple[float, int]:
    arr = numerics.as_matrix(S, "S")
    if arr.shape[0] != arr.shape[1] or not numerics.is_symmetric(arr, 1e-9):
        raise DomainError("covariance must be a symmetric square matrix")
    arr = 0.5 * (arr + arr.T)
    eig = np.linalg.eigvalsh(arr)
    scale = max(1.0, float(np.max(np.abs(eig))))
    if eig[0] < -1e-12 * scale:
        raise DomainError(f"covariance is not positive semidefinite (min eigenvalue {eig[0]:.3g})")
    if eig[0] <= 1e-14 * scale:
        return -math.inf, arr.shape[0]
    return float(np.sum(np.log(eig))), arr.shape[0]


def shannon_upper_bound(S, d: int | None = None) -> EntropyReport:
    """``ln det(2 pi e S) / 2``: the largest Shannon entropy at covariance ``S``."""
    logdet, dim = _psd_logdet(S)
    if d is not None and d != dim:
        raise DomainError(f"d={d} does not match covariance dimension {dim}")
    value = 0.5 * (dim * math.log(2.0 * math.pi * math.e) + logdet)
    return EntropyReport(
        1.0, value, "upper_bound", "shannon-covariance-bound",
        {"half_log_det": 0.5 * logdet, "unbounded_below": math.isinf(logdet)},
    )


def renyi_upper_bound(S, d: int | None, alpha: float) -> EntropyReport:
    """``C_d(alpha) + ln det(S) / 2``: Rényi entropy bound at covariance ``S``."""
    logdet, dim = _psd_logdet(S)
    if d is not None and d != dim:
        raise DomainError(f"d={d} does not match covariance dimension {dim}")
    c = c_d_alpha(dim, alpha)
    return EntropyReport(
        float(alpha), c + 0.5 * logdet, "upper_bound", "renyi-covariance-bound",
        {"c_d_alpha": c, "half_log_det": 0.5 * logdet, "unbounded_below": math.isinf(logdet)},
    )


def model_upper_bound(m: ArmaControlModel, alpha: float) -> EntropyReport:
    if m.family is Family.CAUCHY:
        raise NoFiniteCovarianceError("covariance bound needs finite second moments; cauchy residuals have none")
    return renyi_upper_bound(covariance_lyapunov(m).phi0, m.d, alpha)


def model_entropy(m: ArmaControlModel, alpha: float, tol: float = 1e-10) -> EntropyReport:
    """Best available entropy statement for the model's output.

    Gaussian and (proportional) Cauchy outputs get their exact value; a
    Laplace output only admits the covariance upper bound.

    Raises
    ------
    NotProportionalError
        Cauchy model whose terms do not collapse to one scale matrix.
    """
    if m.family is Family.GAUSSIAN:
        return renyi_gaussian(covariance_lyapunov(m).phi0, alpha)
    if m.family is Family.CAUCHY:
        res = cauchy_scale_matrix(m, tol=tol)
        if not res.proportional:
            raise NotProportionalError("scale matrix not proportional; closed form unavailable")
        rep = renyi_cauchy(res.D, m.d, alpha)
        rep.components["coefficient_sum"] = res.coefficient_sum
        return rep
    return model_upper_bound(m, alpha)
