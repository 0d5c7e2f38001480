import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arma_renyi import worked_examples as ex
from arma_renyi.charfn import charfn, charfn_cauchy, charfn_gaussian, charfn_laplace, charfn_values
from arma_renyi.covariance import covariance_lyapunov
from arma_renyi.entropy import cauchy_scale_matrix
from arma_renyi.errors import DomainError
from arma_renyi.realization import impulse_response
from arma_renyi.verification import random_stable_model

S_POINTS = np.array([[0.1, 0.0, 0.0], [0.2, -0.2, 0.2], [1.0, 2.0, -1.0]])


def test_gaussian_closed_form():
    m = ex.example1_model()
    phi0 = covariance_lyapunov(m).phi0
    for s in S_POINTS:
        v = charfn_gaussian(m, s)
        assert v.value == pytest.approx(np.exp(-0.5 * s @ phi0 @ s), abs=1e-15)
        assert v.truncation_error == 0.0


def test_origin_is_one():
    for m in (ex.example1_model(), ex.example2_model(), ex.example3_model()):
        assert charfn(m, np.zeros(3)).value == pytest.approx(1.0, abs=1e-15)


def test_cauchy_product_matches_collapsed_scale():
    m = ex.example2_model()
    D = cauchy_scale_matrix(m).D
    for s in S_POINTS:
        v = charfn_cauchy(m, s)
        assert v.value.real == pytest.approx(np.exp(-np.sqrt(s @ D @ s)), abs=1e-10)
        assert v.value.imag == 0.0


def _laplace_product(m, s, n_terms):
    ir = impulse_response(m, min_terms=n_terms)
    out = 1.0
    for seq, S in ((ir.M, m.control.scale), (ir.Mstar, m.noise.scale)):
        for Mj in seq[: n_terms + 1]:
            out /= 1.0 + 0.5 * s @ Mj @ S @ Mj.T @ s
    return out


def test_laplace_against_long_product():
    m = ex.example3_model()
    for s in S_POINTS:
        assert charfn_laplace(m, s).value.real == pytest.approx(_laplace_product(m, s, 200), abs=1e-10)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(["cauchy", "laplace"]))
def test_truncation_error_is_honest(seed, family):
    rng = np.random.default_rng(seed)
    m = random_stable_model(rng, family=family)
    s = rng.standard_normal(m.d)
    coarse = charfn(m, s, tol=1e-3)
    fine = charfn(m, s, tol=1e-13)
    assert abs(coarse.value - fine.value) <= coarse.truncation_error + fine.truncation_error + 1e-13
    assert coarse.truncation_error <= 1e-3


def test_laplace_small_s_matches_covariance():
    # phi(s) = 1 - s' Phi(0) s / 2 + O(|s|^4) for finite-variance outputs
    m = ex.example3_model()
    phi0 = covariance_lyapunov(m).phi0
    s = 1e-3 * np.array([1.0, -2.0, 0.5])
    assert charfn(m, s).value.real == pytest.approx(1 - 0.5 * s @ phi0 @ s, abs=1e-10)


def test_vectorized_matches_single():
    m = ex.example3_model()
    many = charfn_values(m, S_POINTS)
    for s, v in zip(S_POINTS, many):
        assert v.value == pytest.approx(charfn(m, s).value, abs=1e-15)


def test_wrong_length_rejected():
    with pytest.raises(DomainError):
        charfn(ex.example1_model(), [1.0, 2.0])
