import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from arma_renyi import numerics
from arma_renyi.errors import DomainError, NotPositiveDefiniteError, NumericError, SingularMatrixError

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


@given(arrays(float, st.tuples(st.integers(1, 4), st.integers(1, 4)), elements=finite))
def test_vec_unvec_round_trip(a):
    v = numerics.vec(a)
    assert v.shape == (a.size, 1)
    np.testing.assert_array_equal(numerics.unvec(v, *a.shape), a)


def test_vec_stacks_columns():
    a = np.array([[1.0, 2.0], [3.0, 4.0]])
    np.testing.assert_array_equal(numerics.vec(a).ravel(), [1.0, 3.0, 2.0, 4.0])


@settings(max_examples=50)
@given(st.integers(1, 3), st.integers(0, 10_000))
def test_kron_vec_identity(n, seed):
    r = np.random.default_rng(seed)
    A, X, B = (r.standard_normal((n, n)) for _ in range(3))
    lhs = numerics.vec(A @ X @ B.T)
    rhs = numerics.kron(B, A) @ numerics.vec(X)
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)


def test_spectral_radius_of_rotation_and_scaling():
    c, s = np.cos(0.3), np.sin(0.3)
    assert numerics.spectral_radius(0.7 * np.array([[c, -s], [s, c]])) == pytest.approx(0.7, abs=1e-14)


def test_spd_factor_reconstructs_and_logdet():
    S = np.array([[4.0, 1.0], [1.0, 3.0]])
    f = numerics.spd_factor(S)
    np.testing.assert_allclose(f.factor @ f.factor.T, S, atol=1e-14)
    assert f.logdet() == pytest.approx(np.log(11.0))
    assert f.dim == 2


def test_spd_factor_reports_pivot():
    S = np.diag([1.0, 2.0, -1.0])
    with pytest.raises(NotPositiveDefiniteError) as info:
        numerics.spd_factor(S)
    assert info.value.pivot == 2


def test_spd_factor_rejects_asymmetric():
    with pytest.raises(DomainError, match="not symmetric"):
        numerics.spd_factor([[1.0, 0.5], [0.0, 1.0]])


def test_solve_and_det_match_numpy(rng):
    A = rng.standard_normal((5, 5)) + 5 * np.eye(5)
    b = rng.standard_normal(5)
    x = numerics.solve(A, b)
    assert x.shape == (5,)
    np.testing.assert_allclose(A @ x, b, atol=1e-12)
    assert numerics.det(A) == pytest.approx(np.linalg.det(A), rel=1e-12)


def test_solve_singular_raises():
    with pytest.raises(SingularMatrixError):
        numerics.solve(np.ones((3, 3)), np.ones(3))
    assert issubclass(SingularMatrixError, NumericError)


def test_as_matrix_rejects_non_finite():
    with pytest.raises(ValueError):
        numerics.as_matrix([[np.nan]])
