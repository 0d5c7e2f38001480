"""Small hand-checkable cases across modules, each with an independent expectation."""

import math

import numpy as np
import pytest
from scipy import stats

from arma_renyi import numerics
from arma_renyi import worked_examples as ex
from arma_renyi.charfn import charfn
from arma_renyi.covariance import autocovariance, covariance_lyapunov, covariance_series
from arma_renyi.entropy import (
    cauchy_scale_matrix,
    renyi_cauchy,
    renyi_gaussian,
    renyi_upper_bound,
    shannon_upper_bound,
)
from arma_renyi.model import ArmaControlModel, ResidualFamily, ar_companion, is_stable
from arma_renyi.realization import build_companion, impulse_response
from arma_renyi.simulate import SimConfig, entropy_numeric_1d, sample_residual, simulate_path
from arma_renyi.verification import random_stable_model


def scalar_ar1(a=0.5, family="gaussian"):
    # unit total innovation variance split evenly between u and w
    return ArmaControlModel.create([np.array([[a]])], family=family, S_u=[[0.5]], S_w=[[0.5]])


# numerics

def test_kron_small_cases(rng):
    B = rng.standard_normal((2, 2))
    np.testing.assert_array_equal(numerics.kron(np.eye(1), B), B)
    np.testing.assert_array_equal(numerics.kron([[2.0]], [[3.0]]), [[6.0]])
    A = rng.standard_normal((2, 2))
    K = numerics.kron(A, B)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    assert K[2 * i + k, 2 * j + l] == A[i, j] * B[k, l]


def test_vec_of_column_and_triple_product(rng):
    v = np.array([[1.0], [2.0], [3.0]])
    np.testing.assert_array_equal(numerics.vec(v), v)
    theta, phi = rng.standard_normal((3, 3)), rng.standard_normal((3, 3))
    np.testing.assert_allclose(numerics.vec(theta @ phi @ theta.T),
                               numerics.kron(theta, theta) @ numerics.vec(phi), atol=1e-12)


def test_spectral_radius_cases():
    assert numerics.spectral_radius(np.diag([0.5, 0.3, -0.1])) == pytest.approx(0.5)
    assert numerics.spectral_radius(ex.EX2_A1) == pytest.approx(0.5)
    assert numerics.spectral_radius(ex.EX1_A1) == pytest.approx(1 / min(abs(z) for z in ex.REF_ROOTS_EX1), abs=1e-4)


def test_spd_factor_cases():
    np.testing.assert_array_equal(numerics.spd_factor(np.eye(3)).factor, np.eye(3))
    np.testing.assert_allclose(numerics.spd_factor(ex.EX1_S_W).factor, np.diag([0.5, 1.0, math.sqrt(0.5)]))
    L = numerics.spd_factor(ex.EX1_S_U).factor
    np.testing.assert_allclose(L @ L.T, ex.EX1_S_U, atol=1e-12)


def test_solve_and_det_cases(rng):
    b = np.array([1.0, 2.0])
    np.testing.assert_array_equal(numerics.solve(np.eye(2), b), b)
    np.testing.assert_allclose(numerics.solve(np.diag([2.0, 4.0]), [2.0, 8.0]), [1.0, 2.0])
    A = rng.standard_normal((10, 10)) + 10 * np.eye(10)
    b = rng.standard_normal(10)
    assert np.linalg.norm(A @ numerics.solve(A, b) - b) / np.linalg.norm(b) < 1e-9
    assert numerics.det(np.eye(3)) == pytest.approx(1.0)
    assert numerics.det(np.diag([2.0, 3.0])) == pytest.approx(6.0)


def test_printed_phi0_determinant_is_what_the_printed_entropy_implies():
    det = numerics.det(ex.REF_PHI0_EX1)
    assert 0.5 * math.log((2 * math.pi * math.e) ** 3 * det) == pytest.approx(ex.REF_SHANNON_EX1, abs=1e-3)
    assert det == pytest.approx(3.943, abs=2e-3)


# model / realization

def test_unit_root_and_zero_ar():
    unit = ArmaControlModel.create([np.eye(2)], family="gaussian", S_u=np.eye(2), S_w=np.eye(2))
    assert not is_stable(unit).stable
    zero = ArmaControlModel.create([np.zeros((2, 2))], [np.eye(2)], family="gaussian", S_u=np.eye(2), S_w=np.eye(2))
    v = is_stable(zero)
    assert v.stable and v.spectral_radius == 0.0


def test_example1_companion_blocks():
    real = build_companion(ex.example1_model())
    np.testing.assert_array_equal(real.theta_11, ex.EX1_A1)
    np.testing.assert_array_equal(real.theta[:3, 3:], np.hstack([ex.EX1_B1, np.eye(3)]))
    np.testing.assert_array_equal(real.theta_22, np.zeros((6, 6)))
    np.testing.assert_array_equal(real.sel_I @ real.sel_J1, np.eye(3))
    np.testing.assert_array_equal(real.sel_I @ real.sel_J2, np.eye(3))


def test_scalar_ar2_companion():
    m = ArmaControlModel.create([np.array([[0.3]]), np.array([[0.2]])], family="gaussian", S_u=[[1.0]], S_w=[[1.0]])
    np.testing.assert_array_equal(build_companion(m).theta, [[0.3, 0.2], [1.0, 0.0]])


def test_companion_radius_equals_ar_radius(rng):
    for _ in range(10):
        m = random_stable_model(rng)
        if m.p + m.r + m.q == 0:
            continue
        assert numerics.spectral_radius(build_companion(m).theta) == pytest.approx(
            numerics.spectral_radius(ar_companion(m.A, m.d)), abs=1e-9)


def test_zero_ar_impulse_is_finite_ma(rng):
    B = [rng.standard_normal((2, 2)) for _ in range(2)]
    D = [rng.standard_normal((2, 2))]
    m = ArmaControlModel.create([], B, D, "gaussian", np.eye(2), np.eye(2))
    ir = impulse_response(m, min_terms=5)
    for j in range(1, 6):
        np.testing.assert_array_equal(ir.M[j], B[j - 1] if j <= 2 else np.zeros((2, 2)))
        np.testing.assert_array_equal(ir.Mstar[j], D[j - 1] if j <= 1 else np.zeros((2, 2)))


# covariance

def test_scalar_ar1_autocovariance():
    cov = autocovariance(scalar_ar1(), 5)
    for tau in range(6):
        assert cov.phi[tau][0, 0] == pytest.approx(4 / 3 * 0.5 ** tau, abs=1e-12)


def test_finite_ma_autocovariance_vanishes(rng):
    m = ArmaControlModel.create([], [rng.standard_normal((2, 2))], [], "gaussian", np.eye(2), np.eye(2))
    cov = autocovariance(m, 4)
    for tau in (2, 3, 4):
        np.testing.assert_array_equal(cov.phi[tau], np.zeros((2, 2)))


def test_example2_gaussian_geometric_series():
    m = ex.example2_model("gaussian")
    phi0 = covariance_lyapunov(m).phi0
    S = ex.EX2_S
    expect = (1 + 0.64 / 0.75) * S[0, 0] + (1 + 2.25 / 0.75) * S[0, 0]
    assert phi0[0, 0] == pytest.approx(expect, abs=1e-12)


def test_example1_lagged_recursion_against_series():
    m = ex.example1_model()
    full = autocovariance(m, 6)
    ser = covariance_series(m, tol=1e-12, tau_max=6)
    for tau in range(2, 7):
        assert np.linalg.norm(full.phi[tau] - ser.phi[tau]) <= ser.tail_bound + 1e-10


# entropy

def test_gaussian_entropy_cases():
    assert renyi_gaussian([[1 / (2 * math.pi * math.e)]], 1.0).value == pytest.approx(0.0, abs=1e-14)
    assert renyi_gaussian([[1.0]], 2.0).value == pytest.approx(math.log(2 * math.sqrt(math.pi)), abs=1e-12)
    assert entropy_numeric_1d(stats.norm.pdf, 2.0) == pytest.approx(math.log(2 * math.sqrt(math.pi)), abs=1e-8)
    assert shannon_upper_bound(np.eye(4)).value == pytest.approx(2 * math.log(2 * math.pi * math.e))


def test_cauchy_scaling_by_log_det(rng):
    D0 = np.cov(rng.standard_normal((3, 50)))
    for alpha in (1.0, 2.0):
        base = renyi_cauchy(D0, 3, alpha).value
        assert renyi_cauchy(2.5 * D0, 3, alpha).value - base == pytest.approx(0.5 * math.log(2.5 ** 3), abs=1e-12)


def test_cauchy_proportionality_cases():
    assert not cauchy_scale_matrix(ex.example1_model("cauchy")).proportional
    S = np.array([[2.0, 0.3], [0.3, 1.0]])
    single = ArmaControlModel.create(family="cauchy", S_u=S, S_w=S)
    res = cauchy_scale_matrix(single)
    assert res.proportional
    np.testing.assert_allclose(res.D, 4 * S, atol=1e-12)


def test_laplace_single_term_bound_dominates_convolution_entropy():
    # u + w with u, w iid Laplace(b), var = 2 b^2 = s: density (1 + |x|/b) exp(-|x|/b) / (4b)
    s = 1.7
    b = math.sqrt(s / 2)

    def f(x):
        return (1 + abs(x) / b) * math.exp(-abs(x) / b) / (4 * b)

    for alpha in (0.5, 1.0, 2.0):
        assert renyi_upper_bound([[2 * s]], 1, alpha).value >= entropy_numeric_1d(f, alpha)


def test_example1_bound_equals_exact_at_one():
    phi0 = covariance_lyapunov(ex.example1_model()).phi0
    assert renyi_upper_bound(phi0, 3, 1.0).value == pytest.approx(renyi_gaussian(phi0, 1.0).value, abs=1e-12)
    assert renyi_upper_bound(phi0, 3, 2.0).value == pytest.approx(
        renyi_upper_bound(covariance_lyapunov(ex.example3_model()).phi0, 3, 2.0).value, abs=0)


# charfn

def test_gaussian_charfn_first_axis():
    v = charfn(ex.example1_model(), [1.0, 0.0, 0.0]).value
    assert v.real == pytest.approx(math.exp(-0.5 * 5.17), abs=1e-12)


def test_single_term_laplace_charfn():
    S_u, S_w = np.array([[1.0, 0.2], [0.2, 2.0]]), np.diag([0.5, 0.3])
    m = ArmaControlModel.create(family="laplace", S_u=S_u, S_w=S_w)
    s = np.array([0.7, -0.4])
    assert charfn(m, s).value.real == pytest.approx(1 / ((1 + 0.5 * s @ S_u @ s) * (1 + 0.5 * s @ S_w @ s)), abs=1e-15)


@pytest.mark.parametrize("family", ["gaussian", "cauchy", "laplace"])
def test_random_model_charfn_against_simulation(family):
    rng = np.random.default_rng({"gaussian": 1, "cauchy": 2, "laplace": 3}[family])
    m = random_stable_model(rng, family=family, max_d=2)
    pts = rng.standard_normal((3, m.d)) * 0.5
    n = 100_000
    summary = simulate_path(m, SimConfig(seed=17, n_samples=n), points=pts)
    for (s, emp, _), s_ in zip(summary.ecf, pts):
        assert abs(emp - charfn(m, s_).value) <= 4 / math.sqrt(n)


# simulate

def test_sampler_reference_cases():
    n = 100_000
    g = sample_residual(ResidualFamily("gaussian", np.eye(2)), n, 1)
    lap = sample_residual(ResidualFamily("laplace", np.diag([1.0, 4.0])), n, 2)
    for x, S, kurt in ((g, np.eye(2), 1.0), (lap, np.diag([1.0, 4.0]), 3.0)):
        se = np.sqrt(kurt * (np.outer(np.diag(S), np.diag(S)) + S ** 2) / n)
        assert np.all(np.abs(np.cov(x.T) - S) <= 3 * se)
    c = sample_residual(ResidualFamily("cauchy", np.eye(1)), n, 3)
    assert np.mean(np.cos(c[:, 0])) == pytest.approx(math.exp(-1), abs=4 / math.sqrt(n))


def test_white_noise_simulation_mean():
    m = ArmaControlModel.create(family="gaussian", S_u=np.eye(2), S_w=np.eye(2))
    out = simulate_path(m, SimConfig(seed=3, n_samples=50_000))
    assert np.all(np.abs(out.mean) <= 3 * out.mean_se)


def test_uniform_density_entropy_zero():
    for alpha in (0.5, 1.0, 3.0):
        assert entropy_numeric_1d(lambda x: 1.0, alpha, (0.0, 1.0)) == pytest.approx(0.0, abs=1e-12)
