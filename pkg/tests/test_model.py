import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arma_renyi import worked_examples as ex
from arma_renyi.errors import ModelValidationError
from arma_renyi.model import (
    ArmaControlModel,
    Family,
    ResidualFamily,
    ar_companion,
    dump_model,
    is_stable,
    load_model,
    model_from_dict,
    model_to_dict,
    require_valid,
    validate,
)
from arma_renyi.verification import random_stable_model


def messages(m):
    return [f"{v.path}: {v.message}" for v in validate(m).violations]


def test_example_models_are_valid():
    for m in (ex.example1_model(), ex.example2_model(), ex.example3_model()):
        assert validate(m).ok
        assert m.max_order == 1


def test_example1_roots_match_printed_values():
    # p = 1: roots of det(I - A_1 z) are reciprocals of the eigenvalues of A_1
    roots = sorted(1.0 / np.linalg.eigvals(ex.EX1_A1).real)
    assert roots == pytest.approx(sorted(ex.REF_ROOTS_EX1), abs=1e-4)
    verdict = is_stable(ex.example1_model())
    assert verdict.stable
    assert verdict.spectral_radius == pytest.approx(0.5, abs=1e-14)


def test_unstable_model():
    m = ArmaControlModel.create([np.array([[1.1]])], family="gaussian", S_u=[[1.0]], S_w=[[1.0]])
    verdict = is_stable(m)
    assert not verdict.stable
    assert verdict.spectral_radius == pytest.approx(1.1)


def test_pure_moving_average_is_stable():
    m = ArmaControlModel.create([], [np.eye(2)], [], "gaussian", np.eye(2), np.eye(2))
    v = is_stable(m)
    assert v.stable and v.spectral_radius == 0.0


def test_dimension_mismatch_reported():
    m = ArmaControlModel.create([np.eye(2)], family="gaussian", S_u=np.eye(3), S_w=np.eye(3))
    assert any("A[0]: dimension mismatch" in s for s in messages(m))


def test_order_count_mismatch_reported():
    m = ArmaControlModel(d=1, p=2, r=0, q=0, A=[np.eye(1)], B=[], D=[],
                         control=ResidualFamily("gaussian", np.eye(1)), noise=ResidualFamily("gaussian", np.eye(1)))
    assert messages(m) == ["A: expected 2 matrices, got 1"]


def test_scale_checks():
    m = ArmaControlModel.create(family="gaussian", S_u=[[1.0, 0.2], [0.0, 1.0]], S_w=np.diag([1.0, -1.0]))
    msgs = messages(m)
    assert "S_u: scale not symmetric" in msgs
    assert any(s.startswith("S_w: scale not positive definite") for s in msgs)
    with pytest.raises(ModelValidationError):
        require_valid(m)


def test_mixed_families_rejected():
    m = ArmaControlModel(d=1, p=0, r=0, q=0, A=[], B=[], D=[],
                         control=ResidualFamily("gaussian", np.eye(1)), noise=ResidualFamily("cauchy", np.eye(1)))
    assert any(s.startswith("family: mixed") for s in messages(m))


def test_family_flags():
    assert Family.GAUSSIAN.has_covariance and Family.LAPLACE.has_covariance
    assert not Family.CAUCHY.has_covariance
    with pytest.raises(ValueError):
        ResidualFamily("student", np.eye(1))


def test_arrays_are_read_only():
    m = ex.example1_model()
    with pytest.raises(ValueError):
        m.A[0][0, 0] = 2.0


def test_ar_companion_layout():
    A1, A2 = np.full((2, 2), 1.0), np.full((2, 2), 2.0)
    C = ar_companion([A1, A2], 2)
    np.testing.assert_array_equal(C[:2], np.hstack([A1, A2]))
    np.testing.assert_array_equal(C[2:], np.hstack([np.eye(2), np.zeros((2, 2))]))
    assert ar_companion([], 3).shape == (3, 3)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(["gaussian", "cauchy", "laplace"]))
def test_json_round_trip(seed, family):
    m = random_stable_model(np.random.default_rng(seed), family=family)
    again = model_from_dict(json.loads(json.dumps(model_to_dict(m))))
    assert again == m


def test_file_round_trip(tmp_path):
    m = ex.example2_model()
    dump_model(m, tmp_path / "m.json")
    assert load_model(tmp_path / "m.json") == m


def test_from_dict_accepts_single_matrix_for_order_one():
    doc = model_to_dict(ex.example1_model())
    doc["A"] = doc["A"][0]
    assert model_from_dict(doc) == ex.example1_model()


@pytest.mark.parametrize("mutate, path", [
    (lambda d: d.pop("S_u"), "S_u"),
    (lambda d: d.update(schema_version=7), "schema_version"),
    (lambda d: d.update(A="abc"), "$"),
])
def test_from_dict_errors(mutate, path):
    doc = model_to_dict(ex.example1_model())
    mutate(doc)
    with pytest.raises(ModelValidationError) as info:
        model_from_dict(doc)
    assert info.value.violations[0].path == path
