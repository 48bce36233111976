import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fockmodel.exceptions import NonCommutingError, ValidationError
from fockmodel.polynomial import Polynomial, fock_inner
from fockmodel.tuples import CyclicTuple, moments, translate_moments, twist_by_polynomial, validate

from generators import cnormal, polynomial_tuple


def test_rejects_bad_shapes_and_weights():
    with pytest.raises(ValidationError) as e:
        CyclicTuple([np.eye(2)], [1, 0, 0])
    assert e.value.field == "h"
    with pytest.raises(ValidationError):
        CyclicTuple([np.eye(2)], [0, 0])
    with pytest.raises(ValidationError) as e:
        CyclicTuple([np.eye(2)], [1, 0], gram=[1, -1])
    assert e.value.field == "gram"


def test_validate_detects_noncommuting_and_noncyclic():
    t = CyclicTuple([[[0, 1], [0, 0]], [[0, 0], [1, 0]]], [1, 0])
    assert not validate(t).commuting
    with pytest.raises(NonCommutingError):
        validate(t, raise_on_error=True)
    rep = validate(CyclicTuple([np.eye(2)], [1, 0]))
    assert rep.commuting and rep.krylov_rank == 1 and rep.cyclic is False


def test_jordan_moments_are_kronecker_delta():
    t = CyclicTuple([np.diag([1.0, 1.0], -1)], [1, 0, 0])
    mt = moments(t, 4)
    ref = np.zeros((5, 5))
    ref[:3, :3] = np.eye(3)
    assert np.array_equal(mt.values, ref)


def test_weighted_inner_product_matches_euclidean_form():
    rng = np.random.default_rng(0)
    a = np.diag([1.0, 2.0])
    t = CyclicTuple([[[0.5, 1.0], [0.0, 0.2]]], [1.0, 1.0], gram=[1.0, 3.0])
    u, v = cnormal(rng, 2), cnormal(rng, 2)
    assert t.inner(u, v) == pytest.approx(np.conj(v) @ np.diag([1.0, 3.0]) @ u)
    e = t.to_euclidean()
    assert np.allclose(moments(e, 4).values, moments(t, 4).values, atol=1e-12)
    assert a.shape == (2, 2)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 4))
def test_moment_tables_are_hermitian_psd(seed, m):
    t = polynomial_tuple(np.random.default_rng(seed), m)
    mt = moments(t, 4)
    assert mt.hermitian_defect() <= 1e-12 * np.abs(mt.values).max()
    assert mt.is_psd()


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_translation_matches_shifted_tuple(seed):
    rng = np.random.default_rng(seed)
    t = polynomial_tuple(rng, 3)
    lam = cnormal(rng, 2)
    got = translate_moments(moments(t, 4), lam)
    ref = moments(t.shifted(lam), 4)
    assert np.abs(got.values - ref.values).max() <= 1e-10 * max(1.0, np.abs(ref.values).max())


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_twist_matches_new_vector(seed):
    rng = np.random.default_rng(seed)
    t = polynomial_tuple(rng, 3)
    p = Polynomial(2, {(0, 0): 1.0, (1, 0): cnormal(rng, 1)[0], (0, 1): 0.5j})
    got = twist_by_polynomial(moments(t, 5), p)
    ref = moments(t.with_vector(t.apply(p)), 4)
    assert np.abs(got.values - ref.values).max() <= 1e-10 * max(1.0, np.abs(ref.values).max())


def test_unitary_conjugation_preserves_moments():
    rng = np.random.default_rng(3)
    t = polynomial_tuple(rng, 3)
    q, _ = np.linalg.qr(cnormal(rng, 3, 3))
    assert np.allclose(moments(t.conjugated(q), 4).values, moments(t, 4).values, atol=1e-12)


def test_fock_inner_uses_factorial_weights():
    p = Polynomial(2, {(2, 1): 1.0, (0, 0): 2.0})
    assert fock_inner(p, p) == pytest.approx(2 + 4)
    assert p.derivative(0) == Polynomial(2, {(1, 1): 2.0})
