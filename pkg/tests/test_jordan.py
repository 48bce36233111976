import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fockmodel.exceptions import NotJordanInputError
from fockmodel.jordan import (distribution_moments, distribution_rep, eval_distribution, format_rep,
                              joint_spectral_decompose)
from fockmodel.models import jordan_block_tuple
from fockmodel.tuples import CyclicTuple, moments

from generators import jordan_tuple, random_unitary, similarity_tuple


def test_jordan_block_distribution_text():
    assert format_rep(distribution_rep(jordan_block_tuple(2))) == "(1 + ∂∂̄)δ_0"
    assert format_rep(distribution_rep(jordan_block_tuple(3))) == "(1 + ∂∂̄ + 0.25∂^2∂̄^2)δ_0"


def test_jordan_block_functional_values():
    rep = distribution_rep(jordan_block_tuple(2))
    assert eval_distribution(rep, (0,), (0,)) == pytest.approx(1)
    assert eval_distribution(rep, (1,), (1,)) == pytest.approx(1)
    assert eval_distribution(rep, (2,), (2,)) == pytest.approx(0)
    assert eval_distribution(rep, (1,), (0,)) == pytest.approx(0)


def test_diagonal_tuple_is_sum_of_point_masses():
    t = CyclicTuple([np.diag([0.3, -1j])], [1, 1])
    dec = joint_spectral_decompose(t)
    assert dec.is_jordan and len(dec.blocks) == 2
    rep = distribution_rep(t, dec)
    assert rep.order == 0
    assert np.abs(distribution_moments(rep, 4).values - moments(t, 4).values).max() <= 1e-12


def test_non_normal_example_is_not_jordan():
    t = CyclicTuple([[[0, 0], [1, 1]]], [1, 0])
    dec = joint_spectral_decompose(t)
    assert dec.classification == "NotJordan"
    assert dec.self_adjoint_defect == pytest.approx(np.sqrt(0.5), rel=1e-8)
    with pytest.raises(NotJordanInputError):
        distribution_rep(t, dec)


def test_nilpotency_index_of_block():
    dec = joint_spectral_decompose(jordan_block_tuple(4, 2.0))
    (block,) = dec.blocks
    assert block.dim == 4 and block.nilpotency == (4,)
    assert np.allclose(block.eigenvalue, [2.0])


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_random_jordan_round_trip(seed):
    t = jordan_tuple(np.random.default_rng(seed))
    dec = joint_spectral_decompose(t)
    assert dec.is_jordan
    assert dec.completeness_defect <= 1e-8 and dec.cross_defect <= 1e-8
    mt = moments(t, 5)
    rep = distribution_rep(t, dec)
    err = np.abs(distribution_moments(rep, 5).values - mt.values).max()
    assert err <= 1e-9 * max(1.0, np.abs(mt.values).max())


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_classification_is_unitarily_invariant(seed):
    rng = np.random.default_rng(seed)
    t = jordan_tuple(rng) if rng.random() < 0.5 else similarity_tuple(rng)
    u = random_unitary(rng, t.m)
    assert joint_spectral_decompose(t).classification == joint_spectral_decompose(t.conjugated(u)).classification


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_similarity_conjugates_are_not_jordan(seed):
    assert joint_spectral_decompose(similarity_tuple(np.random.default_rng(seed))).classification == "NotJordan"
