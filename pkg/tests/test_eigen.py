import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fockmodel.eigen import (UNBOUNDED, Unbounded, direct_joint_eigen, distance_constant, eigen_grid,
                             eigen_report, psd_criterion, witness_holds)
from fockmodel.models import jordan_block_tuple
from fockmodel.tuples import CyclicTuple, moments

from generators import LATTICE, lattice_tuple


def test_jordan_block_eigenvector_and_constant():
    t = jordan_block_tuple(2)
    res = direct_joint_eigen(t, 0)
    assert res.verdict
    assert np.allclose(np.abs(res.vector), [1, 0])
    dist = distance_constant(t, 0)
    assert dist.distance == pytest.approx(1.0) and dist.constant == pytest.approx(1.0)
    assert not direct_joint_eigen(t, 1).verdict
    assert distance_constant(t, 1).constant is UNBOUNDED


def test_psd_criterion_threshold_on_jordan_block():
    mt = moments(jordan_block_tuple(2), 3)
    assert psd_criterion(mt, 0, 1.0).verdict
    neg = psd_criterion(mt, 0, 0.5)
    assert not neg.verdict
    assert witness_holds(jordan_block_tuple(2), neg.witness, 0, 0.5)


def test_diagonal_tuple_distance():
    # conj(lam) = 0.5 is an eigenvalue of T^*; the distance is |<h, e_1>|
    t = CyclicTuple([np.diag([0.5, 1j])], np.array([1, 1]) / np.sqrt(2))
    assert distance_constant(t, 0.5).distance == pytest.approx(1 / np.sqrt(2))
    assert direct_joint_eigen(t, -1j).verdict


def test_unbounded_is_singleton():
    assert Unbounded() is UNBOUNDED
    assert report_label(eigen_report(jordan_block_tuple(2), 1)) == "n/a"


def report_label(r):
    return r.psd_label


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_criteria_agree_on_lattice(seed):
    rng = np.random.default_rng(seed)
    t = lattice_tuple(rng)
    mt = moments(t, 6)
    for r in eigen_grid(t, LATTICE, 6):
        assert r.consistent
        if r.direct_verdict:
            assert psd_criterion(mt, r.lam, r.constant, 6).verdict
            below = psd_criterion(mt, r.lam, 0.9 * r.constant, 6)
            assert not below.verdict and witness_holds(t, below.witness, r.lam, 0.9 * r.constant)


def test_two_variable_joint_eigenvalue():
    t = CyclicTuple([np.diag([1.0, 2.0]), np.diag([3.0, 3.0])], [1, 1])
    assert direct_joint_eigen(t, [1, 3]).verdict
    assert not direct_joint_eigen(t, [1, 2]).verdict
