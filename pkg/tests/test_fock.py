import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fockmodel.exceptions import NotCyclicError
from fockmodel.fock import (build_L, convergence_diagnostics, decompose_tuple, hs_bound, model_basis_check,
                            spectral_decompose)
from fockmodel.kernel import eval_F, series_F
from fockmodel.models import jordan_block_tuple, varopoulos_kaijser
from fockmodel.tuples import CyclicTuple, moments

from generators import cnormal, polynomial_tuple


def test_jordan_operator_is_diagonal_inverse_factorials():
    # L[k, k] = m(k, k) / k! = 1 / k! for k < m, zero beyond
    L = build_L(moments(jordan_block_tuple(3), 4))
    assert np.allclose(np.diag(L.matrix).real, [1, 1, 0.5, 0, 0])
    assert L.hs_norm_squared() == pytest.approx(2.25)


def test_vk_operator_spectrum_frozen():
    ev = build_L(moments(varopoulos_kaijser().tuple, 2)).eigenvalues()
    assert ev[0] == pytest.approx(1.5, abs=1e-12)
    assert np.allclose(ev[1:5], 1.0, atol=1e-12)
    assert np.all(np.abs(ev[5:]) <= 1e-12)


def test_scalar_eigenpolynomial_is_exponential_truncation():
    # T = [a], h = 1: L is the rank-one projector onto a truncated exponential
    a = 0.7 - 0.2j
    dec = decompose_tuple(CyclicTuple([[[a]]], [1.0]), 8)
    assert dec.rank == 1
    truncated = sum(abs(a) ** (2 * k) / math.factorial(k) for k in range(9))
    assert dec.eigenvalues[0] == pytest.approx(truncated, rel=1e-12)


def test_model_check_raises_when_not_cyclic():
    t = CyclicTuple([np.eye(2)], [1, 0])
    with pytest.raises(NotCyclicError):
        model_basis_check(t, decompose_tuple(t))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 4))
def test_decomposition_properties(seed, m):
    rng = np.random.default_rng(seed)
    t = polynomial_tuple(rng, m, norm=0.5)
    mt = moments(t, 10)
    L = build_L(mt)
    dec = spectral_decompose(L)
    assert L.hermitian_defect() <= 1e-12
    assert np.all(L.eigenvalues() >= -1e-12 * L.eigenvalues()[0])
    assert np.allclose(dec.reconstruct(), L.matrix, atol=1e-10 * np.abs(L.matrix).max())
    assert L.hs_norm_squared() <= hs_bound(t)
    rep = model_basis_check(t, dec, 1e-7)
    assert rep.passed, rep
    z, w = cnormal(rng, 2), cnormal(rng, 2)
    assert dec.kernel(z, w) == pytest.approx(series_F(mt, z, w), rel=1e-10, abs=1e-12)


def test_truncated_kernel_converges_to_exact():
    t = polynomial_tuple(np.random.default_rng(8), 3, norm=0.5)
    z, w = np.array([0.3, -0.2j]), np.array([0.1, 0.4])
    assert decompose_tuple(t, 14).kernel(z, w) == pytest.approx(eval_F(t, z, w), rel=1e-12)


def test_convergence_diagnostics_settle():
    diag = convergence_diagnostics(polynomial_tuple(np.random.default_rng(1), 3, norm=0.5), 10)
    assert diag["max_change"] <= 1e-8
