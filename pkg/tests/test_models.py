import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fockmodel.exceptions import ValidationError
from fockmodel.kernel import eval_F
from fockmodel.models import (AtomicMeasure, atomic_tuple, bump_measure, contraction_check, convolve_measures,
                              da_distribution_moment, drury_arveson, hardy, ht_equivalence_band, ht_space,
                              kernel_space_weight, polydisc_sup, radial_moment_table, varopoulos_kaijser,
                              weighted_model_kernel)
from fockmodel.polynomial import Polynomial
from fockmodel.reproductions import EXAMPLES
from fockmodel.tuples import moments


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_examples_pass(name):
    res = EXAMPLES[name]()
    assert res.passed, [c for c in res.checks if not c.ok]


def test_vk_frozen_values():
    vk = varopoulos_kaijser()
    assert np.linalg.norm(vk.p.at_matrices(vk.tuple.matrices), 2) == pytest.approx(3 * math.sqrt(3), abs=1e-12)
    assert vk.p((1, 1, -1)) == 5
    assert 4.99 <= polydisc_sup(vk.p) <= 5 + 1e-9


def test_polydisc_sup_trivial_cases():
    assert polydisc_sup(Polynomial.variable(2, 0)) == pytest.approx(1.0)
    assert polydisc_sup(Polynomial.constant(2, -3j)) == pytest.approx(3.0)


def test_radial_weights():
    assert drury_arveson(2).weight((1, 1)) == pytest.approx(0.5)
    assert ht_space(3, 3).weight((1, 2)) == pytest.approx(2 * 2 / math.factorial(5))
    assert all(ht_space(1, 1).weight((k,)) == pytest.approx(1.0) for k in range(10))
    assert hardy(1, 2.0).weight((3,)) == pytest.approx(2.0 ** 6)
    assert math.isfinite(ht_space(2, 500.0).log_weight((600, 400)))


def test_da_distribution_moment_values():
    assert da_distribution_moment(2, (1, 1), (1, 1)) == pytest.approx(0.5)
    assert da_distribution_moment(2, (1, 0), (0, 1)) == 0
    assert da_distribution_moment(1, (4,), (4,)) == pytest.approx(1.0)


def test_radial_table_matches_da_distribution():
    for n in (1, 2, 3):
        table = radial_moment_table(drury_arveson(n), 4)
        for i, a in enumerate(table.basis):
            for j, b in enumerate(table.basis):
                assert table.values[i, j] == pytest.approx(da_distribution_moment(n, a, b), abs=1e-13)


def test_weighted_kernel_values():
    assert weighted_model_kernel(hardy(1), hardy(1, 2.0), 0.0, 0.0) == pytest.approx(1.0)
    z, w = 1.2 + 0.3j, -0.5j
    assert weighted_model_kernel(hardy(1), hardy(1, 2.0), z, w) == pytest.approx(1 / (1 - z * np.conj(w) / 16),
                                                                                 abs=1e-12)
    assert kernel_space_weight(ht_space(2, 1.5), ht_space(2, 2.25), (1, 0)) == pytest.approx(1.5 / 2.25 ** 2)


def test_weighted_kernel_warns_outside_convergence():
    with pytest.warns(RuntimeWarning):
        weighted_model_kernel(hardy(1), hardy(1, 2.0), 5.0, 5.0, d=60)


def test_ht_band_is_bounded():
    lo, hi = ht_equivalence_band(2, 1.0, 0.5)
    assert 0 < lo <= hi < math.inf


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_atomic_kernel_is_fourier_laplace(seed):
    rng = np.random.default_rng(seed)
    mu = AtomicMeasure(rng.normal(size=(3, 2)) + 1j * rng.normal(size=(3, 2)), rng.uniform(0.5, 2, 3))
    t = atomic_tuple(mu)
    z, w = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    assert eval_F(t, z, w) == pytest.approx(mu.fourier_laplace(z, w), rel=1e-10)


def test_measure_convolution_adds_atoms():
    mu = AtomicMeasure([[0.0], [1.0]], [1.0, 2.0])
    nu = AtomicMeasure([[1.0]], [3.0])
    c = convolve_measures(mu, nu).merged()
    assert np.allclose(sorted(c.atoms[:, 0].real), [1, 2]) and c.mass == pytest.approx(9.0)


def test_atomic_tuple_rejects_duplicates():
    with pytest.raises(ValidationError):
        atomic_tuple(AtomicMeasure([[0.0], [0.0]], [1.0, 1.0]))


def test_bump_is_probability_like():
    mu = bump_measure(spacing=0.1)
    assert np.all(np.abs(mu.atoms[:, 0]) < 1)
    assert mu.mass > 0


def test_contraction_check_flags_non_contraction():
    vk = varopoulos_kaijser()
    assert all(contraction_check(moments(vk.tuple, 3), i)[0] for i in range(3))
    big = atomic_tuple(AtomicMeasure([[2.0]], [1.0]))
    assert not contraction_check(moments(big, 3), 0)[0]
