"""End-to-end acceptance criteria; each test emits one pass/fail line."""

import numpy as np
import pytest

from fockmodel.eigen import direct_joint_eigen, distance_constant, psd_criterion, witness_holds
from fockmodel.fock import build_L, hs_bound, model_basis_check, spectral_decompose
from fockmodel.gns import convolve, convolve_moments
from fockmodel.jordan import distribution_moments, distribution_rep, joint_spectral_decompose
from fockmodel.kernel import kernel_matrix
from fockmodel.models import AtomicMeasure, atomic_tuple, convolve_measures, jordan_block_tuple, varopoulos_kaijser
from fockmodel.reproductions import (drury_arveson_example, hardy_scale_example, jordan_block_example,
                                     varopoulos_kaijser_example)
from fockmodel.tuples import CyclicTuple, moments

from generators import LATTICE, cnormal, jordan_tuple, lattice_tuple, polynomial_tuple, similarity_tuple

pytestmark = pytest.mark.acceptance


def criterion5_tuples():
    rng = np.random.default_rng(5)
    return [polynomial_tuple(rng, 4, 2, norm=0.5) for _ in range(20)]


def criterion6_tuples():
    rng = np.random.default_rng(6)
    return [jordan_tuple(rng) for _ in range(30)]


def relative_round_trip(t, d=6):
    mt = moments(t, d)
    rep = distribution_rep(t)
    return float(np.abs(distribution_moments(rep, d).values - mt.values).max() / max(1.0, np.abs(mt.values).max()))


def test_criterion_1_varopoulos_kaijser(acceptance_line):
    res = varopoulos_kaijser_example()
    vals = {c.label: c.value for c in res.checks}
    acceptance_line(1, "Varopoulos-Kaijser", res.passed,
                    f"||p(T)|| = {vals['||p(T)||']:.12f}, sup = {vals['sup |p| on polydisc']:.12f}, "
                    f"ratio = {vals['ratio']:.6f}")
    assert res.passed, [c for c in res.checks if not c.ok]


def test_criterion_2_jordan_block(acceptance_line):
    results = [jordan_block_example(m) for m in range(1, 6)]
    orders = [next(c.value for c in r.checks if c.label == "fitted growth order") for r in results]
    ok = all(r.passed for r in results)
    acceptance_line(2, "Jordan block m=1..5", ok, "N_hat = " + ", ".join(f"{x:.3f}" for x in orders))
    assert ok, [(r.name, c) for r in results for c in r.checks if not c.ok]


def test_criterion_3_drury_arveson(acceptance_line):
    res = drury_arveson_example(3, 6)
    worst = max(c.value for c in res.checks)
    acceptance_line(3, "Drury-Arveson moments", res.passed, f"max error {worst:.2e}")
    assert res.passed


def test_criterion_4_convolution(acceptance_line):
    rng = np.random.default_rng(4)
    excess = -np.inf
    for _ in range(50):
        t = polynomial_tuple(rng, int(rng.integers(2, 4)))
        s = polynomial_tuple(rng, int(rng.integers(2, 4)))
        for d in (3, 4, 5):
            res = convolve(t, s, d)
            excess = max(excess, float((res.norms - res.bounds).max()))
    oracle = 0.0
    for _ in range(5):
        mu = AtomicMeasure(0.5 * cnormal(rng, 2, 1), rng.uniform(0.5, 1.5, 2))
        nu = AtomicMeasure(0.5 * cnormal(rng, 2, 1), rng.uniform(0.5, 1.5, 2))
        res = convolve(atomic_tuple(mu), atomic_tuple(nu), 6)
        ref = atomic_tuple(convolve_measures(mu, nu))
        scale = max(1.0, np.abs(moments(ref, 4).values).max())
        oracle = max(oracle, np.abs(moments(res.gns.tuple, 4).values - moments(ref, 4).values).max() / scale)
        table = convolve_moments(moments(atomic_tuple(mu), 6), moments(atomic_tuple(nu), 6))
        oracle = max(oracle, np.abs(table.values - convolve_measures(mu, nu).moment_table(6).values).max())
    scalar = convolve(CyclicTuple([[[1.0]]], [1.0]), CyclicTuple([[[2.0]]], [1.0]), 5).norms[0]
    ok = excess <= 1e-8 and oracle <= 1e-9 and abs(scalar - 3) <= 1e-12
    acceptance_line(4, "convolution norm bound", ok,
                    f"max ||R|| - bound = {excess:.3e}, atomic oracle {oracle:.1e}, [1]*[2] -> {scalar:.15f}")
    assert ok


def test_criterion_5_model_basis(acceptance_line):
    gram = inter = 0.0
    for t in criterion5_tuples():
        dec = spectral_decompose(build_L(moments(t, 10)))
        rep = model_basis_check(t, dec, 1e-8)
        gram = max(gram, rep.gram_residual)
        inter = max(inter, rep.intertwining_residual)
    ok = gram <= 1e-8 and inter <= 1e-7
    acceptance_line(5, "model basis at d=10", ok, f"Gram residual {gram:.1e}, intertwining residual {inter:.1e}")
    assert ok


def test_criterion_6_jordan_classification(acceptance_line):
    labels, worst = [], 0.0
    for t in criterion6_tuples():
        labels.append(joint_spectral_decompose(t).classification)
        worst = max(worst, relative_round_trip(t))
    rng = np.random.default_rng(16)
    negatives = [CyclicTuple([[[0, 0], [1, 1]]], [1, 0])] + [similarity_tuple(rng) for _ in range(10)]
    neg_labels = [joint_spectral_decompose(t).classification for t in negatives]
    ok = all(x == "Jordan" for x in labels) and worst <= 1e-9 and all(x == "NotJordan" for x in neg_labels)
    acceptance_line(6, "Jordan classification", ok,
                    f"{labels.count('Jordan')}/30 Jordan, round trip {worst:.1e}, "
                    f"{neg_labels.count('NotJordan')}/11 NotJordan")
    assert ok


def test_criterion_7_eigen_equivalence(acceptance_line):
    rng = np.random.default_rng(7)
    d = 6
    cells = agree = positives = psd_ok = 0
    for _ in range(10):
        t = lattice_tuple(rng)
        mt = moments(t, d)
        for lam in LATTICE:
            cells += 1
            direct = direct_joint_eigen(t, lam)
            dist = distance_constant(t, lam)
            agree += direct.verdict == dist.positive
            if not dist.positive:
                continue
            positives += 1
            c = dist.constant
            at_c = psd_criterion(mt, lam, c, d)
            below = psd_criterion(mt, lam, 0.9 * c, d)
            psd_ok += at_c.verdict and not below.verdict and witness_holds(t, below.witness, lam, 0.9 * c)
    ok = agree == cells and psd_ok == positives and positives > 0
    acceptance_line(7, "eigen criteria", ok,
                    f"{agree}/{cells} cells agree, {psd_ok}/{positives} positive cells pass at c and fail at 0.9c")
    assert ok


def test_criterion_8_hilbert_schmidt(acceptance_line):
    tuples = [jordan_block_tuple(m) for m in range(1, 6)] + criterion5_tuples() + criterion6_tuples()
    violations, worst = 0, 0.0
    for t in tuples:
        hs = build_L(moments(t, 2 * t.m)).hs_norm_squared()
        bound = hs_bound(t)
        violations += hs > bound
        worst = max(worst, hs / bound)
    ok = violations == 0
    acceptance_line(8, "Hilbert-Schmidt bound", ok,
                    f"{violations} violations over {len(tuples)} tuples, max ratio {worst:.3f}")
    assert ok


def test_criterion_9_kernel_algebra(acceptance_line):
    rng = np.random.default_rng(9)
    tuples = ([jordan_block_tuple(3), varopoulos_kaijser().tuple] + criterion5_tuples()[:3]
              + criterion6_tuples()[:3])
    psd_worst = sym_worst = -np.inf
    for t in tuples:
        for _ in range(10):
            pts = cnormal(rng, 8, t.n)
            k = kernel_matrix(t, pts)
            sym_worst = max(sym_worst, float(np.abs(k - k.conj().T).max() / np.abs(k).max()))
            lo = np.linalg.eigvalsh(0.5 * (k + k.conj().T))[0]
            psd_worst = max(psd_worst, -lo / np.trace(k).real)
    hardy_res = hardy_scale_example()
    ok = psd_worst <= 1e-10 and sym_worst <= 1e-12 and hardy_res.passed
    acceptance_line(9, "kernel algebra", ok,
                    f"worst -min eig / trace {psd_worst:.1e}, symmetry {sym_worst:.1e}, "
                    f"Hardy-scale error {hardy_res.checks[0].value:.1e}")
    assert ok
