"""Worked examples with pass/fail checks, shared by the CLI and the test suite."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import multiindex as mi
from .fock import build_L, hs_bound
from .gns import convolve, convolve_moments
from .jordan import distribution_moments, distribution_rep, joint_spectral_decompose
from .kernel import certify_growth, eval_F, point_set
from .models import (AtomicMeasure, atomic_tuple, contraction_check, da_distribution_moment,
                     drury_arveson, hardy, ht_equivalence_band, ht_space, jordan_block_tuple,
                     jordan_kernel, polydisc_sup, radial_factor, radial_moment_table, sphere_moment,
                     varopoulos_kaijser, weighted_model_kernel)
from .tuples import CyclicTuple, moments


@dataclass
class Check:
    label: str
    value: float
    target: str
    ok: bool


@dataclass
class ExampleResult:
    name: str
    checks: list = field(default_factory=list)

    def add(self, label: str, value, target: str, ok: bool):
        self.checks.append(Check(label, float(value), target, bool(ok)))

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)


def varopoulos_kaijser_example(grid: int = 64, seed: int = 42) -> ExampleResult:
    res = ExampleResult("varopoulos-kaijser")
    vk = varopoulos_kaijser()
    t = vk.tuple
    norm = float(np.linalg.norm(vk.p.at_matrices(t.matrices), 2))
    sup = polydisc_sup(vk.p, grid=grid, seed=seed)
    witness = vk.p((1, 1, -1))
    res.add("||p(T)||", norm, "3*sqrt(3) +- 1e-10", abs(norm - 3 * math.sqrt(3)) <= 1e-10)
    res.add("sup |p| on polydisc", sup, "[4.99, 5 + 1e-9]", 4.99 <= sup <= 5.0 + 1e-9)
    res.add("p(1, 1, -1)", witness.real, "5", abs(witness - 5) == 0)
    res.add("ratio", norm / sup, ">= 1.039", norm / sup >= 1.039)
    for i, x in enumerate(t.operator_norms()):
        res.add(f"||T_{i + 1}||", x, "<= 1", x <= 1 + 1e-12)
    mt = moments(t, 3)
    for i in range(3):
        ok, lo = contraction_check(mt, i)
        res.add(f"contraction form {i + 1} min eigenvalue", lo, ">= 0", ok)
    L = build_L(mt.restrict(2))
    res.add("<L 1, 1>", L.matrix[0, 0].real, "1", abs(L.matrix[0, 0] - 1) <= 1e-14)
    eig = L.eigenvalues()[:5]
    res.add("top eigenvalue of L (degree 2)", eig[0], "1.5", abs(eig[0] - 1.5) <= 1e-12)
    res.add("next four eigenvalues of L", eig[1:].max(), "1", np.abs(eig[1:] - 1).max() <= 1e-12)
    return res


def jordan_block_example(m: int = 3, points: int = 20, seed: int = 42) -> ExampleResult:
    res = ExampleResult(f"jordan-block m={m}")
    t = jordan_block_tuple(m)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(points):
        z, w = rng.normal(size=2) + 1j * rng.normal(size=2)
        exact = jordan_kernel(m, z, w)
        worst = max(worst, abs(eval_F(t, [z], [w]) - exact) / max(abs(exact), 1e-300))
    res.add("kernel relative error", worst, "<= 1e-12", worst <= 1e-12)
    d = max(m + 1, 2)
    mt = moments(t, d)
    ref = np.zeros_like(mt.values)
    ref[:m, :m] = np.eye(m)
    err = float(np.abs(mt.values - ref).max())
    res.add("moments vs delta_kl", err, "<= 1e-12", err <= 1e-12)
    dec = joint_spectral_decompose(t)
    rep = distribution_rep(t, dec, d)
    rt = float(np.abs(distribution_moments(rep, d).values - mt.values).max())
    res.add("distribution round trip", rt, "<= 1e-9", dec.is_jordan and rt <= 1e-9)
    cert = certify_growth(t, point_set(0), seed=seed)
    res.add("fitted growth order", cert.N_hat, f"{2 * (m - 1)} +- 0.15", abs(cert.N_hat - 2 * (m - 1)) <= 0.15)
    hs = build_L(mt).hs_norm_squared()
    res.add("HS norm squared", hs, "<= exp(2 ||T||^2) ||h||^4", hs <= hs_bound(t))
    return res


def drury_arveson_example(max_n: int = 3, max_degree: int = 6) -> ExampleResult:
    res = ExampleResult("drury-arveson")
    worst = worst_pipeline = 0.0
    for n in range(1, max_n + 1):
        table = radial_moment_table(drury_arveson(n), max_degree)
        for alpha in mi.enumerate_upto(n, max_degree):
            target = float(mi.factorial(alpha)) / math.factorial(sum(alpha))
            worst = max(worst, abs(da_distribution_moment(n, alpha, alpha) - target))
            worst = max(worst, abs(table(alpha, alpha) - target))
            # the radial factor and the sphere moment separately
            k = sum(alpha)
            factor = math.comb(k + n - 1, n - 1)
            sphere = float(mi.factorial(alpha)) * math.factorial(n - 1) / math.factorial(k + n - 1)
            worst_pipeline = max(worst_pipeline, abs(radial_factor(n, alpha) - factor) / factor,
                                 abs(sphere_moment(n, alpha, alpha) - sphere) / sphere)
        off = max((abs(da_distribution_moment(n, a, b)) for a in mi.enumerate_upto(n, 3)
                   for b in mi.enumerate_upto(n, 3) if a != b), default=0.0)
        worst = max(worst, off)
    res.add("max |u(z^a conj z^b) - delta a!/|a|!|", worst, "<= 1e-12", worst <= 1e-12)
    res.add("radial factor and sphere moment", worst_pipeline, "<= 1e-12", worst_pipeline <= 1e-12)
    return res


def hardy_scale_example(points: int = 50, seed: int = 42) -> ExampleResult:
    res = ExampleResult("hardy-scale")
    rng = np.random.default_rng(seed)
    base, middle = hardy(1, 1.0), hardy(1, 2.0)
    worst = 0.0
    for _ in range(points):
        z, w = 1.5 * np.sqrt(rng.uniform(size=2)) * np.exp(2j * np.pi * rng.uniform(size=2))
        exact = 1.0 / (1.0 - z * np.conj(w) / 16.0)
        worst = max(worst, abs(weighted_model_kernel(base, middle, z, w, d=60) - exact))
    res.add("kernel vs 1/(1 - z conj(w)/16)", worst, "<= 1e-12", worst <= 1e-12)
    return res


def ht_scale_example(n: int = 2, t: float = 1.5, s: float = 0.75) -> ExampleResult:
    res = ExampleResult("ht-scale")
    base, middle = ht_space(n, t), ht_space(n, t + s)
    coef = weighted_model_kernel(base, middle, (1.0,) + (0.0,) * (n - 1), (1.0,) + (0.0,) * (n - 1), d=1) - 1
    res.add("coefficient at |alpha| = 1", coef.real, "(t+s)^2/t", abs(coef - (t + s) ** 2 / t) <= 1e-12)
    lo, hi = ht_equivalence_band(n, t, s, 40)
    res.add("norm ratio band low", lo, "> 0", lo > 0)
    res.add("norm ratio band high", hi, "finite", math.isfinite(hi))
    return res


def atomic_measure_example(points: int = 50, seed: int = 42) -> ExampleResult:
    res = ExampleResult("atomic-measure")
    rng = np.random.default_rng(seed)
    mu = AtomicMeasure(rng.normal(size=(4, 2)) + 1j * rng.normal(size=(4, 2)), rng.uniform(0.5, 2, size=4))
    t = atomic_tuple(mu)
    worst = 0.0
    for _ in range(points):
        z, w = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        exact = mu.fourier_laplace(z, w)
        worst = max(worst, abs(eval_F(t, z, w) - exact) / abs(exact))
    res.add("kernel vs Fourier-Laplace transform", worst, "<= 1e-10", worst <= 1e-10)
    err = float(np.abs(moments(t, 4).values - mu.moment_table(4).values).max())
    res.add("moments vs integrals", err, "<= 1e-10", err <= 1e-10 * max(1.0, np.abs(mu.moment_table(4).values).max()))
    norms = t.operator_norms()
    sup = np.abs(mu.atoms).max(axis=0)
    res.add("||M_z_i|| vs max |a_i|", float(np.abs(norms - sup).max()), "<= 1e-12", np.abs(norms - sup).max() <= 1e-12)
    return res


def convolution_example() -> ExampleResult:
    res = ExampleResult("convolution")
    a = CyclicTuple([[[1.0]]], [1.0])
    b = CyclicTuple([[[2.0]]], [1.0])
    c = convolve(a, b, 5)
    res.add("||R|| for [1] * [2]", c.norms[0], "3 +- 1e-12", abs(c.norms[0] - 3) <= 1e-12)
    j = jordan_block_tuple(2)
    cj = convolve(j, j, 5)
    res.add("dimension of Jordan * Jordan", cj.gns.dim, "3", cj.gns.dim == 3)
    res.add("||R|| for Jordan * Jordan", cj.norms[0], "<= 2 + 1e-8", cj.norm_bound_ok)
    mt = convolve_moments(moments(j, 4), moments(j, 4))
    res.add("m_R(1,1)", mt((1,), (1,)).real, "2", abs(mt((1,), (1,)) - 2) <= 1e-12)
    res.add("m_R(2,2)", mt((2,), (2,)).real, "4", abs(mt((2,), (2,)) - 4) <= 1e-12)
    return res


EXAMPLES = {
    "varopoulos-kaijser": varopoulos_kaijser_example,
    "jordan-block": jordan_block_example,
    "drury-arveson": drury_arveson_example,
    "hardy-scale": hardy_scale_example,
    "ht-scale": ht_scale_example,
    "atomic-measure": atomic_measure_example,
    "convolution": convolution_example,
}
