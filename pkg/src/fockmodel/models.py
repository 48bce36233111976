"""Concrete tuples and moment tables used as references.

Atomic measures give diagonal tuples, Jordan blocks give nilpotent ones,
and the radial weight models (Drury-Arveson, Hardy, the ``H_t`` scale)
are given as diagonal moment tables because their shifts act on
infinite-dimensional spaces.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.optimize

from . import multiindex as mi
from .exceptions import ValidationError
from .polynomial import Polynomial
from .tuples import CyclicTuple, MomentTable


# -- atomic measures ----------------------------------------------------------

@dataclass(frozen=True)
class AtomicMeasure:
    """Finite positive combination of point masses in C^n."""

    atoms: np.ndarray
    weights: np.ndarray

    def __init__(self, atoms, weights):
        a = np.array(atoms, dtype=complex)
        if a.ndim == 1:
            a = a[:, None]
        w = np.array(weights, dtype=float).reshape(-1)
        if a.shape[0] == 0:
            raise ValidationError("measure needs at least one atom", field="atoms")
        if a.shape[0] != w.shape[0]:
            raise ValidationError(f"{a.shape[0]} atoms but {w.shape[0]} weights", field="weights")
        if np.any(w <= 0):
            raise ValidationError("weights must be positive", field="weights")
        a.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "atoms", a)
        object.__setattr__(self, "weights", w)

    @property
    def n(self) -> int:
        return self.atoms.shape[1]

    @property
    def mass(self) -> float:
        return float(self.weights.sum())

    def merged(self, tol: float = 1e-12) -> "AtomicMeasure":
        """Combine atoms closer than `tol` (in sup norm), adding their weights."""
        atoms, weights = [], []
        for a, w in zip(self.atoms, self.weights):
            for k, b in enumerate(atoms):
                if np.abs(a - b).max() <= tol:
                    weights[k] += w
                    break
            else:
                atoms.append(a)
                weights.append(w)
        return AtomicMeasure(np.array(atoms), np.array(weights))

    def moment(self, alpha, beta) -> complex:
        """``integral of z^alpha conj(z)^beta``."""
        za = np.prod(self.atoms ** np.asarray(alpha), axis=1)
        zb = np.prod(np.conj(self.atoms) ** np.asarray(beta), axis=1)
        return complex(np.sum(self.weights * za * zb))

    def moment_table(self, d: int) -> MomentTable:
        basis = mi.enumerate_upto(self.n, d)
        v = np.stack([np.prod(self.atoms ** np.asarray(a), axis=1) for a in basis])  # [alpha, j]
        return MomentTable(self.n, d, (v * self.weights) @ v.conj().T)

    def fourier_laplace(self, z, w) -> complex:
        """``sum_j w_j exp(conj(a_j) . z + a_j . conj(w))``."""
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        w = np.atleast_1d(np.asarray(w, dtype=complex))
        expo = self.atoms.conj() @ z + self.atoms @ np.conj(w)
        return complex(np.sum(self.weights * np.exp(expo)))


def convolve_measures(mu: AtomicMeasure, nu: AtomicMeasure) -> AtomicMeasure:
    """Atoms at pairwise sums with product weights."""
    if mu.n != nu.n:
        raise ValidationError("measures live in different dimensions", field="n")
    atoms = (mu.atoms[:, None, :] + nu.atoms[None, :, :]).reshape(-1, mu.n)
    weights = np.outer(mu.weights, nu.weights).reshape(-1)
    return AtomicMeasure(atoms, weights).merged()


def atomic_tuple(mu: AtomicMeasure, tol: float = 1e-12) -> CyclicTuple:
    """Coordinate multiplications on ``L^2(mu)`` with ``h = 1``.

    Raises
    ------
    ValidationError
        If two atoms coincide, since then ``h`` is not cyclic.
    """
    a = mu.atoms
    for j in range(len(a)):
        for k in range(j + 1, len(a)):
            if np.abs(a[j] - a[k]).max() <= tol:
                raise ValidationError(f"atoms {j} and {k} coincide; merge them first", field="atoms")
    mats = [np.diag(a[:, i]) for i in range(mu.n)]
    return CyclicTuple(mats, np.ones(len(a)), np.asarray(mu.weights))


def bump_measure(center=0.0, radius: float = 1.0, spacing: float = 0.02) -> AtomicMeasure:
    """Midpoint-rule quadrature in the plane of ``exp(-1 / (1 - |a - c|^2 / r^2))``.

    An approximation to a smooth compactly supported density, normalized
    to mass 1; accurate for kernel arguments well below ``pi / spacing``.
    """
    g = np.arange(-radius + spacing / 2, radius, spacing)
    x, y = np.meshgrid(g, g)
    rho2 = (x ** 2 + y ** 2) / radius ** 2
    inside = rho2 < 1
    dens = np.exp(-1.0 / (1.0 - rho2[inside]))
    keep = dens > 1e-300
    atoms = complex(center) + (x[inside] + 1j * y[inside])[keep]
    w = dens[keep]
    return AtomicMeasure(atoms, w / w.sum())


# -- Jordan blocks ------------------------------------------------------------

def jordan_block_tuple(m: int, lam: complex = 0.0) -> CyclicTuple:
    """``lam I + S`` with ones on the subdiagonal (``S e_k = e_(k+1)``) and ``h = e_1``."""
    if m < 1:
        raise ValidationError("block size must be at least 1", field="m")
    t = np.diag(np.ones(m - 1), -1) + lam * np.eye(m)
    return CyclicTuple([t], np.eye(m)[0])


def jordan_kernel(m: int, z, w) -> complex:
    """``sum_(k < m) (z conj(w))^k / (k!)^2``."""
    x = complex(np.ravel(z)[0]) * np.conj(complex(np.ravel(w)[0]))
    return complex(sum(x ** k / math.factorial(k) ** 2 for k in range(m)))


# -- three commuting contractions violating the polydisc inequality -----------

@dataclass(frozen=True)
class VKExample:
    tuple: CyclicTuple
    p: Polynomial
    q: Polynomial


def varopoulos_kaijser() -> VKExample:
    """Three commuting 5x5 contractions, the test polynomial `p` and the structure polynomial `q`."""
    r = 1.0 / math.sqrt(3.0)
    mats = []
    signs = [(r, -r, -r), (-r, r, -r), (-r, -r, r)]
    for i in range(3):
        t = np.zeros((5, 5))
        t[i + 1, 0] = 1.0
        t[4, 1:4] = signs[i]
        mats.append(t)
    e = [mi.unit(3, i) for i in range(3)]
    sq = {mi.add(a, a): 1.0 for a in e}
    p = Polynomial(3, {**sq, **{mi.add(e[i], e[j]): -2.0 for i in range(3) for j in range(i + 1, 3)}})
    q = Polynomial(3, {**sq, **{mi.add(e[i], e[j]): -1.0 for i in range(3) for j in range(i + 1, 3)}})
    return VKExample(CyclicTuple(mats, np.eye(5)[0]), p, q)


def polydisc_sup(p: Polynomial, grid: int = 64, refine: int = 8, seed: int = 42) -> float:
    """Largest ``|p|`` on the closed unit polydisc.

    The maximum is attained on the torus, so this samples a regular grid of
    angles (``grid`` per variable) and polishes the best `refine` points and
    as many seeded random starts with a local optimizer.
    """
    n = p.n
    if p.degree <= 0:
        return abs(p[(0,) * n])
    theta = 2 * np.pi * np.arange(grid) / grid
    mesh = np.stack(np.meshgrid(*([theta] * n), indexing="ij"), axis=-1).reshape(-1, n)
    vals = np.abs(p.evaluate(np.exp(1j * mesh)))
    best = float(vals.max())
    rng = np.random.default_rng(seed)
    starts = np.vstack([mesh[np.argsort(vals)[-refine:]], rng.uniform(0, 2 * np.pi, size=(refine, n))])

    def neg(th):
        return -abs(p(np.exp(1j * th)))

    for s in starts:
        res = scipy.optimize.minimize(neg, s, method="Nelder-Mead",
                                      options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 4000})
        best = max(best, -float(res.fun))
    return best


# -- radial weight models -----------------------------------------------------

@dataclass(frozen=True)
class RadialWeightModel:
    """Space with orthogonal monomials and ``||z^alpha||^2`` given by a rule.

    Kinds: ``"drury-arveson"`` (``alpha! / |alpha|!``), ``"ht"``
    (``alpha! Gamma(t) / Gamma(|alpha| + t)``, parameter `t`) and ``"hardy"``
    (``r^(2 |alpha|)``, parameter `r`).
    """

    n: int
    kind: str
    param: float = 1.0

    def __post_init__(self):
        if self.kind not in ("drury-arveson", "ht", "hardy"):
            raise ValidationError(f"unknown weight kind {self.kind!r}", field="kind")
        if self.n < 1:
            raise ValidationError("n must be positive", field="n")
        if self.kind != "drury-arveson" and self.param <= 0:
            raise ValidationError("parameter must be positive", field="param")

    def log_weight(self, alpha) -> float:
        k = sum(alpha)
        log_fact = sum(math.lgamma(a + 1) for a in alpha)
        if self.kind == "drury-arveson":
            return log_fact - math.lgamma(k + 1)
        if self.kind == "ht":
            t = self.param
            return log_fact + math.lgamma(t) - math.lgamma(k + t)
        return 2 * k * math.log(self.param)

    def weight(self, alpha) -> float:
        return math.exp(self.log_weight(alpha))


def drury_arveson(n: int) -> RadialWeightModel:
    return RadialWeightModel(n, "drury-arveson")


def ht_space(n: int, t: float) -> RadialWeightModel:
    return RadialWeightModel(n, "ht", t)


def hardy(n: int, r: float = 1.0) -> RadialWeightModel:
    return RadialWeightModel(n, "hardy", r)


def radial_moment_table(model: RadialWeightModel, d: int) -> MomentTable:
    """``m(alpha, beta) = delta_(alpha beta) ||z^alpha||^2``: the shift tuple with ``h = 1``."""
    w = [model.weight(a) for a in mi.enumerate_upto(model.n, d)]
    return MomentTable(model.n, d, np.diag(w))


def sphere_moment(n: int, alpha, beta) -> float:
    """``integral of z^alpha conj(z)^beta`` for normalized surface measure on the unit sphere."""
    if tuple(alpha) != tuple(beta):
        return 0.0
    k = sum(alpha)
    return math.exp(sum(math.lgamma(a + 1) for a in alpha) + math.lgamma(n) - math.lgamma(k + n))


def radial_factor(n: int, alpha) -> float:
    """Eigenvalue of ``(R + (n-1) I) ... (R + I) / (n-1)!`` on ``z^alpha conj(z)^beta``.

    ``R = sum z_i d_i`` acts on the holomorphic part only, so the monomial
    is an eigenvector with eigenvalue ``|alpha|`` for `R`.
    """
    k = sum(alpha)
    return math.prod(k + j for j in range(1, n)) / math.factorial(n - 1)


def da_distribution_moment(n: int, alpha, beta) -> float:
    """Value of the Drury-Arveson boundary distribution on ``z^alpha conj(z)^beta``.

    The distribution is ``(n-1)!^-1 (R + (n-1)) ... (R + 1)`` transposed onto
    surface measure, evaluated through the radial factor and the sphere
    moment.
    """
    if n < 1:
        raise ValidationError("n must be positive", field="n")
    return radial_factor(n, alpha) * sphere_moment(n, alpha, beta)


def weighted_model_kernel(base: RadialWeightModel, middle: RadialWeightModel, z, w, d: int = 60) -> complex:
    """Kernel ``sum_(|alpha| <= d) base(alpha) / middle(alpha)^2 z^alpha conj(w)^alpha``.

    This is the kernel of the shift on `base` with ``h = 1`` read through
    the reproducing kernels of `middle`. A ``RuntimeWarning`` is issued when
    the last degree block is not smaller than the one before (the series
    may not have converged).
    """
    if base.n != middle.n:
        raise ValidationError("models have different dimensions", field="n")
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    w = np.atleast_1d(np.asarray(w, dtype=complex))
    blocks = np.zeros(d + 1, dtype=complex)
    for alpha in mi.enumerate_upto(base.n, d):
        log_c = base.log_weight(alpha) - 2 * middle.log_weight(alpha)
        blocks[sum(alpha)] += math.exp(log_c) * mi.power(z, alpha) * mi.power(np.conj(w), alpha)
    if d >= 2 and abs(blocks[d]) > 0 and abs(blocks[d]) >= abs(blocks[d - 1]):
        warnings.warn("kernel series fails the ratio test at this point", RuntimeWarning)
    return complex(blocks.sum())


def kernel_space_weight(base: RadialWeightModel, middle: RadialWeightModel, alpha) -> float:
    """``||z^alpha||^2`` in the space of the kernel above, ``middle(alpha)^2 / base(alpha)``."""
    return math.exp(2 * middle.log_weight(alpha) - base.log_weight(alpha))


def ht_equivalence_band(n: int, t: float, s: float, max_degree: int = 40) -> tuple[float, float]:
    """Range of ``||z^alpha||^2_F / ||z^alpha||^2_(H_(t+2s))`` over ``|alpha| <= max_degree``.

    The ratio depends only on ``|alpha|``, so one multi-index per degree is
    evaluated.
    """
    base, middle, target = ht_space(n, t), ht_space(n, t + s), ht_space(n, t + 2 * s)
    ratios = []
    for k in range(max_degree + 1):
        alpha = (k,) + (0,) * (n - 1)
        ratios.append(kernel_space_weight(base, middle, alpha) / target.weight(alpha))
    return float(min(ratios)), float(max(ratios))


def contraction_check(mt: MomentTable, i: int, tol: float = 1e-10) -> tuple[bool, float]:
    """Whether ``m(alpha, beta) - m(alpha + e_i, beta + e_i)`` is PSD on ``|alpha|, |beta| <= d - 1``.

    This is ``||T_i x|| <= ||x||`` on polynomial vectors of degree ``< d``.
    """
    d = mt.degree
    if d < 1:
        raise ValidationError("need degree at least 1", field="degree")
    low = mi.enumerate_upto(mt.n, d - 1)
    idx = mt.index
    sh = [idx[mi.add(a, mi.unit(mt.n, i))] for a in low]
    k = len(low)
    diff = mt.values[:k, :k] - mt.values[np.ix_(sh, sh)]
    lo = float(np.linalg.eigvalsh(0.5 * (diff + diff.conj().T)).min())
    return lo >= -tol * max(float(np.trace(mt.values[:k, :k]).real), 1.0), lo
