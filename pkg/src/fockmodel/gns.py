"""Tuples rebuilt from moment tables, and convolution of cyclic tuples.

The polynomials of degree ``<= d - 1`` modulo the null space of the moment
form carry an inner product. Multiplication by ``z_i`` is compressed to
that finite space using moments up to degree `d`, so the rebuilt tuple
reproduces the moments exactly only up to degree ``d - 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import multiindex as mi
from .exceptions import DegreeTooSmallError, EmptyQuotientError, ValidationError
from .fock import fix_phase
from .tuples import CyclicTuple, MomentTable, moments

DEFAULT_NULL_TOL = 1e-10


@dataclass(frozen=True)
class GnsResult:
    """Rebuilt tuple on the quotient space.

    Attributes
    ----------
    tuple
        Matrices ``R_i`` and vector ``h`` in an orthonormal quotient basis.
    basis
        For each retained direction, the monomial with the largest weight
        in it.
    nullity
        Number of discarded directions.
    residual
        Largest norm of ``z_i z^alpha`` (``|alpha| = d - 1``) outside the
        retained space, relative to ``||h||``; zero when the space is
        invariant.
    """

    tuple: CyclicTuple
    basis: tuple
    nullity: int
    degree: int
    residual: float
    eigenvalues: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.tuple.m


def gns_reconstruct(mt: MomentTable, null_tol: float = DEFAULT_NULL_TOL) -> GnsResult:
    """Rebuild a cyclic tuple whose moments agree with `mt` up to degree ``d - 1``.

    Raises
    ------
    DegreeTooSmallError
        If the table has degree below 1.
    EmptyQuotientError
        If every direction is null at the given tolerance.
    """
    d = mt.degree
    if d < 1:
        raise DegreeTooSmallError("reconstruction needs moments of degree at least 1")
    if mt.hermitian_defect() > 1e-8 * max(1.0, float(np.abs(mt.values).max())):
        raise ValidationError("moment table is not Hermitian", field="values")
    k = mi.count_upto(mt.n, d - 1)
    low = mi.enumerate_upto(mt.n, d - 1)
    idx = mt.index
    vals = mt.values
    g = vals[:k, :k].T                       # g[b, a] = <z^a, z^b>
    g = 0.5 * (g + g.conj().T)
    sigma, u = np.linalg.eigh(g)
    order = np.argsort(sigma)[::-1]
    sigma, u = sigma[order], u[:, order]
    trace = float(np.trace(g).real)
    keep = sigma > null_tol * max(trace, 0.0)
    if trace <= 0 or not keep.any():
        raise EmptyQuotientError("the moment form has no direction above the null tolerance")
    sigma, u = sigma[keep], u[:, keep]
    u = np.column_stack([fix_phase(u[:, j]) for j in range(u.shape[1])])
    # coordinate map: <x, u_k> for x = z^gamma is sum_b conj(U[b, k]) m(gamma, b) / sqrt(sigma_k)
    w = u.conj() / np.sqrt(sigma)            # [b, k]
    mats = []
    for i in range(mt.n):
        shifted = [idx[mi.add(a, mi.unit(mt.n, i))] for a in low]
        # z_i u_j = sum_a U[a, j] z^(a + e_i) / sqrt(sigma_j)
        cross = vals[np.ix_(shifted, range(k))]          # [a, b] = m(a + e_i, b)
        mats.append(w.T @ cross.T @ (u / np.sqrt(sigma)))  # [k, j]
    h = w.T @ vals[0, :k]
    # invariance defect on the top degree
    top = [a for a in low if sum(a) == d - 1]
    defect = 0.0
    for i in range(mt.n):
        for a in top:
            s = idx[mi.add(a, mi.unit(mt.n, i))]
            proj = w.T @ vals[s, :k]
            defect = max(defect, float(vals[s, s].real) - float(np.sum(np.abs(proj) ** 2)))
    residual = math.sqrt(max(defect, 0.0) / max(float(vals[0, 0].real), np.finfo(float).tiny))
    labels = tuple(low[int(np.argmax(np.abs(u[:, j])))] for j in range(u.shape[1]))
    return GnsResult(CyclicTuple(mats, h), labels, int(k - keep.sum()), d, residual, sigma)


def convolve_moments(a: MomentTable, b: MomentTable) -> MomentTable:
    """Moment table of the convolution, whose kernel is the product of the two kernels.

    ``m(alpha, beta) = sum C(alpha, gamma) C(beta, delta) a(gamma, delta) b(alpha - gamma, beta - delta)``
    over ``gamma <= alpha`` and ``delta <= beta``; the output degree is the
    smaller input degree.
    """
    if a.n != b.n:
        raise ValidationError(f"tables have {a.n} and {b.n} variables", field="n")
    d = min(a.degree, b.degree)
    basis = mi.enumerate_upto(a.n, d)
    ia, ib = a.index, b.index
    # binomial expansion matrix: e[alpha][gamma] = C(alpha, gamma), paired with complements
    out = np.zeros((len(basis), len(basis)), dtype=complex)
    lower = [[(ia[g], ib[mi.sub(al, g)], mi.binomial(al, g)) for g in mi.below(al)] for al in basis]
    av, bv = a.values, b.values
    for r, rows in enumerate(lower):
        for c, cols in enumerate(lower):
            if c < r:
                continue
            total = 0j
            for ga, gb, cg in rows:
                for da, db, cd in cols:
                    total += cg * cd * av[ga, da] * bv[gb, db]
            out[r, c] = total
            out[c, r] = np.conj(total) if c != r else total.real
    return MomentTable(a.n, d, out)


@dataclass(frozen=True)
class ConvolutionResult:
    gns: GnsResult
    norms: np.ndarray
    bounds: np.ndarray
    tol: float

    @property
    def norm_bound_ok(self) -> bool:
        return bool(np.all(self.norms <= self.bounds + self.tol))


def convolve(t: CyclicTuple, s: CyclicTuple, d: int = 6, null_tol: float = DEFAULT_NULL_TOL,
             tol: float = 1e-8) -> ConvolutionResult:
    """Rebuild the convolution of two tuples at degree `d` and check ``||R_i|| <= ||T_i|| + ||S_i||``."""
    if t.n != s.n:
        raise ValidationError(f"tuples have {t.n} and {s.n} variables", field="n")
    res = gns_reconstruct(convolve_moments(moments(t, d), moments(s, d)), null_tol)
    norms = res.tuple.operator_norms()
    bounds = t.operator_norms() + s.operator_norms()
    return ConvolutionResult(res, norms, bounds, tol)


def kronecker_sum(t: CyclicTuple, s: CyclicTuple) -> CyclicTuple:
    """The tuple ``(T_i (x) I + I (x) S_i, h (x) e)``, whose kernel is the product of the kernels."""
    te, se = t.to_euclidean(), s.to_euclidean()
    it, is_ = np.eye(te.m), np.eye(se.m)
    mats = [np.kron(a, is_) + np.kron(it, b) for a, b in zip(te.matrices, se.matrices)]
    return CyclicTuple(mats, np.kron(te.h, se.h))


def norm_sequence(mt: MomentTable, null_tol: float = DEFAULT_NULL_TOL) -> list:
    """Operator norms of the rebuilt ``R_i`` for every degree ``1..d`` of `mt`."""
    return [gns_reconstruct(mt.restrict(k), null_tol).tuple.operator_norms()
            for k in range(1, mt.degree + 1)]
