"""Joint spectral splitting of commuting tuples and Jordan classification.

A tuple is Jordan when it is unitarily equivalent to a direct sum of
blocks ``lambda_k I + N_k`` with commuting nilpotent ``N_k``. For such a
tuple the moment functional is a finite sum of derivatives of point
masses, ``sum_k q_k(d) conj(q_k)(dbar) delta_lambda``, and
:func:`distribution_rep` returns the polynomials ``q_k``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from scipy.cluster.hierarchy import fcluster, linkage
from scipy.spatial.distance import pdist

from . import multiindex as mi
from .exceptions import AmbiguousSpectrumError, NotJordanInputError
from .fock import build_L, fix_phase, spectral_decompose
from .polynomial import Polynomial
from .tuples import CyclicTuple, MomentTable, validate

logger = logging.getLogger(__name__)

MAX_RETRIES = 5
SELF_ADJOINT_TOL = 1e-8
NILPOTENT_TOL = 1e-10


@dataclass(frozen=True)
class SpectralBlock:
    eigenvalue: np.ndarray
    projection: np.ndarray
    dim: int
    nilpotency: tuple


@dataclass(frozen=True)
class SpectralDecomposition:
    """Projections onto the joint generalized eigenspaces of a tuple.

    All matrices are in the Euclidean coordinates of ``t.to_euclidean()``,
    where the adjoint is the conjugate transpose.
    """

    blocks: tuple
    is_jordan: bool
    self_adjoint_defect: float
    cross_defect: float
    completeness_defect: float
    tol: float
    euclidean: CyclicTuple = field(repr=False)

    @property
    def classification(self) -> str:
        return "Jordan" if self.is_jordan else "NotJordan"

    @property
    def eigenvalues(self) -> list:
        return [b.eigenvalue for b in self.blocks]


def _cluster(eigs: np.ndarray, tau: float) -> tuple[np.ndarray, float]:
    """Single-linkage groups at distance `tau`; also returns the smallest inter-group gap."""
    if len(eigs) == 1:
        return np.zeros(1, dtype=int), np.inf
    pts = np.column_stack([eigs.real, eigs.imag])
    labels = fcluster(linkage(pdist(pts), method="single"), t=tau, criterion="distance") - 1
    gap = np.inf
    for a in range(labels.max() + 1):
        for b in range(a + 1, labels.max() + 1):
            d = np.abs(eigs[labels == a][:, None] - eigs[labels == b][None, :]).min()
            gap = min(gap, d)
    return labels, gap


def _riesz_projection(a: np.ndarray, group: np.ndarray, reach: float) -> np.ndarray:
    """Spectral projection of `a` onto the eigenvalues within `reach` of `group`.

    Uses a reordered Schur form ``a = Q R Q^H`` and the Sylvester equation
    that block-diagonalizes ``R``.
    """
    m = a.shape[0]
    k = len(group)
    if k == m:
        return np.eye(m, dtype=complex)
    r, q, sdim = scipy.linalg.schur(a, output="complex",
                                    sort=lambda x: np.abs(group - x).min() < reach)
    if sdim != k:
        raise AmbiguousSpectrumError("Schur reordering did not isolate the eigenvalue group")
    r11, r12, r22 = r[:k, :k], r[:k, k:], r[k:, k:]
    # R11 Y - Y R22 = -R12 block-diagonalizes R
    y = scipy.linalg.solve_sylvester(r11, -r22, -r12)
    p = np.zeros((m, m), dtype=complex)
    p[:k, :k] = np.eye(k)
    p[:k, k:] = -y
    return q @ p @ q.conj().T


def _nilpotency(n_mats, tol: float, scale: float) -> tuple | None:
    """Smallest `p` with ``||N^p|| <= tol * scale^p`` for each matrix; ``None`` if none exists."""
    out = []
    for x in n_mats:
        p, power = 0, np.eye(x.shape[0], dtype=complex)
        while np.linalg.norm(power, 2) > tol * scale ** p:
            p += 1
            if p > x.shape[0]:
                return None
            power = power @ x
        out.append(p)
    return tuple(out)


def _snap(z: np.ndarray, eps: float) -> np.ndarray:
    """Zero out real or imaginary parts below `eps`."""
    return np.where(np.abs(z.real) < eps, 0.0, z.real) + 1j * np.where(np.abs(z.imag) < eps, 0.0, z.imag)


def _block_basis(p: np.ndarray, dim: int) -> np.ndarray:
    u, _, _ = np.linalg.svd(p)
    return u[:, :dim]


def joint_spectral_decompose(t: CyclicTuple, tol: float = SELF_ADJOINT_TOL, seed: int = 42,
                             cluster_tol: float | None = None) -> SpectralDecomposition:
    """Split a commuting tuple into joint generalized eigenspaces.

    A generic combination ``A = sum c_i T_i`` with seeded random complex
    coefficients is split by Schur reordering; eigenvalues of `A` closer
    than the clustering tolerance are grouped. A new combination is drawn
    when the grouping is ambiguous (gap below ten times the tolerance) or
    a block fails the nilpotency test.

    Raises
    ------
    NonCommutingError
        If the matrices do not commute.
    AmbiguousSpectrumError
        After five unsuccessful draws.
    """
    validate(t, check_cyclic=False, raise_on_error=True)
    e = t.to_euclidean()
    m = e.m
    rng = np.random.default_rng(seed)
    scale = max(1.0, max(np.linalg.norm(x, 2) for x in e.matrices))
    reason = ""
    for attempt in range(MAX_RETRIES):
        c = rng.normal(size=e.n) + 1j * rng.normal(size=e.n)
        c /= np.linalg.norm(c)
        a = sum(ci * x for ci, x in zip(c, e.matrices))
        eigs = np.linalg.eigvals(a)
        tau = cluster_tol if cluster_tol is not None else 1e-2 * max(1.0, np.abs(eigs).max())
        labels, gap = _cluster(eigs, tau)
        if gap < 10 * tau:
            reason = f"eigenvalue gap {gap:.3e} below {10 * tau:.3e}"
            logger.info("attempt %d: %s", attempt, reason)
            continue
        blocks = []
        ok = True
        for g in range(labels.max() + 1):
            sel = labels == g
            p = _riesz_projection(a, eigs[sel], 0.5 * gap if np.isfinite(gap) else np.inf)
            dim = int(sel.sum())
            lam = np.array([np.trace(p @ x @ p) / dim for x in e.matrices])
            lam = _snap(lam, 1e-13 * scale)
            v = _block_basis(p, dim)
            nil = _nilpotency([v.conj().T @ (x - l * np.eye(m)) @ v
                               for x, l in zip(e.matrices, lam)], NILPOTENT_TOL, scale)
            if nil is None:
                ok = False
                reason = f"block near {lam} is not jointly nilpotent after shift"
                break
            blocks.append(SpectralBlock(lam, p, dim, nil))
        if not ok:
            logger.info("attempt %d: %s", attempt, reason)
            continue
        projs = [b.projection for b in blocks]
        sa = max(np.linalg.norm(p - p.conj().T, 2) / np.linalg.norm(p, 2) for p in projs)
        cross = max((np.linalg.norm(projs[i] @ projs[j], 2)
                     for i in range(len(projs)) for j in range(len(projs)) if i != j), default=0.0)
        comp = float(np.linalg.norm(sum(projs) - np.eye(m), 2))
        blocks.sort(key=lambda b: [v for x in b.eigenvalue for v in (round(x.real, 9), round(x.imag, 9))])
        return SpectralDecomposition(tuple(blocks), bool(sa <= tol), float(sa), float(cross),
                                     comp, tol, e)
    raise AmbiguousSpectrumError(f"joint spectrum not separated after {MAX_RETRIES} draws: {reason}")


@dataclass(frozen=True)
class DistributionTerm:
    point: np.ndarray
    polys: tuple


@dataclass(frozen=True)
class DistributionRep:
    """``Lambda = sum over terms, sum over q in polys, of q(d) conj(q)(dbar) delta_point``."""

    n: int
    terms: tuple

    @property
    def support(self) -> list:
        return [term.point for term in self.terms]

    @property
    def order(self) -> int:
        """Largest degree among the polynomials."""
        return max((q.degree for term in self.terms for q in term.polys), default=0)


def _block_moments(dec: SpectralDecomposition, block: SpectralBlock, d: int) -> MomentTable:
    e = dec.euclidean
    v = _block_basis(block.projection, block.dim)
    mats = [v.conj().T @ (x - l * np.eye(e.m)) @ v for x, l in zip(e.matrices, block.eigenvalue)]
    # the range of P is invariant, so h_k = P h lies in it and v^H is an isometry there
    hk = v.conj().T @ (block.projection @ e.h)
    return _nilpotent_moments(mats, hk, d)


def _nilpotent_moments(mats, hk, d) -> MomentTable:
    n = len(mats)
    basis = mi.enumerate_upto(n, d)
    idx = mi.index_map(n, d)
    k = np.empty((len(hk), len(basis)), dtype=complex)
    k[:, 0] = hk
    for j, alpha in enumerate(basis[1:], start=1):
        i = next(s for s, a in enumerate(alpha) if a)
        parent = list(alpha)
        parent[i] -= 1
        k[:, j] = mats[i] @ k[:, idx[tuple(parent)]]
    return MomentTable(n, d, (k.conj().T @ k).T)


def distribution_rep(t: CyclicTuple, dec: SpectralDecomposition | None = None,
                     d: int | None = None) -> DistributionRep:
    """Explicit distribution form of the moment functional of a Jordan tuple.

    For each block the shifted nilpotent tuple has moment form
    ``sum_j f_j (x) f_j`` in the Fock space; the polynomial
    ``q = (-1)^|alpha| conj(f)`` then reproduces that form as
    ``q(d) conj(q)(dbar) delta_lambda``.

    Raises
    ------
    NotJordanInputError
        If the decomposition is not of Jordan type.
    """
    if dec is None:
        dec = joint_spectral_decompose(t)
    if not dec.is_jordan:
        raise NotJordanInputError(
            f"projections deviate from self-adjoint by {dec.self_adjoint_defect:.3e}")
    need = max(sum(p - 1 for p in b.nilpotency) for b in dec.blocks)
    if d is None:
        d = need
    d = max(d, need)
    terms = []
    for block in dec.blocks:
        mt = _block_moments(dec, block, d)
        if mt.values[0, 0].real <= 1e-24 * max(1.0, t.norm(t.h) ** 2):
            continue
        dec_k = spectral_decompose(build_L(mt))
        polys = []
        for f in dec_k.polynomials:
            coeffs = {a: (-1) ** sum(a) * np.conj(c) for a, c in f.items()}
            vec = fix_phase(Polynomial(t.n, coeffs).to_vector(d))
            polys.append(Polynomial.from_vector(t.n, d, vec))
        terms.append(DistributionTerm(block.eigenvalue.copy(), tuple(polys)))
    return DistributionRep(t.n, tuple(terms))


def _apply_to_monomial(q: Polynomial, alpha, point) -> complex:
    """``sum_gamma q_gamma (-1)^|gamma| d^gamma z^alpha`` evaluated at `point`."""
    total = 0j
    for gamma, c in q.items():
        if not mi.leq(gamma, alpha):
            continue
        falling = float(mi.factorial(alpha)) / float(mi.factorial(mi.sub(alpha, gamma)))
        total += c * (-1) ** sum(gamma) * falling * mi.power(point, mi.sub(alpha, gamma))
    return total


def eval_distribution(rep: DistributionRep, alpha, beta) -> complex:
    """Apply the distribution to ``z^alpha conj(z)^beta``.

    Derivatives act through ``d^a Lambda (psi) = (-1)^|a| Lambda(d^a psi)``;
    since ``z^alpha`` and ``conj(z)^beta`` separate, each pair contributes
    ``A_q(alpha) conj(A_q(beta))``.
    """
    alpha, beta = tuple(alpha), tuple(beta)
    total = 0j
    for term in rep.terms:
        for q in term.polys:
            total += _apply_to_monomial(q, alpha, term.point) * np.conj(
                _apply_to_monomial(q, beta, term.point))
    return complex(total)


def distribution_moments(rep: DistributionRep, d: int) -> MomentTable:
    """Moment table of the distribution up to degree `d`."""
    basis = mi.enumerate_upto(rep.n, d)
    a = np.zeros((len(basis), sum(len(term.polys) for term in rep.terms)), dtype=complex)
    col = 0
    for term in rep.terms:
        for q in term.polys:
            a[:, col] = [_apply_to_monomial(q, alpha, term.point) for alpha in basis]
            col += 1
    return MomentTable(rep.n, d, a @ a.conj().T)


def _num(c: complex, digits: int) -> str:
    c = complex(c)
    if abs(c.imag) <= 10.0 ** -digits * max(1.0, abs(c)):
        return f"{c.real:.{digits}g}"
    if abs(c.real) <= 10.0 ** -digits * max(1.0, abs(c)):
        return f"{c.imag:.{digits}g}i"
    return f"({c.real:.{digits}g}{c.imag:+.{digits}g}i)"


def _derivative_symbol(n: int, a, bar: bool) -> str:
    sym = "\u2202\u0304" if bar else "\u2202"
    out = ""
    for i, k in enumerate(a):
        if k:
            out += sym + (str(i + 1) if n > 1 else "") + (f"^{k}" if k > 1 else "")
    return out


def term_operator(term: DistributionTerm, n: int, tol: float = 1e-12) -> dict:
    """Coefficients of ``sum_q q(d) conj(q)(dbar)`` keyed by ``(gamma, delta)``."""
    ops = {}
    for q in term.polys:
        for g, cg in q.items():
            for dl, cd in q.items():
                ops[(g, dl)] = ops.get((g, dl), 0) + cg * np.conj(cd)
    top = max((abs(v) for v in ops.values()), default=0.0)
    return {k: v for k, v in ops.items() if abs(v) > tol * top}


def format_rep(rep: DistributionRep, digits: int = 6) -> str:
    """Readable form of the distribution, for example ``(1 + \u2202\u2202\u0304)\u03b4_0``."""
    order = lambda kv: (sum(kv[0][0]) + sum(kv[0][1]), [-x for x in kv[0][0]], [-x for x in kv[0][1]])
    pieces = []
    for term in rep.terms:
        parts = []
        for (g, dl), c in sorted(term_operator(term, rep.n).items(), key=order):
            sym = _derivative_symbol(rep.n, g, False) + _derivative_symbol(rep.n, dl, True)
            coef = _num(c, digits)
            if not sym:
                parts.append(coef)
            elif coef == "1":
                parts.append(sym)
            else:
                parts.append(coef + sym)
        where = ",".join(_num(x, digits) for x in term.point)
        delta = f"\u03b4_{where if rep.n == 1 else '(' + where + ')'}"
        pieces.append(delta if parts == ["1"] else f"({' + '.join(parts)}){delta}")
    return " + ".join(pieces) if pieces else "0"
