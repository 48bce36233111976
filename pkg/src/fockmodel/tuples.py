"""Cyclic commuting matrix tuples and their moment tables.

A tuple acts on column vectors and carries a Hermitian positive definite
weight ``gram`` so that ``<u, v> = v^H @ gram @ u`` (linear in the first
slot). Moments are ``m(alpha, beta) = <T^alpha h, T^beta h>``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import multiindex as mi
from .exceptions import DegreeOverflowError, NonCommutingError, ValidationError
from .polynomial import Polynomial


class CyclicTuple:
    """Commuting matrices ``T_1..T_n`` on C^m with a distinguished vector `h`.

    Parameters
    ----------
    matrices
        Sequence of `n` square complex matrices of equal size `m`.
    h
        Vector of length `m`; must be nonzero.
    gram
        Weight matrix of the inner product. ``None`` means the identity;
        a 1-D array is read as a positive diagonal.
    """

    def __init__(self, matrices, h, gram=None):
        mats = [np.array(t, dtype=complex) for t in matrices]
        if not mats:
            raise ValidationError("a tuple needs at least one matrix", field="matrices")
        m = mats[0].shape[0]
        for i, t in enumerate(mats):
            if t.ndim != 2 or t.shape != (m, m):
                raise ValidationError(f"matrix {i} has shape {t.shape}, expected ({m}, {m})",
                                      field="matrices")
        h = np.array(h, dtype=complex).reshape(-1)
        if h.shape != (m,):
            raise ValidationError(f"h has length {h.size}, expected {m}", field="h")
        if gram is None:
            g = np.eye(m, dtype=complex)
        else:
            g = np.array(gram, dtype=complex)
            if g.ndim == 1:
                g = np.diag(g)
            if g.shape != (m, m):
                raise ValidationError(f"gram has shape {g.shape}, expected ({m}, {m})", field="gram")
        if not np.allclose(g, g.conj().T, atol=1e-12 * max(1.0, np.abs(g).max())):
            raise ValidationError("gram is not Hermitian", field="gram")
        g = 0.5 * (g + g.conj().T)
        if np.linalg.eigvalsh(g).min() <= 0:
            raise ValidationError("gram is not positive definite", field="gram")
        if not np.any(h):
            raise ValidationError("h must be nonzero", field="h")
        for arr in (*mats, h, g):
            arr.setflags(write=False)
        self.matrices = tuple(mats)
        self.h = h
        self.gram = g
        self._gram_diag = np.diag(g).copy() if np.count_nonzero(g - np.diag(np.diag(g))) == 0 else None

    @property
    def n(self) -> int:
        return len(self.matrices)

    @property
    def m(self) -> int:
        return self.h.shape[0]

    @property
    def has_identity_gram(self) -> bool:
        return np.array_equal(self.gram, np.eye(self.m))

    @property
    def diagonals(self) -> np.ndarray | None:
        """``(n, m)`` array of the diagonals when every matrix is diagonal, else ``None``."""
        if not hasattr(self, "_diagonals"):
            diag = all(np.count_nonzero(x - np.diag(np.diag(x))) == 0 for x in self.matrices)
            self._diagonals = np.array([np.diag(x) for x in self.matrices]) if diag else None
        return self._diagonals

    def inner(self, u, v) -> complex:
        """``<u, v>`` in the weighted inner product (linear in `u`)."""
        if self._gram_diag is not None:
            return complex(np.sum(np.conj(v) * self._gram_diag * u))
        return complex(np.conj(v) @ self.gram @ u)

    def norm(self, u) -> float:
        return float(np.sqrt(max(self.inner(u, u).real, 0.0)))

    def to_euclidean(self) -> "CyclicTuple":
        """Unitarily equivalent tuple whose inner product is the standard one.

        With ``gram = R^H R`` (Cholesky), ``T -> R T R^{-1}`` and ``h -> R h``.
        """
        if self.has_identity_gram:
            return self
        r = scipy.linalg.cholesky(self.gram, lower=False)
        rinv = scipy.linalg.solve_triangular(r, np.eye(self.m), lower=False)
        return CyclicTuple([r @ t @ rinv for t in self.matrices], r @ self.h)

    def adjoint(self, i: int) -> np.ndarray:
        """Adjoint of ``T_i`` with respect to the weighted inner product."""
        t = self.matrices[i]
        return np.linalg.solve(self.gram, t.conj().T @ self.gram)

    def operator_norms(self) -> np.ndarray:
        """Operator norm of each ``T_i`` in the weighted inner product."""
        e = self.to_euclidean()
        return np.array([np.linalg.norm(t, 2) for t in e.matrices])

    def shifted(self, lam) -> "CyclicTuple":
        lam = np.broadcast_to(np.asarray(lam, dtype=complex), (self.n,))
        eye = np.eye(self.m)
        return CyclicTuple([t + l * eye for t, l in zip(self.matrices, lam)], self.h, self.gram)

    def with_vector(self, h) -> "CyclicTuple":
        return CyclicTuple(self.matrices, h, self.gram)

    def conjugated(self, s) -> "CyclicTuple":
        """Similar tuple ``(S T S^{-1}, S h)`` with the standard inner product.

        Unitary `s` gives a unitarily equivalent tuple; other invertible `s`
        generally do not preserve moments.
        """
        s = np.asarray(s, dtype=complex)
        sinv = np.linalg.inv(s)
        e = self.to_euclidean()
        return CyclicTuple([s @ t @ sinv for t in e.matrices], s @ e.h)

    def apply(self, p: Polynomial) -> np.ndarray:
        """The vector ``p(T) h``."""
        return p.at_matrices(self.matrices) @ self.h

    def __repr__(self):
        return f"CyclicTuple(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class ValidationReport:
    max_commutator: float
    tol_comm: float
    commuting: bool
    krylov_rank: int | None = None
    cyclic: bool | None = None

    @property
    def ok(self) -> bool:
        return self.commuting and self.cyclic is not False


def default_tol_comm(t: CyclicTuple) -> float:
    return 1e-10 * max(1.0, max(np.linalg.norm(x, 2) for x in t.matrices) ** 2)


def krylov_vectors(t: CyclicTuple, d: int) -> np.ndarray:
    """Matrix whose columns are ``T^alpha h`` for ``|alpha| <= d`` in graded-lex order.

    Each vector is computed once from its parent ``alpha - e_i``, with `i`
    the first nonzero coordinate of `alpha`.
    """
    basis = mi.enumerate_upto(t.n, d)
    idx = mi.index_map(t.n, d)
    out = np.empty((t.m, len(basis)), dtype=complex)
    out[:, 0] = t.h
    for k, alpha in enumerate(basis[1:], start=1):
        i = next(j for j, a in enumerate(alpha) if a)
        parent = list(alpha)
        parent[i] -= 1
        out[:, k] = t.matrices[i] @ out[:, idx[tuple(parent)]]
    return out


def validate(t: CyclicTuple, tol_comm: float | None = None, check_cyclic: bool = True,
             raise_on_error: bool = False) -> ValidationReport:
    """Check commutativity and, optionally, cyclicity of `h`.

    The Krylov rank is the dimension of ``span{T^alpha h : |alpha| <= m - 1}``.
    """
    if tol_comm is None:
        tol_comm = default_tol_comm(t)
    worst = 0.0
    for i in range(t.n):
        for j in range(i + 1, t.n):
            a, b = t.matrices[i], t.matrices[j]
            worst = max(worst, float(np.linalg.norm(a @ b - b @ a, 2)))
    commuting = worst <= tol_comm
    if raise_on_error and not commuting:
        raise NonCommutingError(f"commutator norm {worst:.3e} exceeds tolerance {tol_comm:.3e}")
    rank = cyclic = None
    if check_cyclic:
        k = krylov_vectors(t.to_euclidean(), max(t.m - 1, 0))
        s = np.linalg.svd(k, compute_uv=False)
        rank = int(np.sum(s > s[0] * max(t.m, k.shape[1]) * 1e-12)) if s[0] > 0 else 0
        cyclic = rank == t.m
    return ValidationReport(worst, tol_comm, commuting, rank, cyclic)


class MomentTable:
    """Finite table ``m(alpha, beta)`` for ``|alpha|, |beta| <= degree``.

    ``values[i, j] = m(basis[i], basis[j])`` with `basis` the graded-lex
    enumeration. The array is read-only.
    """

    def __init__(self, n: int, degree: int, values):
        values = np.array(values, dtype=complex)
        size = mi.count_upto(n, degree)
        if values.shape != (size, size):
            raise ValidationError(f"moment values must be {size}x{size}, got {values.shape}",
                                  field="values")
        values.setflags(write=False)
        self.n = int(n)
        self.degree = int(degree)
        self.values = values

    @property
    def basis(self) -> list:
        return mi.enumerate_upto(self.n, self.degree)

    @property
    def index(self) -> dict:
        return mi.index_map(self.n, self.degree)

    def __call__(self, alpha, beta) -> complex:
        idx = self.index
        try:
            return complex(self.values[idx[tuple(alpha)], idx[tuple(beta)]])
        except KeyError:
            raise DegreeOverflowError(f"({alpha}, {beta}) is outside degree {self.degree}") from None

    def gram_matrix(self) -> np.ndarray:
        """``G[a, b] = <T^b h, T^a h>``, the Hermitian PSD Gram of the Krylov vectors."""
        return self.values.T.copy()

    def restrict(self, degree: int) -> "MomentTable":
        if degree > self.degree:
            raise DegreeOverflowError(f"cannot restrict degree {self.degree} table to {degree}")
        k = mi.count_upto(self.n, degree)
        return MomentTable(self.n, degree, self.values[:k, :k])

    def hermitian_defect(self) -> float:
        return float(np.abs(self.values - self.values.conj().T).max())

    def min_eigenvalue(self) -> float:
        v = 0.5 * (self.values + self.values.conj().T)
        return float(np.linalg.eigvalsh(v).min())

    def is_psd(self, tol: float = 1e-10) -> bool:
        trace = float(np.trace(self.values).real)
        return self.min_eigenvalue() >= -tol * max(trace, np.finfo(float).tiny)

    def allclose(self, other: "MomentTable", atol: float) -> bool:
        d = min(self.degree, other.degree)
        return bool(np.abs(self.restrict(d).values - other.restrict(d).values).max() <= atol)

    def __repr__(self):
        return f"MomentTable(n={self.n}, degree={self.degree})"


def moments(t: CyclicTuple, d: int) -> MomentTable:
    """Moment table of `t` up to degree `d`."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    k = krylov_vectors(t, d)
    gram = k.conj().T @ t.gram @ k       # gram[b, a] = <T^a h, T^b h>
    return MomentTable(t.n, d, gram.T)


def translate_moments(mt: MomentTable, lam) -> MomentTable:
    """Moment table of ``(T + lam I, h)`` computed from `mt` alone.

    Expands ``(T + lam)^alpha = sum_gamma C(alpha, gamma) lam^(alpha - gamma) T^gamma``.
    """
    lam = np.broadcast_to(np.asarray(lam, dtype=complex), (mt.n,))
    basis = mt.basis
    idx = mt.index
    # expansion[alpha, gamma] = C(alpha, gamma) lam^(alpha - gamma)
    expansion = np.zeros((len(basis), len(basis)), dtype=complex)
    for a, alpha in enumerate(basis):
        for gamma in mi.below(alpha):
            expansion[a, idx[gamma]] = mi.binomial(alpha, gamma) * mi.power(lam, mi.sub(alpha, gamma))
    values = expansion @ mt.values @ expansion.conj().T
    return MomentTable(mt.n, mt.degree, values)


def twist_by_polynomial(mt: MomentTable, p: Polynomial, degree: int | None = None) -> MomentTable:
    """Moment table of ``(T, p(T) h)`` computed from `mt` alone.

    ``m'(alpha, beta) = sum p_gamma conj(p_delta) m(alpha + gamma, beta + delta)``.
    The output degree defaults to ``mt.degree - deg p``.
    """
    if p.n != mt.n:
        raise ValueError("polynomial and table have different variable counts")
    dp = max(p.degree, 0)
    if degree is None:
        degree = mt.degree - dp
    if degree < 0 or degree + dp > mt.degree:
        raise DegreeOverflowError(
            f"output degree {degree} plus deg p = {dp} exceeds table degree {mt.degree}")
    out_basis = mi.enumerate_upto(mt.n, degree)
    idx = mt.index
    # shift[a, k] = p_gamma where basis[k] = out_basis[a] + gamma
    shift = np.zeros((len(out_basis), len(idx)), dtype=complex)
    for a, alpha in enumerate(out_basis):
        for gamma, c in p.items():
            shift[a, idx[mi.add(alpha, gamma)]] += c
    values = shift @ mt.values @ shift.conj().T
    return MomentTable(mt.n, degree, values)
