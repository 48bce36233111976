"""Truncated Fock-space operator of a tuple and its eigenpolynomials.

In the orthonormal basis ``z^alpha / sqrt(alpha!)`` the operator has
entries ``L[beta, alpha] = m(alpha, beta) / sqrt(alpha! beta!)``, so that
``<L p, q>_Fock = <p(T) h, q(T) h>`` for polynomials of degree <= d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import multiindex as mi
from .exceptions import NotCyclicError, NotPositiveError
from .polynomial import Polynomial, fock_inner
from .tuples import CyclicTuple, MomentTable, krylov_vectors, moments

__all__ = [
    "FockOperator", "EigenPolyDecomposition", "build_L", "spectral_decompose",
    "fock_inner", "model_basis_check", "hs_bound", "ModelBasisReport", "decompose_tuple",
    "convergence_diagnostics",
]


def sqrt_factorials(n: int, d: int) -> np.ndarray:
    return np.sqrt(np.array([float(mi.factorial(a)) for a in mi.enumerate_upto(n, d)]))


def fix_phase(vec: np.ndarray) -> np.ndarray:
    """Rotate `vec` so its largest-magnitude entry (first on ties) is real positive."""
    k = int(np.argmax(np.abs(vec) > np.abs(vec).max() * (1 - 1e-12)))
    c = vec[k]
    return vec if c == 0 else vec * (abs(c) / c)


@dataclass(frozen=True)
class FockOperator:
    n: int
    degree: int
    matrix: np.ndarray

    @property
    def basis(self):
        return mi.enumerate_upto(self.n, self.degree)

    def hs_norm_squared(self) -> float:
        return float(np.sum(np.abs(self.matrix) ** 2))

    def eigenvalues(self) -> np.ndarray:
        """All eigenvalues, descending."""
        return np.linalg.eigvalsh(self.matrix)[::-1]

    def hermitian_defect(self) -> float:
        return float(np.abs(self.matrix - self.matrix.conj().T).max())


@dataclass(frozen=True)
class EigenPolyDecomposition:
    """Eigenpairs ``(lambda_j, f_j)`` with Fock norm of ``f_j`` squared equal to ``lambda_j``."""

    n: int
    degree: int
    eigenvalues: np.ndarray
    polynomials: tuple
    # coefficient vectors of f_j in the orthonormal basis, one column per j
    coordinates: np.ndarray = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.eigenvalues)

    def reconstruct(self) -> np.ndarray:
        """The matrix ``sum_j f_j (x) f_j`` in the orthonormal basis."""
        c = self.coordinates
        return c @ c.conj().T

    def monomial_coefficients(self) -> np.ndarray:
        """Columns hold the monomial coefficients of each ``f_j``."""
        return self.coordinates / sqrt_factorials(self.n, self.degree)[:, None]

    def feature_map(self, points) -> np.ndarray:
        """``Phi[s, j] = f_j(z_s)``; then ``Phi @ Phi^H`` is the truncated kernel."""
        pts = np.asarray(points, dtype=complex).reshape(-1, self.n)
        basis = mi.enumerate_upto(self.n, self.degree)
        mono = np.stack([np.prod(pts ** np.asarray(a), axis=1) for a in basis], axis=1)
        return mono @ self.monomial_coefficients()

    def kernel(self, z, w) -> complex:
        phi = self.feature_map(np.vstack([np.atleast_1d(z), np.atleast_1d(w)]))
        return complex(phi[0] @ phi[1].conj())


def build_L(mt: MomentTable) -> FockOperator:
    s = sqrt_factorials(mt.n, mt.degree)
    mat = mt.values.T / np.outer(s, s)
    mat = 0.5 * (mat + mat.conj().T)
    mat.setflags(write=False)
    return FockOperator(mt.n, mt.degree, mat)


def spectral_decompose(L: FockOperator, rank_tol: float = 1e-10) -> EigenPolyDecomposition:
    """Eigenpolynomials of `L` whose eigenvalues exceed ``rank_tol * lambda_max``.

    Raises
    ------
    NotPositiveError
        If an eigenvalue is below ``-rank_tol * lambda_max``.
    """
    w, v = np.linalg.eigh(L.matrix)
    order = np.argsort(w)[::-1]
    w, v = w[order], v[:, order]
    top = max(float(w[0]) if len(w) else 0.0, 0.0)
    if top == 0.0:
        return EigenPolyDecomposition(L.n, L.degree, np.zeros(0), (),
                                      np.zeros((len(w), 0), dtype=complex))
    if w[-1] < -rank_tol * top:
        raise NotPositiveError(f"eigenvalue {w[-1]:.3e} is negative beyond tolerance; "
                               "the moment input is not a Gram table")
    keep = w > rank_tol * top
    w, v = w[keep], v[:, keep]
    coords = np.column_stack([fix_phase(v[:, j]) * math.sqrt(w[j]) for j in range(len(w))])
    s = sqrt_factorials(L.n, L.degree)
    polys = tuple(Polynomial.from_vector(L.n, L.degree, coords[:, j] / s) for j in range(len(w)))
    return EigenPolyDecomposition(L.n, L.degree, w, polys, coords)


def hs_bound(t: CyclicTuple) -> float:
    """Upper bound ``exp(2 sum ||T_i||^2) ||h||^4`` on the Hilbert-Schmidt norm squared of L."""
    norms = t.operator_norms()
    return math.exp(2.0 * float(np.sum(norms ** 2))) * t.norm(t.h) ** 4


@dataclass(frozen=True)
class ModelBasisReport:
    rank: int
    gram_residual: float
    intertwining_residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.gram_residual <= self.tol and self.intertwining_residual <= self.tol


def model_basis_check(t: CyclicTuple, dec: EigenPolyDecomposition, tol: float = 1e-8) -> ModelBasisReport:
    """Verify the orthonormal basis ``v_j = f_j(T) h / lambda_j`` and the model ``T_i^* = U^* d_i U``.

    The Gram residual is ``max |<v_j, v_k> - delta_jk|``. The intertwining
    residual is ``max |<T_i^* v_j, v_k> - <d_i f_j, f_k>_Fock / lambda_k|``.

    Raises
    ------
    NotCyclicError
        When fewer than ``m`` eigenpolynomials were retained, so the
        vectors cannot span the space.
    """
    if dec.rank < t.m:
        raise NotCyclicError(
            f"only {dec.rank} eigenpolynomials for dimension {t.m}: "
            "h is not cyclic or the truncation degree is too small")
    k = krylov_vectors(t, dec.degree)
    coeffs = dec.monomial_coefficients()
    lam = dec.eigenvalues
    v = (k @ coeffs) / lam                 # v[:, j] = f_j(T) h / lambda_j
    gram = v.conj().T @ t.gram @ v         # gram[k, j] = <v_j, v_k>
    gram_res = float(np.abs(gram - np.eye(dec.rank)).max())

    s = sqrt_factorials(dec.n, dec.degree)
    idx = mi.index_map(dec.n, dec.degree)
    inter = 0.0
    for i in range(t.n):
        # <T_i^* v_j, v_k> = <v_j, T_i v_k>
        lhs = (t.matrices[i] @ v).conj().T @ t.gram @ v          # [k, j]
        deriv = np.zeros_like(coeffs)
        for alpha, a in idx.items():
            if alpha[i]:
                parent = list(alpha)
                parent[i] -= 1
                deriv[idx[tuple(parent)]] += alpha[i] * coeffs[a]
        # Fock pairing of monomial coefficient vectors: sum alpha! p_alpha conj(q_alpha)
        rhs = (coeffs * s[:, None] ** 2).conj().T @ deriv / lam[:, None]   # [k, j]
        inter = max(inter, float(np.abs(lhs - rhs).max()))
    return ModelBasisReport(dec.rank, gram_res, inter, tol)


def decompose_tuple(t: CyclicTuple, d: int | None = None, rank_tol: float = 1e-10) -> EigenPolyDecomposition:
    """Shortcut for ``spectral_decompose(build_L(moments(t, d)))`` with default ``d = 2m``."""
    if d is None:
        d = 2 * t.m
    return spectral_decompose(build_L(moments(t, d)), rank_tol)


def convergence_diagnostics(t: CyclicTuple, d: int, step: int = 2, rank_tol: float = 1e-10) -> dict:
    """Leading eigenvalues at degree `d` and ``d + step`` with their largest difference."""
    a = decompose_tuple(t, d, rank_tol).eigenvalues
    b = decompose_tuple(t, d + step, rank_tol).eigenvalues
    r = min(len(a), len(b))
    return {"degree": d, "eigenvalues": a, "eigenvalues_next": b,
            "max_change": float(np.abs(a[:r] - b[:r]).max()) if r else 0.0,
            "rank_change": len(b) - len(a)}
