"""Four equivalent tests for a joint eigenvalue of the adjoint tuple.

For a cyclic tuple and ``lam`` in C^n the following agree:

* some nonzero `v` has ``T_i^* v = lam_i v`` for every `i`;
* `h` is at positive distance from the joint range of ``T_i - conj(lam_i)``;
* ``c^2 m(alpha, beta) - conj(lam)^alpha lam^beta`` is a PSD matrix for some `c`;
* ``|p(conj(lam))| <= c ||p(T) h||`` for every polynomial `p`.

The smallest admissible `c` is ``1 / distance`` in the last three. The
kernel-level PSD form differs from the matrix form only by the rescaling
``sqrt(alpha! beta!)``, so :func:`psd_criterion` covers both. On a
truncated table a PSD pass is a necessary condition at that degree only.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import multiindex as mi
from .polynomial import Polynomial
from .tuples import CyclicTuple, MomentTable, moments

KERNEL_TOL = 1e-9


class Unbounded:
    """No finite constant exists (the distance is zero)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Unbounded"

    def __str__(self):
        return "unbounded"


UNBOUNDED = Unbounded()


def _lam(lam, n: int) -> np.ndarray:
    lam = np.atleast_1d(np.asarray(lam, dtype=complex))
    if lam.shape != (n,):
        raise ValueError(f"lambda must have {n} coordinates")
    return lam


def _stack(e: CyclicTuple, lam: np.ndarray) -> np.ndarray:
    """Horizontal stack ``[T_1 - conj(lam_1) I, ..., T_n - conj(lam_n) I]`` in Euclidean coordinates."""
    eye = np.eye(e.m)
    return np.hstack([x - np.conj(l) * eye for x, l in zip(e.matrices, lam)])


def _null_left(stack: np.ndarray, tol: float) -> np.ndarray:
    """Orthonormal basis of the orthogonal complement of the column span of `stack`."""
    u, s, _ = np.linalg.svd(stack)
    scale = s[0] if len(s) and s[0] > 0 else 0.0
    s_full = np.zeros(stack.shape[0])
    s_full[:len(s)] = s
    small = s_full <= tol * scale if scale > 0 else np.ones_like(s_full, dtype=bool)
    return u[:, small]


@dataclass(frozen=True)
class JointEigenResult:
    verdict: bool
    vectors: np.ndarray = field(repr=False)
    smallest_singular_value: float

    @property
    def vector(self) -> np.ndarray | None:
        return self.vectors[:, 0] if self.verdict else None


def direct_joint_eigen(t: CyclicTuple, lam, tol: float = KERNEL_TOL) -> JointEigenResult:
    """Common eigenvectors of the adjoints ``T_i^*`` for eigenvalues ``lam_i``.

    A vector is accepted when the stacked singular value is at most
    ``tol`` times the norm of the stack. Returned vectors are in the
    original coordinates, orthonormal for the tuple's inner product.
    """
    lam = _lam(lam, t.n)
    e = t.to_euclidean()
    stack = _stack(e, lam)
    null = _null_left(stack, tol)
    s = np.linalg.svd(stack, compute_uv=False)
    smallest = 0.0 if len(s) < e.m else float(s[-1])
    if not t.has_identity_gram and null.shape[1]:
        r = scipy.linalg.cholesky(t.gram, lower=False)
        null = scipy.linalg.solve_triangular(r, null, lower=False)
    null = np.column_stack([_phase(null[:, j]) for j in range(null.shape[1])]) if null.shape[1] else null
    return JointEigenResult(null.shape[1] > 0, null, smallest)


def _phase(v):
    k = int(np.argmax(np.abs(v) > np.abs(v).max() * (1 - 1e-12)))
    return v * (abs(v[k]) / v[k])


@dataclass(frozen=True)
class DistanceResult:
    distance: float
    constant: float | Unbounded

    @property
    def positive(self) -> bool:
        return not isinstance(self.constant, Unbounded)


def distance_constant(t: CyclicTuple, lam, tol: float = KERNEL_TOL) -> DistanceResult:
    """Distance from `h` to the joint range of ``T_i - conj(lam_i) I`` and ``c = 1 / distance``.

    The range is decided with the same singular-value rule as
    :func:`direct_joint_eigen`; a distance at most ``tol * ||h||`` gives
    the unbounded constant.
    """
    lam = _lam(lam, t.n)
    e = t.to_euclidean()
    null = _null_left(_stack(e, lam), tol)
    dist = float(np.linalg.norm(null.conj().T @ e.h)) if null.shape[1] else 0.0
    if dist <= tol * float(np.linalg.norm(e.h)):
        return DistanceResult(dist, UNBOUNDED)
    return DistanceResult(dist, 1.0 / dist)


@dataclass(frozen=True)
class PsdResult:
    verdict: bool
    min_eigenvalue: float
    degree: int
    witness: Polynomial | None = None


def psd_matrix(mt: MomentTable, lam, c: float, d: int | None = None) -> np.ndarray:
    """``M[alpha, beta] = c^2 m(alpha, beta) - conj(lam)^alpha lam^beta`` over ``|alpha|, |beta| <= d``."""
    lam = _lam(lam, mt.n)
    if d is None:
        d = mt.degree
    sub = mt.restrict(d)
    v = np.array([mi.power(np.conj(lam), a) for a in sub.basis])
    return c ** 2 * sub.values - np.outer(v, v.conj())


def psd_criterion(mt: MomentTable, lam, c: float, d: int | None = None, tol: float = 1e-10) -> PsdResult:
    """Test ``M = c^2 m - conj(lam)^alpha lam^beta >= 0`` at degree `d`.

    A pass is a necessary condition at this degree. A failure is
    conclusive and comes with a witness `p` satisfying
    ``|p(conj(lam))| > c ||p(T) h||``.
    """
    if d is None:
        d = mt.degree
    mat = psd_matrix(mt, lam, c, d)
    mat = 0.5 * (mat + mat.conj().T)
    w, v = np.linalg.eigh(mat)
    scale = c ** 2 * float(np.trace(mt.restrict(d).values).real)
    ok = bool(w[0] >= -tol * max(scale, np.finfo(float).tiny))
    witness = None
    if not ok:
        # x^H M x < 0 with M[alpha, beta] paired as a_alpha conj(a_beta): a = conj(x)
        witness = Polynomial.from_vector(mt.n, d, np.conj(v[:, 0]))
    return PsdResult(ok, float(w[0]), d, witness)


def witness_holds(t: CyclicTuple, p: Polynomial, lam, c: float) -> bool:
    """Whether ``|p(conj(lam))| > c ||p(T) h||``, i.e. `p` refutes the constant `c`."""
    lam = _lam(lam, t.n)
    return abs(p(np.conj(lam))) > c * t.norm(t.apply(p))


@dataclass(frozen=True)
class EigenReport:
    lam: np.ndarray
    direct_verdict: bool
    eigenvector: np.ndarray | None
    distance: float
    constant: float | Unbounded
    psd_verdict: bool | None
    psd_min_eigenvalue: float | None
    degree: int

    @property
    def consistent(self) -> bool:
        if self.direct_verdict != (not isinstance(self.constant, Unbounded)):
            return False
        return self.psd_verdict is None or self.psd_verdict == self.direct_verdict or not self.direct_verdict

    @property
    def psd_label(self) -> str:
        if self.psd_verdict is None:
            return "n/a"
        return f"necessary-condition pass at degree {self.degree}" if self.psd_verdict else "fail"


def eigen_report(t: CyclicTuple, lam, d: int | None = None, tol: float = KERNEL_TOL,
                 mt: MomentTable | None = None) -> EigenReport:
    """Run all criteria at one point; the PSD test uses ``c = 1 / distance`` when finite."""
    lam = _lam(lam, t.n)
    if d is None:
        d = max(t.m - 1, 1)
    if mt is None or mt.degree < d:
        mt = moments(t, d)
    direct = direct_joint_eigen(t, lam, tol)
    dist = distance_constant(t, lam, tol)
    psd = None
    if dist.positive:
        psd = psd_criterion(mt, lam, dist.constant, d)
    return EigenReport(lam, direct.verdict, direct.vector, dist.distance, dist.constant,
                       None if psd is None else psd.verdict,
                       None if psd is None else psd.min_eigenvalue, d)


def eigen_grid(t: CyclicTuple, points, d: int | None = None, tol: float = KERNEL_TOL) -> list:
    """:func:`eigen_report` over a list of points, sharing one moment table."""
    if d is None:
        d = max(t.m - 1, 1)
    mt = moments(t, d)
    return [eigen_report(t, p, d, tol, mt) for p in points]
