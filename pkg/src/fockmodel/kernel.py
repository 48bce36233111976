"""The two-variable kernel ``F(z, w) = <exp(<T, w>) h, exp(<T, z>) h>`` and its growth.

``<T, w> = sum_i conj(w_i) T_i``. Growth certificates are numerical
statements on a finite sample of points; they are evidence for the bound
``|F(z, w)| <= C (1 + |z| + |w|)^N exp(H_K(z + w))`` and not a proof of it.
"""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import multiindex as mi
from .tuples import CyclicTuple, MomentTable

logger = logging.getLogger(__name__)

DEFAULT_RADII = (10.0, 30.0, 100.0, 300.0, 1000.0)
DEFAULT_DIRECTIONS = 32


@dataclass(frozen=True)
class Ball:
    center: tuple
    radius: float = 0.0

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("radius must be non-negative")


@dataclass(frozen=True)
class PointSet:
    """Convex hull of finitely many points of C^n."""

    points: tuple

    def __post_init__(self):
        if len(self.points) == 0:
            raise ValueError("point set must be nonempty")


SupportSet = Ball | PointSet


def point_set(*points) -> PointSet:
    return PointSet(tuple(tuple(complex(x) for x in np.atleast_1d(p)) for p in points))


def supporting_function(K: SupportSet, z) -> float:
    """``H_K(z) = sup over lam in K of Re <lam, z>`` with ``<lam, z> = sum lam_i conj(z_i)``."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if isinstance(K, Ball):
        c = np.atleast_1d(np.asarray(K.center, dtype=complex))
        return float(np.real(np.vdot(z, c)) + K.radius * np.linalg.norm(z))
    pts = np.asarray(K.points, dtype=complex).reshape(len(K.points), -1)
    return float(np.max(np.real(pts @ z.conj())))


def _generator(t: CyclicTuple, w) -> np.ndarray:
    w = _point(t, w)
    return sum(np.conj(wi) * ti for wi, ti in zip(w, t.matrices))


def _point(t: CyclicTuple, w) -> np.ndarray:
    w = np.atleast_1d(np.asarray(w, dtype=complex))
    if w.shape != (t.n,):
        raise ValueError(f"point must have {t.n} coordinates")
    return w


def _orbit(t: CyclicTuple, w) -> np.ndarray:
    """``exp(<T, w>) h``."""
    if t.diagonals is not None:
        return np.exp(np.conj(_point(t, w)) @ t.diagonals) * t.h
    return scipy.linalg.expm(_generator(t, w)) @ t.h


def _scaled_orbit(t: CyclicTuple, w) -> tuple[float, np.ndarray]:
    """Return ``(s, v)`` with ``exp(<T, w>) h = exp(s) v``.

    The real shift `s` is the largest real part of the generator's
    spectrum, which keeps `v` finite for large arguments.
    """
    if t.diagonals is not None:
        lam = np.conj(_point(t, w)) @ t.diagonals
        s = float(lam.real.max())
        return s, np.exp(lam - s) * t.h
    a = _generator(t, w)
    s = float(np.linalg.eigvals(a).real.max())
    return s, scipy.linalg.expm(a - s * np.eye(t.m)) @ t.h


def eval_F(t: CyclicTuple, z, w) -> complex:
    """Evaluate the kernel at one pair of points."""
    return t.inner(_orbit(t, w), _orbit(t, z))


def log_abs_F(t: CyclicTuple, z, w) -> float:
    """``log |F(z, w)|`` with the exponential factor tracked separately; ``-inf`` if F vanishes."""
    sz, vz = _scaled_orbit(t, z)
    sw, vw = _scaled_orbit(t, w)
    val = abs(t.inner(vw, vz))
    if val == 0.0 or not np.isfinite(val):
        return -math.inf if val == 0.0 else math.inf
    return sz + sw + math.log(val)


def kernel_matrix(t: CyclicTuple, points) -> np.ndarray:
    """``K[s, u] = F(z_s, z_u)`` for an ``(N, n)`` array of points."""
    pts = np.asarray(points, dtype=complex).reshape(-1, t.n)
    orbits = np.column_stack([_orbit(t, p) for p in pts])
    # F(z_s, z_u) = <e_u, e_s> = e_s^H G e_u
    return orbits.conj().T @ t.gram @ orbits


def series_F(mt: MomentTable, z, w) -> complex:
    """Truncated Taylor form ``sum m(beta, alpha) / (alpha! beta!) z^alpha conj(w)^beta``."""
    basis = mt.basis
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    w = np.atleast_1d(np.asarray(w, dtype=complex))
    fz = np.array([mi.power(z, a) / float(mi.factorial(a)) for a in basis])
    fw = np.array([mi.power(np.conj(w), a) / float(mi.factorial(a)) for a in basis])
    # m(beta, alpha) = values[beta, alpha]
    return complex(fw @ mt.values @ fz)


def series_tail_bound(t: CyclicTuple, z, w, d: int) -> float:
    """Bound on ``|F - series_F|`` for the degree-`d` box truncation."""
    x = float(np.sum(t.operator_norms())) * (np.linalg.norm(np.atleast_1d(z)) + np.linalg.norm(np.atleast_1d(w)))
    return math.exp(x) * t.norm(t.h) ** 2 * x ** (d + 1) / math.factorial(d + 1)


@dataclass(frozen=True)
class GrowthCertificate:
    """Fitted ``log|F| - H_K(z + w) ~ log C + N log(1 + |z| + |w|)`` on a sample.

    ``residual_max <= 0`` means every sample obeys the bound with the
    fitted constants; ``certified_log_C`` shifts the constant so that this
    holds.
    """

    N_hat: float
    logC_hat: float
    residual_max: float
    samples: dict = field(default_factory=dict)

    @property
    def certified_log_C(self) -> float:
        return self.logC_hat + max(self.residual_max, 0.0)

    def as_record(self) -> dict:
        return {"N_hat": self.N_hat, "logC_hat": self.logC_hat,
                "residual_max": self.residual_max, "samples": dict(self.samples)}


def _unit_directions(rng: np.random.Generator, count: int, n: int) -> np.ndarray:
    u = rng.normal(size=(count, n)) + 1j * rng.normal(size=(count, n))
    return u / np.linalg.norm(u, axis=1, keepdims=True)


def sample_excess(t: CyclicTuple, K: SupportSet, radii, directions: int = DEFAULT_DIRECTIONS,
                  seed: int = 42) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Sample ``(radius, log(1 + |z| + |w|), log|F| - H_K(z + w))``.

    For each radius there are `directions` diagonal pairs ``w = z`` and
    `directions` independent pairs with ``|z| = |w| = radius``.
    """
    rng = np.random.default_rng(seed)
    rows = []
    dropped = 0
    for r in radii:
        u = _unit_directions(rng, directions, t.n)
        v = _unit_directions(rng, directions, t.n)
        pairs = [(r * a, r * a) for a in u] + [(r * a, r * b) for a, b in zip(u, v)]
        for z, w in pairs:
            lf = log_abs_F(t, z, w)
            if not np.isfinite(lf):
                dropped += 1
                continue
            x = math.log1p(np.linalg.norm(z) + np.linalg.norm(w))
            rows.append((r, x, lf - supporting_function(K, z + w)))
    if dropped:
        warnings.warn(f"dropped {dropped} samples where |F| under- or overflowed", RuntimeWarning)
    arr = np.array(rows, dtype=float).reshape(-1, 3)
    return arr[:, 0], arr[:, 1], arr[:, 2]


def certify_growth(t: CyclicTuple, K: SupportSet, radii=DEFAULT_RADII,
                   directions: int = DEFAULT_DIRECTIONS, seed: int = 42) -> GrowthCertificate:
    """Least-squares fit of the polynomial growth order relative to ``exp(H_K)``.

    Only samples with ``log(1 + |z| + |w|) >= 1`` enter the fit.
    """
    radii = sorted(float(r) for r in radii)
    if radii[-1] < 10:
        raise ValueError("the largest radius must be at least 10")
    if len(radii) < 2:
        raise ValueError("need at least two radii to fit an order")
    cap = 700.0 / max(float(np.sum(t.operator_norms())), 1e-300)
    if radii[-1] > cap:
        logger.info("radii beyond %.3g rely on the shifted exponential", cap)
    r, x, y = sample_excess(t, K, radii, directions, seed)
    keep = x >= 1.0
    r, x, y = r[keep], x[keep], y[keep]
    design = np.column_stack([np.ones_like(x), x])
    (log_c, order), *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - (log_c + order * x)
    return GrowthCertificate(
        float(order), float(log_c), float(resid.max()),
        {"radii": radii, "directions": directions, "count": int(len(y)), "seed": seed})


def rapid_decay_check(t: CyclicTuple, K: SupportSet, N_list, radii=DEFAULT_RADII,
                      directions: int = DEFAULT_DIRECTIONS, seed: int = 42) -> dict:
    """Smallest ``log C_N`` for ``|F| <= C_N (1 + |z| + |w|)^(-N) exp(H_K)`` on the sample.

    For every `N` the result holds the overall ``log_C``, the per-radius
    maxima and ``stable``: the per-radius maximum does not grow past the
    first radius.
    """
    radii = sorted(float(r) for r in radii)
    r, x, y = sample_excess(t, K, radii, directions, seed)
    out = {}
    for N in N_list:
        need = y + N * x
        per_radius = [float(need[r == rad].max()) for rad in radii]
        out[N] = {"log_C": float(need.max()), "per_radius": per_radius,
                  "stable": bool(max(per_radius[1:], default=-math.inf) <= per_radius[0] + 1e-9)}
    return out


def directional_excess(t: CyclicTuple, K: SupportSet, direction, scales) -> np.ndarray:
    """``log|F(z, z)| - H_K(2z)`` along ``z = s * direction``; grows linearly when K misses support."""
    d = np.atleast_1d(np.asarray(direction, dtype=complex))
    d = d / np.linalg.norm(d)
    return np.array([log_abs_F(t, s * d, s * d) - supporting_function(K, 2 * s * d) for s in scales])


def coefficient_psd_check(c, tol: float = 1e-10) -> tuple[bool, float]:
    """Whether a Hermitian coefficient table is PSD up to ``tol * trace``.

    `c` is a square array in graded-lex order or a :class:`MomentTable`.
    """
    arr = c.values if isinstance(c, MomentTable) else np.asarray(c, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError("coefficient table must be square")
    scale = max(1.0, float(np.abs(arr).max()))
    if np.abs(arr - arr.conj().T).max() > 1e-10 * scale:
        raise ValueError("coefficient table is not Hermitian")
    lo = float(np.linalg.eigvalsh(0.5 * (arr + arr.conj().T)).min())
    trace = abs(float(np.trace(arr).real))
    return lo >= -tol * trace, lo
