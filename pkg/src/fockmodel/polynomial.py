"""Sparse polynomials in the monomial basis and their Fock-space pairing."""

from __future__ import annotations

from typing import Mapping

import numpy as np

from . import multiindex as mi


class Polynomial:
    """Polynomial in `n` complex variables stored as ``{alpha: coefficient}``.

    Coefficients refer to the unnormalized monomials ``z**alpha``. Zero
    coefficients are dropped on construction.
    """

    __slots__ = ("n", "_coeffs")

    def __init__(self, n: int, coeffs: Mapping | None = None):
        self.n = int(n)
        clean = {}
        for alpha, c in (coeffs or {}).items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != self.n:
                raise ValueError(f"multi-index {alpha} does not have length {self.n}")
            if any(a < 0 for a in alpha):
                raise ValueError(f"negative exponent in {alpha}")
            c = complex(c)
            if c != 0:
                clean[alpha] = clean.get(alpha, 0) + c
        self._coeffs = {a: c for a, c in clean.items() if c != 0}

    @classmethod
    def constant(cls, n, c=1.0):
        return cls(n, {(0,) * n: c})

    @classmethod
    def variable(cls, n, i):
        return cls(n, {mi.unit(n, i): 1.0})

    @classmethod
    def from_vector(cls, n, d, vec, tol=0.0):
        """Build from a coefficient vector in graded-lex order up to degree `d`."""
        basis = mi.enumerate_upto(n, d)
        vec = np.asarray(vec)
        if vec.shape != (len(basis),):
            raise ValueError(f"expected {len(basis)} coefficients, got shape {vec.shape}")
        return cls(n, {a: c for a, c in zip(basis, vec) if abs(c) > tol})

    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    def items(self):
        return self._coeffs.items()

    def __getitem__(self, alpha):
        return self._coeffs.get(tuple(alpha), 0j)

    def __len__(self):
        return len(self._coeffs)

    @property
    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(a) for a in self._coeffs), default=-1)

    def to_vector(self, d: int) -> np.ndarray:
        idx = mi.index_map(self.n, d)
        out = np.zeros(len(idx), dtype=complex)
        for alpha, c in self._coeffs.items():
            if sum(alpha) > d:
                raise ValueError(f"degree {sum(alpha)} exceeds {d}")
            out[idx[alpha]] = c
        return out

    def __call__(self, z) -> complex:
        z = np.asarray(z, dtype=complex).reshape(-1)
        return sum(c * mi.power(z, a) for a, c in self._coeffs.items())

    def evaluate(self, points) -> np.ndarray:
        """Vectorized evaluation at an ``(N, n)`` array of points."""
        pts = np.asarray(points, dtype=complex).reshape(-1, self.n)
        out = np.zeros(len(pts), dtype=complex)
        for alpha, c in self._coeffs.items():
            out += c * np.prod(pts ** np.asarray(alpha), axis=1)
        return out

    def at_matrices(self, matrices) -> np.ndarray:
        """Evaluate ``p(T)`` for a commuting tuple of square matrices."""
        mats = [np.asarray(t, dtype=complex) for t in matrices]
        if len(mats) != self.n:
            raise ValueError(f"need {self.n} matrices, got {len(mats)}")
        size = mats[0].shape[0]
        out = np.zeros((size, size), dtype=complex)
        for alpha, c in self._coeffs.items():
            term = np.eye(size, dtype=complex)
            for t, a in zip(mats, alpha):
                if a:
                    term = term @ np.linalg.matrix_power(t, a)
            out += c * term
        return out

    def derivative(self, i: int) -> "Polynomial":
        out = {}
        for alpha, c in self._coeffs.items():
            if alpha[i]:
                beta = list(alpha)
                beta[i] -= 1
                out[tuple(beta)] = c * alpha[i]
        return Polynomial(self.n, out)

    def conjugate(self) -> "Polynomial":
        return Polynomial(self.n, {a: c.conjugate() for a, c in self._coeffs.items()})

    def __add__(self, other):
        out = dict(self._coeffs)
        for a, c in other.items():
            out[a] = out.get(a, 0) + c
        return Polynomial(self.n, out)

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            out = {}
            for a, c in self._coeffs.items():
                for b, e in other.items():
                    key = mi.add(a, b)
                    out[key] = out.get(key, 0) + c * e
            return Polynomial(self.n, out)
        return Polynomial(self.n, {a: c * other for a, c in self._coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.n == other.n and self._coeffs == other._coeffs

    def __repr__(self):
        if not self._coeffs:
            return "Polynomial(0)"
        terms = []
        for a in sorted(self._coeffs, key=lambda a: (sum(a), [-x for x in a])):
            mono = "*".join(f"z{i + 1}^{e}" if e > 1 else f"z{i + 1}" for i, e in enumerate(a) if e)
            terms.append(f"({self._coeffs[a]:.6g}){'*' + mono if mono else ''}")
        return "Polynomial(" + " + ".join(terms) + ")"


def fock_inner(p: Polynomial, q: Polynomial) -> complex:
    """Fock-space inner product: sum over alpha of ``alpha! * p_alpha * conj(q_alpha)``."""
    if p.n != q.n:
        raise ValueError("polynomials live in different numbers of variables")
    total = 0j
    for alpha, c in p.items():
        e = q[alpha]
        if e:
            total += float(mi.factorial(alpha)) * c * np.conj(e)
    return complex(total)
