"""Multi-index arithmetic and the graded lexicographic monomial order.

Every table indexed by monomials in this package (moment tables, Fock
matrices, coefficient tables) uses the order produced by
:func:`enumerate_upto`: first by total degree, then lexicographically
with larger leading exponents first, e.g. ``(0,0), (1,0), (0,1), (2,0),
(1,1), (0,2)``.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Sequence

MultiIndex = tuple[int, ...]

# exact integer factorials up to this per-coordinate exponent
_EXACT_LIMIT = 20


def _check(alpha: Sequence[int]) -> MultiIndex:
    alpha = tuple(int(a) for a in alpha)
    if any(a < 0 for a in alpha):
        raise ValueError(f"multi-index entries must be non-negative, got {alpha}")
    return alpha


def _homogeneous(n: int, k: int) -> list[MultiIndex]:
    if n == 1:
        return [(k,)]
    out = []
    for first in range(k, -1, -1):
        for rest in _homogeneous(n - 1, k - first):
            out.append((first,) + rest)
    return out


@lru_cache(maxsize=256)
def _enumerate(n: int, d: int) -> tuple[MultiIndex, ...]:
    out: list[MultiIndex] = []
    for k in range(d + 1):
        out.extend(_homogeneous(n, k))
    return tuple(out)


def enumerate_upto(n: int, d: int) -> list[MultiIndex]:
    """All multi-indices of length `n` and total degree at most `d`.

    The list has ``comb(n + d, d)`` entries in graded lexicographic order,
    so ``enumerate_upto(n, d)`` is a prefix of ``enumerate_upto(n, d + 1)``.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if d < 0:
        raise ValueError(f"d must be non-negative, got {d}")
    return list(_enumerate(int(n), int(d)))


def index_map(n: int, d: int) -> dict[MultiIndex, int]:
    """Position of every multi-index in ``enumerate_upto(n, d)``."""
    return {a: i for i, a in enumerate(_enumerate(int(n), int(d)))}


def count_upto(n: int, d: int) -> int:
    return math.comb(n + d, d)


def degree(alpha: Sequence[int]) -> int:
    return sum(alpha)


def add(alpha: Sequence[int], beta: Sequence[int]) -> MultiIndex:
    return tuple(a + b for a, b in zip(alpha, beta))


def sub(alpha: Sequence[int], beta: Sequence[int]) -> MultiIndex:
    return tuple(a - b for a, b in zip(alpha, beta))


def unit(n: int, i: int) -> MultiIndex:
    return tuple(1 if j == i else 0 for j in range(n))


def leq(gamma: Sequence[int], alpha: Sequence[int]) -> bool:
    """Componentwise order ``gamma <= alpha``."""
    return all(g <= a for g, a in zip(gamma, alpha))


def below(alpha: Sequence[int]) -> Iterable[MultiIndex]:
    """Every ``gamma`` with ``gamma <= alpha`` componentwise."""
    alpha = tuple(alpha)
    if not alpha:
        yield ()
        return
    for g0 in range(alpha[0] + 1):
        for rest in below(alpha[1:]):
            yield (g0,) + rest


def factorial(alpha: Sequence[int]) -> int | float:
    """Product of the factorials of the entries.

    Exact integers while every entry is at most 20; beyond that the
    product is formed in floating point and :class:`OverflowError` is
    raised if it leaves the double range.
    """
    alpha = _check(alpha)
    if all(a <= _EXACT_LIMIT for a in alpha):
        return math.prod(math.factorial(a) for a in alpha)
    log_value = sum(math.lgamma(a + 1) for a in alpha)
    if log_value > 709.0:
        raise OverflowError(f"factorial of {alpha} exceeds double precision range")
    return math.exp(log_value)


def binomial(alpha: Sequence[int], gamma: Sequence[int]) -> int:
    """Product of the binomial coefficients ``C(alpha_i, gamma_i)``; zero unless ``gamma <= alpha``."""
    alpha, gamma = _check(alpha), _check(gamma)
    if len(alpha) != len(gamma):
        raise ValueError("multi-indices must have the same length")
    return math.prod(math.comb(a, g) for a, g in zip(alpha, gamma))


def power(z, alpha: Sequence[int]) -> complex:
    """Evaluate the monomial ``z**alpha`` at a point ``z``."""
    out = 1.0 + 0.0j
    for zi, a in zip(z, alpha):
        if a:
            out *= complex(zi) ** a
    return out
