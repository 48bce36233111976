"""Seeded random tuples shared by the test modules."""

import numpy as np
import scipy.linalg as sl

from fockmodel.tuples import CyclicTuple


def cnormal(rng, *shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def random_unitary(rng, m):
    q, r = np.linalg.qr(cnormal(rng, m, m))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def polynomial_tuple(rng, m, n=2, norm=None):
    """``n`` polynomials in one random ``m x m`` matrix, each rescaled.

    With ``norm=None`` each operator norm is drawn from ``[0.2, 1]``.
    """
    a = cnormal(rng, m, m)
    mats = []
    for _ in range(n):
        c = cnormal(rng, m)
        b = sum(c[k] * np.linalg.matrix_power(a, k) for k in range(m))
        target = rng.uniform(0.2, 1.0) if norm is None else norm
        mats.append(b / np.linalg.norm(b, 2) * target)
    return CyclicTuple(mats, cnormal(rng, m))


def jordan_tuple(rng, n=2, max_dim=6):
    """Unitary conjugate of a direct sum of ``lambda I + N`` blocks, ``N`` commuting nilpotents."""
    sizes, total = [], 0
    while total < max_dim:
        s = min(int(rng.integers(1, 4)), max_dim - total)
        sizes.append(s)
        total += s
        if rng.random() < 0.3:
            break
    blocks = [[] for _ in range(n)]
    for s in sizes:
        lam = cnormal(rng, n)
        shift = np.diag(np.ones(s - 1), -1)
        for i in range(n):
            c = cnormal(rng, s)
            nil = sum((c[k] * np.linalg.matrix_power(shift, k) for k in range(1, s)), np.zeros((s, s)))
            blocks[i].append(lam[i] * np.eye(s) + nil)
    mats = [sl.block_diag(*b) for b in blocks]
    q = random_unitary(rng, total)
    return CyclicTuple([q @ x @ q.conj().T for x in mats], q @ cnormal(rng, total))


def similarity_tuple(rng, m=3, n=2):
    """Non-unitary similarity of a diagonal tuple with distinct joint eigenvalues."""
    s = cnormal(rng, m, m) + 2 * np.eye(m)
    si = np.linalg.inv(s)
    diag = cnormal(rng, n, m)
    return CyclicTuple([s @ np.diag(d) @ si for d in diag], cnormal(rng, m))


LATTICE = [complex(a, b) for b in (-2, -1, 0, 1, 2) for a in (-2, -1, 0, 1, 2)]


def lattice_tuple(rng):
    """One-variable 3x3 tuple ``S J S^-1`` whose eigenvalues sit on the 5x5 lattice."""
    pick = rng.choice(len(LATTICE), 3, replace=False)
    j = np.diag([LATTICE[i] for i in pick])
    if rng.random() < 0.5:
        j[1, 0] = 1
        j[1, 1] = j[0, 0]
    s = cnormal(rng, 3, 3)
    return CyclicTuple([s @ j @ np.linalg.inv(s)], cnormal(rng, 3))
