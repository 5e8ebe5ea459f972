"""Exhaustive enumeration of small semigroups as labelled tables."""
from __future__ import annotations

import itertools

import numpy as np

from .core import INDEX_DTYPE, CayleyTable
from .errors import CapExceeded

MAX_ORDER = 3


def _all_tables(n: int) -> np.ndarray:
    """All n^(n^2) binary operations on n points, shape (count, n, n)."""
    cells = n * n
    count = n ** cells
    idx = np.arange(count, dtype=np.int64)
    digits = (idx[:, None] // n ** np.arange(cells - 1, -1, -1, dtype=np.int64)) % n
    return digits.reshape(count, n, n).astype(INDEX_DTYPE)


def associative_tables(n: int) -> np.ndarray:
    """Every associative table on {0..n-1}, in lexicographic order of the row-major entries."""
    if not 1 <= n <= MAX_ORDER:
        raise CapExceeded(f"exhaustive enumeration is limited to order {MAX_ORDER}")
    T = _all_tables(n)
    ok = np.ones(len(T), dtype=bool)
    rows = np.arange(len(T))[:, None]
    for x, y, z in itertools.product(range(n), repeat=3):
        xy = T[:, x, y]
        yz = T[:, y, z]
        ok &= T[rows[:, 0], xy, z] == T[rows[:, 0], x, yz]
    return T[ok]


def canonical_form(P: np.ndarray) -> tuple[int, ...]:
    """Lexicographically least relabelling of a table, as a flat tuple."""
    n = P.shape[0]
    best = None
    for perm in itertools.permutations(range(n)):
        p = np.array(perm)
        inv = np.argsort(p)
        # relabel x -> p[x]: Q[p[x], p[y]] = p[P[x, y]]
        Q = p[P[np.ix_(inv, inv)]]
        key = tuple(Q.ravel().tolist())
        if best is None or key < best:
            best = key
    return best


def corpus(max_order: int = 3, up_to_isomorphism: bool = False) -> list[CayleyTable]:
    """All semigroups of order <= max_order, labelled or one per isomorphism class."""
    out = []
    for n in range(1, max_order + 1):
        tables = associative_tables(n)
        if up_to_isomorphism:
            seen = {}
            for P in tables:
                seen.setdefault(canonical_form(P), P)
            tables = [np.array(k, dtype=INDEX_DTYPE).reshape(n, n) for k in sorted(seen)]
        out.extend(CayleyTable._trusted(P) for P in tables)
    return out
