"""Finite semigroups as dense multiplication tables.

Elements are the integers ``0..n-1``; the product of ``a`` and ``b`` is
``t.product[a, b]``.  Tables are immutable once built.
"""
from __future__ import annotations

import math
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .errors import (
    CapExceeded,
    NotACongruence,
    NotAnIdeal,
    NotASubsemigroup,
    NotAssociative,
)

DEFAULT_CAP = 100_000
INDEX_DTYPE = np.int32

# above this many triples the dense associativity scan is avoided when possible
_DENSE_TRIPLE_LIMIT = 4 * 10**8


class CayleyTable:
    """A finite semigroup given by its full multiplication table.

    ``generators`` (optional) must generate the whole table; Green's relation
    engines use them to keep Cayley graphs sparse.  ``labels`` are display
    strings without whitespace.
    """

    def __init__(self, product, generators=None, labels=None):
        arr = np.array(product, dtype=INDEX_DTYPE, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise ValueError(f"product must be a non-empty square array, got shape {arr.shape}")
        n = arr.shape[0]
        if arr.min() < 0 or arr.max() >= n:
            raise ValueError("product entries must lie in [0, n)")
        arr.setflags(write=False)
        self.product = arr
        self.n = n
        self.generators = None if generators is None else tuple(int(g) for g in generators)
        if self.generators is not None and any(not 0 <= g < n for g in self.generators):
            raise ValueError("generator index out of range")
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise ValueError("need exactly one label per element")
            if any(not x or any(c.isspace() for c in x) for x in labels):
                raise ValueError("labels must be non-empty and contain no whitespace")
        self.labels = labels
        self._cache: dict = {}

    @classmethod
    def _trusted(cls, product: np.ndarray, generators=None, labels=None) -> "CayleyTable":
        # skips the copy and range scan; for arrays built by this package
        t = cls.__new__(cls)
        arr = np.ascontiguousarray(product, dtype=INDEX_DTYPE)
        arr.setflags(write=False)
        t.product = arr
        t.n = arr.shape[0]
        t.generators = None if generators is None else tuple(int(g) for g in generators)
        t.labels = None if labels is None else tuple(labels)
        t._cache = {}
        return t

    @classmethod
    def from_rows(cls, rows, generators=None, labels=None, check=True) -> "CayleyTable":
        """Build a table from manual input, rejecting non-associative data."""
        t = cls(rows, generators=generators, labels=labels)
        if check:
            witness = associativity_witness(t)
            if witness is not None:
                raise NotAssociative(witness)
        return t

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"CayleyTable(n={self.n})"

    def __eq__(self, other):
        if not isinstance(other, CayleyTable):
            return NotImplemented
        return (
            self.n == other.n
            and self.generators == other.generators
            and self.labels == other.labels
            and np.array_equal(self.product, other.product)
        )

    __hash__ = None

    def mul(self, a: int, b: int) -> int:
        return int(self.product[a, b])

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    def with_generators(self, generators) -> "CayleyTable":
        return CayleyTable._trusted(self.product, generators, self.labels)

    def with_labels(self, labels) -> "CayleyTable":
        return CayleyTable(self.product, self.generators, labels)

    @cached_property
    def identity(self) -> int | None:
        """The two-sided identity, if there is one."""
        P = self.product
        ar = np.arange(self.n)
        for e in range(self.n):
            if np.array_equal(P[e], ar) and np.array_equal(P[:, e], ar):
                return e
        return None

    @cached_property
    def zero(self) -> int | None:
        """The two-sided zero, if there is one."""
        # a zero must equal the product of all elements, so only one candidate
        P = self.product
        z = 0
        for x in range(1, self.n):
            z = P[z, x]
        z = int(z)
        if np.all(P[z] == z) and np.all(P[:, z] == z):
            return z
        return None


def cached(t: CayleyTable, key, compute):
    if key not in t._cache:
        t._cache[key] = compute()
    return t._cache[key]


# ---------------------------------------------------------------- associativity

def _dense_witness(P: np.ndarray, rows: range, block: int):
    for start in range(rows.start, rows.stop, block):
        A = np.arange(start, min(start + block, rows.stop))
        left = P[P[A]]            # (a*b)*c, shape (len(A), n, n)
        right = P[A][:, P]        # a*(b*c)
        bad = left != right
        if bad.any():
            i, b, c = np.unravel_index(int(np.argmax(bad)), bad.shape)
            return (int(A[i]), int(b), int(c))
    return None


def _sparse_witness(P: np.ndarray, zero: int):
    """Associativity check for a table with a verified two-sided zero.

    Both sides of (xy)z = x(yz) are the zero unless the triple lies in the
    support of some non-zero product chain, so only those triples are checked.
    """
    nz = P != zero
    xs, ys = np.nonzero(nz)
    ps = P[xs, ys]
    # row CSR of non-zero products: row p -> columns z with p*z != 0
    row_counts = nz.sum(axis=1)
    row_ptr = np.concatenate([[0], np.cumsum(row_counts)])
    col_counts = nz.sum(axis=0)
    _, cy = np.nonzero(nz.T)  # for column q, the rows x with x*q != 0
    col_ptr = np.concatenate([[0], np.cumsum(col_counts)])
    del nz

    def expand(ptr, values, keys):
        counts = ptr[keys + 1] - ptr[keys]
        rep = np.repeat(np.arange(len(keys)), counts)
        offs = np.arange(counts.sum()) - np.repeat(np.cumsum(counts) - counts, counts)
        return rep, values[np.repeat(ptr[keys], counts) + offs]

    candidates = []
    # triples with (xy) != 0 and (xy)z != 0
    rep, zs = expand(row_ptr, ys, ps)
    candidates.append(np.stack([xs[rep], ys[rep], zs], axis=1))
    # triples with (yz) != 0 and x(yz) != 0; here the pair listing plays (y, z)
    rep, xs2 = expand(col_ptr, cy, ps)
    candidates.append(np.stack([xs2, xs[rep], ys[rep]], axis=1))
    tri = np.concatenate(candidates)
    if len(tri) == 0:
        return None
    a, b, c = tri[:, 0], tri[:, 1], tri[:, 2]
    bad = P[P[a, b], c] != P[a, P[b, c]]
    if not bad.any():
        return None
    bad_tri = tri[bad]
    order = np.lexsort((bad_tri[:, 2], bad_tri[:, 1], bad_tri[:, 0]))
    return tuple(int(v) for v in bad_tri[order[0]])


def _light_witness(P: np.ndarray, generators: Sequence[int]):
    # (x g) z == x (g z) for all x, z and generators g implies associativity
    for g in sorted(set(generators)):
        left = P[P[:, g]]          # row x: (x g) z
        right = P[:, P[g]]         # row x: x (g z)
        bad = left != right
        if bad.any():
            x, z = np.unravel_index(int(np.argmax(bad)), bad.shape)
            return (int(x), int(g), int(z))
    return None


def associativity_witness(t: CayleyTable, jobs: int = 1):
    """Return a triple (a, b, c) with (ab)c != a(bc), or None if associative.

    Small tables get the full triple scan.  Large tables with a zero use a
    sparse scan over triples where a non-zero product can occur; large tables
    with recorded generators use Light's test.  The dense scan can be split
    over ``jobs`` threads; the reported witness is the lexicographically
    smallest failing triple in every mode that reports one from a full scan.
    """
    P = t.product
    n = t.n
    if n**3 > _DENSE_TRIPLE_LIMIT:
        if t.zero is not None:
            return _sparse_witness(P, t.zero)
        if t.generators:
            return _light_witness(P, t.generators)
    block = max(1, (1 << 22) // (n * n))
    if jobs <= 1 or n < 2:
        return _dense_witness(P, range(n), block)
    bounds = np.linspace(0, n, jobs + 1).astype(int)
    parts = [range(bounds[i], bounds[i + 1]) for i in range(jobs) if bounds[i] < bounds[i + 1]]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        found = list(pool.map(lambda r: _dense_witness(P, r, block), parts))
    found = [w for w in found if w is not None]
    return min(found) if found else None


def verify_associativity(t: CayleyTable, jobs: int = 1) -> bool:
    return associativity_witness(t, jobs=jobs) is None


# ---------------------------------------------------------------- closure

@dataclass
class GeneratorDomain:
    """An element universe given by a product function and generators.

    Elements must be hashable canonical forms: equal elements compare equal.
    """

    generators: Sequence[Hashable]
    multiply: Callable[[Hashable, Hashable], Hashable]
    label: Callable[[Hashable], str] | None = None


@dataclass
class Closure:
    table: CayleyTable
    elements: list
    index: dict = field(repr=False)


def close_generators(domain: GeneratorDomain, cap: int = DEFAULT_CAP) -> Closure:
    """Enumerate the subsemigroup generated by ``domain.generators``.

    Froidure-Pin style: elements are discovered breadth first by word
    length, ties broken by generator index, so each element is recorded with
    its shortlex-least word (prefix element, last generator).  Only right
    multiplications by generators go through ``domain.multiply``; the full
    table is then filled column by column from the words.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    gens = list(domain.generators)
    if not gens:
        raise ValueError("need at least one generator")
    mul = domain.multiply
    elements: list = []
    index: dict = {}
    prefix: list[int] = []
    last: list[int] = []
    gen_ids: list[int] = []

    def add(x, pre, g):
        if len(elements) >= cap:
            raise CapExceeded(f"closure exceeds cap of {cap} elements")
        index[x] = len(elements)
        elements.append(x)
        prefix.append(pre)
        last.append(g)

    for gi, g in enumerate(gens):
        if g not in index:
            add(g, -1, gi)
        gen_ids.append(index[g])

    right: list[list[int]] = []
    pos = 0
    while pos < len(elements):
        x = elements[pos]
        row = []
        for gi, g in enumerate(gens):
            y = mul(x, g)
            if y not in index:
                add(y, pos, gi)
            row.append(index[y])
        right.append(row)
        pos += 1

    n = len(elements)
    R = np.array(right, dtype=INDEX_DTYPE).reshape(n, len(gens))
    cols = np.empty((n, n), dtype=INDEX_DTYPE)  # cols[y] = column y of the table
    for y in range(n):
        if prefix[y] < 0:
            cols[y] = R[:, last[y]]
        else:
            cols[y] = R[cols[prefix[y]], last[y]]
    labels = None
    if domain.label is not None:
        labels = [domain.label(x) for x in elements]
    table = CayleyTable._trusted(cols.T, generators=gen_ids, labels=labels)
    return Closure(table, elements, index)


def generated_subsemigroup(t: CayleyTable, seeds: Iterable[int]) -> list[int]:
    """Sorted element list of the subsemigroup of ``t`` generated by ``seeds``."""
    seeds = sorted(set(int(s) for s in seeds))
    if not seeds:
        return []
    P = t.product
    inside = np.zeros(t.n, dtype=bool)
    inside[seeds] = True
    queue = deque(seeds)
    while queue:
        x = queue.popleft()
        for y in P[x, seeds].tolist():
            if not inside[y]:
                inside[y] = True
                queue.append(y)
    return np.flatnonzero(inside).tolist()


def subtable(t: CayleyTable, elements: Sequence[int], generators=None) -> CayleyTable:
    """Restrict ``t`` to a subsemigroup, keeping the given element order.

    ``generators`` are indices into ``elements``' positions' parent ids, i.e.
    parent element ids; they are translated to positions in the result.
    """
    elements = np.asarray(elements, dtype=np.int64)
    pos = np.full(t.n, -1, dtype=np.int64)
    pos[elements] = np.arange(len(elements))
    sub = pos[t.product[np.ix_(elements, elements)]]
    if (sub < 0).any():
        raise NotASubsemigroup("element set is not closed under multiplication")
    labels = None if t.labels is None else [t.labels[e] for e in elements]
    gens = None if generators is None else [int(pos[g]) for g in generators]
    return CayleyTable._trusted(sub, generators=gens, labels=labels)


def minimal_generating_set(t: CayleyTable) -> list[int]:
    """A deterministic irredundant-by-construction generating set.

    Scans elements in index order, keeping an element only if it is not
    already generated by the ones kept before.
    """
    gens: list[int] = []
    have = np.zeros(t.n, dtype=bool)
    for x in range(t.n):
        if not have[x]:
            gens.append(x)
            have[generated_subsemigroup(t, gens)] = True
    return gens


def generating_set(t: CayleyTable) -> list[int]:
    return list(t.generators) if t.generators else cached(t, "mingens", lambda: minimal_generating_set(t))


# ---------------------------------------------------------------- element primitives

def adjoin_identity(t: CayleyTable) -> CayleyTable:
    """Return ``t`` if it is a monoid, else ``t`` with a fresh identity appended."""
    if t.identity is not None:
        return t
    n = t.n
    P = np.empty((n + 1, n + 1), dtype=INDEX_DTYPE)
    P[:n, :n] = t.product
    P[n, :] = np.arange(n + 1)
    P[:, n] = np.arange(n + 1)
    labels = None if t.labels is None else list(t.labels) + [_fresh_label(t.labels, "1")]
    gens = None if t.generators is None else list(t.generators) + [n]
    return CayleyTable._trusted(P, generators=gens, labels=labels)


def _fresh_label(existing, base):
    label, i = base, 1
    while label in existing:
        label = f"{base}'{i}" if i > 1 else f"{base}'"
        i += 1
    return label


def idempotents(t: CayleyTable) -> list[int]:
    return np.flatnonzero(np.diag(t.product) == np.arange(t.n)).tolist()


def index_period(t: CayleyTable, x: int) -> tuple[int, int]:
    """Least m, k >= 1 with x^m = x^(m+k)."""
    seen = {}
    p, e = int(x), 1
    while p not in seen:
        seen[p] = e
        p = int(t.product[p, x])
        e += 1
    m = seen[p]
    return m, e - m


def index_periods(t: CayleyTable) -> np.ndarray:
    """Array of shape (n, 2) with index and period of every element."""
    return cached(t, "index_period", lambda: np.array([index_period(t, x) for x in range(t.n)], dtype=np.int64))


def omega_power(t: CayleyTable, x: int) -> int:
    """The unique idempotent among the powers of x."""
    m, k = index_period(t, x)
    # x^j is idempotent for the multiple j of k with j >= m
    j = k * math.ceil(m / k)
    return _power(t, x, j)


def omega_plus_one(t: CayleyTable, x: int) -> int:
    return int(t.product[x, omega_power(t, x)])


def _power(t: CayleyTable, x: int, j: int) -> int:
    p = int(x)
    for _ in range(j - 1):
        p = int(t.product[p, x])
    return p


def omega_powers(t: CayleyTable) -> np.ndarray:
    return cached(t, "omega", lambda: np.array([omega_power(t, x) for x in range(t.n)], dtype=np.int64))


def omega_plus_ones(t: CayleyTable) -> np.ndarray:
    return t.product[np.arange(t.n), omega_powers(t)].astype(np.int64)


def group_elements(t: CayleyTable) -> list[int]:
    """Gr S: the elements lying in some subgroup, i.e. s = s^(omega+1)."""
    return np.flatnonzero(omega_plus_ones(t) == np.arange(t.n)).tolist()


def _as_mask(t: CayleyTable, X) -> np.ndarray:
    mask = np.zeros(t.n, dtype=bool)
    mask[list(X)] = True
    return mask


def is_right_ideal(t: CayleyTable, X) -> bool:
    mask = _as_mask(t, X)
    return bool(mask[t.product[mask]].all())


def is_left_ideal(t: CayleyTable, X) -> bool:
    mask = _as_mask(t, X)
    return bool(mask[t.product[:, mask]].all())


def is_ideal(t: CayleyTable, X) -> bool:
    return is_right_ideal(t, X) and is_left_ideal(t, X)


def rees_quotient(t: CayleyTable, J) -> CayleyTable:
    """S/J: keep S minus J in order, then a fresh zero standing for J."""
    J = sorted(set(int(j) for j in J))
    if not J or not is_ideal(t, J):
        raise NotAnIdeal("rees_quotient needs a non-empty two-sided ideal")
    mask = _as_mask(t, J)
    keep = np.flatnonzero(~mask)
    z = len(keep)
    pos = np.full(t.n, z, dtype=np.int64)
    pos[keep] = np.arange(z)
    P = np.full((z + 1, z + 1), z, dtype=INDEX_DTYPE)
    P[:z, :z] = pos[t.product[np.ix_(keep, keep)]]
    labels = None
    if t.labels is not None:
        kept = [t.labels[k] for k in keep]
        labels = kept + [_fresh_label(kept, "0")]
    gens = None
    if t.generators is not None:
        gens = sorted({int(pos[g]) for g in t.generators})
    return CayleyTable._trusted(P, generators=gens, labels=labels)


def direct_product(a: CayleyTable, b: CayleyTable, cap: int = DEFAULT_CAP) -> CayleyTable:
    """Componentwise product; element (i, j) gets index i * |b| + j."""
    n = a.n * b.n
    if n > cap:
        raise CapExceeded(f"direct product of size {n} exceeds cap {cap}")
    A = a.product.astype(np.int64)
    B = b.product.astype(np.int64)
    P = (A[:, None, :, None] * b.n + B[None, :, None, :]).reshape(n, n)
    labels = None
    if a.labels is not None or b.labels is not None:
        labels = [f"({a.label(i)},{b.label(j)})" for i in range(a.n) for j in range(b.n)]
    return CayleyTable._trusted(P, labels=labels)


def product_pair(b: CayleyTable, x: int) -> tuple[int, int]:
    """Coordinates of element ``x`` of ``direct_product(a, b)``."""
    return divmod(int(x), b.n)


def _class_array(t: CayleyTable, partition) -> np.ndarray:
    if isinstance(partition, np.ndarray) or (
        len(partition) == t.n and all(isinstance(c, (int, np.integer)) for c in partition)
    ):
        cls = np.asarray(partition, dtype=np.int64)
    else:
        cls = np.full(t.n, -1, dtype=np.int64)
        for i, block in enumerate(partition):
            for x in block:
                if cls[x] != -1:
                    raise ValueError(f"element {x} lies in two blocks")
                cls[x] = i
        if (cls < 0).any():
            raise ValueError("partition does not cover every element")
    # renumber by first occurrence
    _, first, inv = np.unique(cls, return_index=True, return_inverse=True)
    rank = np.argsort(np.argsort(first))
    return rank[inv]


def congruence_witness(t: CayleyTable, partition):
    """First (x, y, s, side) breaking compatibility, or None for a congruence."""
    cls = _class_array(t, partition)
    k = cls.max() + 1
    rep = np.full(k, -1, dtype=np.int64)
    for x in range(t.n - 1, -1, -1):
        rep[cls[x]] = x
    P = t.product
    rights = cls[P] != cls[P[rep[cls]]]
    lefts = cls[P.T] != cls[P.T[rep[cls]]]
    for side, bad in (("right", rights), ("left", lefts)):
        if bad.any():
            x, s = np.unravel_index(int(np.argmax(bad)), bad.shape)
            return (int(rep[cls[x]]), int(x), int(s)), side
    return None


def quotient_by_partition(t: CayleyTable, partition) -> CayleyTable:
    """Quotient table on the classes of a congruence, numbered by first element.

    ``partition`` is either a class-id array or a list of blocks.
    """
    witness = congruence_witness(t, partition)
    if witness is not None:
        raise NotACongruence(*witness)
    cls = _class_array(t, partition)
    k = int(cls.max()) + 1
    rep = np.full(k, -1, dtype=np.int64)
    for x in range(t.n - 1, -1, -1):
        rep[cls[x]] = x
    Q = cls[t.product[np.ix_(rep, rep)]]
    labels = None
    if t.labels is not None:
        labels = []
        for c in range(k):
            members = np.flatnonzero(cls == c)
            labels.append(t.labels[members[0]] if len(members) == 1 else "[" + t.labels[members[0]] + "]")
    gens = None if t.generators is None else sorted({int(cls[g]) for g in t.generators})
    return CayleyTable._trusted(Q, generators=gens, labels=labels)


def is_nilsemigroup(t: CayleyTable) -> bool:
    z = t.zero
    return z is not None and bool((omega_powers(t) == z).all())


def has_central_idempotents(t: CayleyTable) -> bool:
    E = idempotents(t)
    P = t.product
    return bool(np.array_equal(P[E, :], P[:, E].T))


def is_commutative(t: CayleyTable) -> bool:
    return bool(np.array_equal(t.product, t.product.T))
