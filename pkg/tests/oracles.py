"""Brute-force reference implementations, written from definitions only.

Nothing here imports the package: these are the independent oracles the
tests compare against.  Tables are plain lists of lists.
"""
from __future__ import annotations

import itertools
from math import gcd


def rows(t):
    return t.product.tolist() if hasattr(t, "product") else [list(r) for r in t]


def is_associative(P) -> bool:
    n = len(P)
    return all(P[P[a][b]][c] == P[a][P[b][c]] for a in range(n) for b in range(n) for c in range(n))


def closure(P, seeds) -> set[int]:
    S = set(seeds)
    while True:
        new = {P[a][b] for a in S for b in S} - S
        if not new:
            return S
        S |= new


def right_ideal(P, x) -> frozenset:
    """x S^1."""
    return frozenset([x] + [P[x][s] for s in range(len(P))])


def left_ideal(P, x) -> frozenset:
    return frozenset([x] + [P[s][x] for s in range(len(P))])


def two_sided_ideal(P, x) -> frozenset:
    n = len(P)
    out = {x}
    out |= {P[x][s] for s in range(n)}
    out |= {P[s][x] for s in range(n)}
    out |= {P[P[s][x]][u] for s in range(n) for u in range(n)}
    return frozenset(out)


def partition_of(key, n) -> list[frozenset]:
    """Classes of the kernel of ``key`` on range(n), sorted by least element."""
    groups: dict = {}
    for x in range(n):
        groups.setdefault(key(x), set()).add(x)
    return sorted((frozenset(g) for g in groups.values()), key=min)


def green(P, rel: str) -> list[frozenset]:
    n = len(P)
    if rel == "R":
        return partition_of(lambda x: right_ideal(P, x), n)
    if rel == "L":
        return partition_of(lambda x: left_ideal(P, x), n)
    if rel == "J":
        return partition_of(lambda x: two_sided_ideal(P, x), n)
    if rel == "H":
        return partition_of(lambda x: (right_ideal(P, x), left_ideal(P, x)), n)
    if rel == "D":
        # D = R o L: x D y iff some z has x R z and z L y
        R = {x: right_ideal(P, x) for x in range(n)}
        L = {x: left_ideal(P, x) for x in range(n)}
        related = {x: frozenset(y for y in range(n) if any(R[x] == R[z] and L[z] == L[y] for z in range(n))) for x in range(n)}
        return partition_of(lambda x: related[x], n)
    raise ValueError(rel)


def as_blocks(class_of) -> list[frozenset]:
    cls = list(class_of)
    return partition_of(lambda x: cls[x], len(cls))


def power(P, x, k):
    acc = x
    for _ in range(k - 1):
        acc = P[acc][x]
    return acc


def index_period(P, x):
    seen = {}
    k, acc = 1, x
    while acc not in seen:
        seen[acc] = k
        acc = P[acc][x]
        k += 1
    m = seen[acc]
    return m, k - m


def omega(P, x):
    n = len(P)
    for k in range(1, 2 * n + 2):
        y = power(P, x, k)
        if P[y][y] == y:
            return y
    raise AssertionError("no idempotent power")


def group_part(P):
    """Elements lying in a subgroup: x with x = x^(k+1) for some k >= 1."""
    n = len(P)
    return [x for x in range(n) if any(power(P, x, k + 1) == x for k in range(1, n + 1))]


def is_hom(PS, PT, f) -> bool:
    n = len(PS)
    return all(f[PS[a][b]] == PT[f[a]][f[b]] for a in range(n) for b in range(n))


def all_homs(PS, PT):
    for f in itertools.product(range(len(PT)), repeat=len(PS)):
        if is_hom(PS, PT, f):
            yield f


def restrict(P, U):
    U = sorted(U)
    pos = {u: i for i, u in enumerate(U)}
    return [[pos[P[a][b]] for b in U] for a in U]


def divides(PT, PS) -> bool:
    """Any subsemigroup (all subsets) of S with an onto homomorphism to T."""
    n = len(PS)
    m = len(PT)
    for k in range(m, n + 1):
        for U in itertools.combinations(range(n), k):
            if closure(PS, U) != set(U):
                continue
            sub = restrict(PS, U)
            if any(len(set(f)) == m for f in all_homs(sub, PT)):
                return True
    return False


def embeds(PT, PS) -> bool:
    return any(len(set(f)) == len(PT) for f in all_homs(PT, PS))


def identity_holds(P, lhs, rhs) -> bool:
    k = max(lhs + rhs) + 1

    def ev(w, a):
        acc = a[w[0]]
        for x in w[1:]:
            acc = P[acc][a[x]]
        return acc

    return all(ev(lhs, a) == ev(rhs, a) for a in itertools.product(range(len(P)), repeat=k))


def has_square(w) -> bool:
    n = len(w)
    return any(w[i:i + p] == w[i + p:i + 2 * p] for p in range(1, n // 2 + 1) for i in range(n - 2 * p + 1))


def factors(w, L) -> set[tuple]:
    return {tuple(w[i:i + l]) for l in range(1, L + 1) for i in range(len(w) - l + 1)}


def lcm(a, b):
    return a * b // gcd(a, b)
