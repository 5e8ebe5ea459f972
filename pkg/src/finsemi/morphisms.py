"""Homomorphisms between tables: checks, explicit maps, and bounded searches."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .constructions import l_coset_semigroup, l_flat, r_flat
from .core import (
    CayleyTable,
    direct_product,
    generated_subsemigroup,
    generating_set,
    idempotents,
    index_periods,
    subtable,
)
from .errors import BudgetExceeded, NotNested
from .groups import (
    FiniteGroup,
    as_subgroup,
    conjugate_subgroup,
    coset_lookup,
    left_cosets,
    quotient_group,
)

DEFAULT_BUDGET = 10**6


@dataclass(eq=False)
class Mapping:
    source: CayleyTable
    target: CayleyTable
    image_of: np.ndarray

    def __post_init__(self):
        self.image_of = np.asarray(self.image_of, dtype=np.int64)
        if self.image_of.shape != (self.source.n,):
            raise ValueError("a mapping needs one image per source element")
        if self.image_of.min() < 0 or self.image_of.max() >= self.target.n:
            raise ValueError("image outside the target")

    def __call__(self, x: int) -> int:
        return int(self.image_of[x])

    def lines(self) -> list[str]:
        return [f"{x} {y}" for x, y in enumerate(self.image_of.tolist())]

    def describe(self) -> str:
        return ", ".join(f"{self.source.label(x)}->{self.target.label(y)}" for x, y in enumerate(self.image_of.tolist()))


def homomorphism_violation(m: Mapping) -> tuple[int, int] | None:
    """First pair (x, y) with f(xy) != f(x) f(y), or None."""
    f = m.image_of
    bad = f[m.source.product] != m.target.product[np.ix_(f, f)]
    if bad.any():
        x, y = np.unravel_index(int(np.argmax(bad)), bad.shape)
        return int(x), int(y)
    return None


def is_homomorphism(m: Mapping) -> bool:
    return homomorphism_violation(m) is None


def is_onto(m: Mapping) -> bool:
    return len(np.unique(m.image_of)) == m.target.n


def is_injective(m: Mapping) -> bool:
    return len(np.unique(m.image_of)) == m.source.n


def is_isomorphism(m: Mapping) -> bool:
    return m.source.n == m.target.n and is_injective(m) and is_homomorphism(m)


def identity_mapping(t: CayleyTable) -> Mapping:
    return Mapping(t, t, np.arange(t.n))


def compose(first: Mapping, then: Mapping) -> Mapping:
    return Mapping(first.source, then.target, then.image_of[first.image_of])


def dual_table(t: CayleyTable) -> CayleyTable:
    """The same set with reversed multiplication: x * y := y x."""
    return CayleyTable._trusted(t.product.T, generators=t.generators, labels=t.labels)


# ---------------------------------------------------------------- the explicit maps

def phi_subgroups(G: FiniteGroup, H, K, flat: bool = False) -> Mapping:
    """L_H(G) -> L_K(G) for H inside K: g -> g, gH -> gK (and 0 -> 0)."""
    H, K = as_subgroup(G, H), as_subgroup(G, K)
    if not H <= K:
        raise NotNested(f"{H!r} is not contained in {K!r}")
    build = l_flat if flat else l_coset_semigroup
    src, dst = build(G, H), build(G, K)
    whereK = coset_lookup(G, left_cosets(G, K))
    g = G.order
    image = list(range(g)) + [g + int(whereK[c[0]]) for c in left_cosets(G, H)]
    if flat:
        image.append(dst.n - 1)
    return Mapping(src, dst, image)


def conjugation_iso(G: FiniteGroup, H, y: int, flat: bool = False) -> Mapping:
    """L_H(G) -> L_K(G), K = yHy^-1: g -> y g y^-1, gH -> y g y^-1 K (and 0 -> 0).

    The coset image is y(gH)y^-1.  The shorter rule gH -> ygK depends on the
    coset representative unless y normalizes H, so it is not used.
    """
    H = as_subgroup(G, H)
    K = conjugate_subgroup(G, H, y)
    build = l_flat if flat else l_coset_semigroup
    src, dst = build(G, H), build(G, K)
    whereK = coset_lookup(G, left_cosets(G, K))
    yi = G.inv(y)
    g = G.order
    image = [G.mul(G.mul(y, x), yi) for x in range(g)]
    image += [g + int(whereK[G.mul(G.mul(y, c[0]), yi)]) for c in left_cosets(G, H)]
    if flat:
        image.append(dst.n - 1)
    return Mapping(src, dst, image)


def quotient_attachment_map(G: FiniteGroup, N, flat: bool = False) -> Mapping:
    """L_N(G) -> L(G/N) for normal N: g -> gN, and the coset gN -> its fresh copy.

    Raises NotNormal when N is not normal.
    """
    N = as_subgroup(G, N)
    Q, proj = quotient_group(G, N)
    build = l_flat if flat else l_coset_semigroup
    src, dst = build(G, N), build(Q)
    image = [int(proj[x]) for x in range(G.order)]
    image += [Q.order + int(proj[c[0]]) for c in left_cosets(G, N)]
    if flat:
        image.append(dst.n - 1)
    return Mapping(src, dst, image)


class RightLeftWitness(NamedTuple):
    table: CayleyTable        # T, the subsemigroup of L♭(G) x L♭(G)
    members: list[int]        # its elements as indices into the product table
    mapping: Mapping          # T onto R♭(G)


def rightleft_witness(G: FiniteGroup) -> RightLeftWitness:
    """The subsemigroup T of L♭(G)^2 and its onto map to R♭(G).

    T = {(g,g)} + {(g-bar, h)} + {(0, h)}, with (g,g) -> g,
    (g-bar, h) -> the right coset of g^-1 h, (0, h) -> 0.
    """
    Lf = l_flat(G)
    Rf = r_flat(G)
    g = G.order
    nL = Lf.n
    zero_L = nL - 1
    LL = direct_product(Lf, Lf)
    images = {}
    for x in range(g):
        images[x * nL + x] = x
    for a in range(g):
        for h in range(g):
            images[(g + a) * nL + h] = g + G.mul(G.inv(a), h)
    for h in range(g):
        images[zero_L * nL + h] = Rf.n - 1
    members = sorted(images)
    T = subtable(LL, members)
    return RightLeftWitness(T, members, Mapping(T, Rf, [images[x] for x in members]))


# ---------------------------------------------------------------- search

class _Budget:
    def __init__(self, limit: int):
        if limit < 1:
            raise ValueError("budget must be at least 1")
        self.limit = limit
        self.used = 0

    def spend(self, k: int = 1):
        self.used += k
        if self.used > self.limit:
            raise BudgetExceeded(f"search budget of {self.limit} exhausted")


def _compatible(S: CayleyTable, T: CayleyTable) -> list[list[int]]:
    """Candidate images per source element, from idempotency and index/period."""
    ipS, ipT = index_periods(S), index_periods(T)
    idemT = set(idempotents(T))
    out = []
    for x in range(S.n):
        m, k = ipS[x]
        cands = [y for y in range(T.n) if ipT[y, 0] <= m and k % ipT[y, 1] == 0]
        if m == 1 and k == 1:
            cands = [y for y in cands if y in idemT]
        out.append(cands)
    return out


def _search(S: CayleyTable, T: CayleyTable, budget: _Budget, *, onto=False, injective=False, generators=None):
    """Yield homomorphisms S -> T in deterministic order.

    Images of generators are chosen in generator order, candidates in index
    order; each choice is propagated over the generated closure so conflicts
    show up immediately.
    """
    gens = list(generators) if generators is not None else generating_set(S)
    PS = S.product.tolist()
    PT = T.product.tolist()
    cands = _compatible(S, T)
    img = [-1] * S.n
    used = [-1] * T.n  # target -> source, for injectivity
    mapped: list[int] = []

    def assign(x, y, trail):
        work = [(x, y)]
        while work:
            u, v = work.pop()
            if img[u] != -1:
                if img[u] != v:
                    return False
                continue
            if injective:
                if used[v] != -1:
                    return False
                used[v] = u
            img[u] = v
            mapped.append(u)
            trail.append(u)
            for w in mapped:
                iw = img[w]
                work.append((PS[u][w], PT[v][iw]))
                work.append((PS[w][u], PT[iw][v]))
        return True

    def undo(trail):
        for u in reversed(trail):
            if injective:
                used[img[u]] = -1
            img[u] = -1
            mapped.pop()

    def rec(i):
        if i == len(gens):
            if onto and len(set(img)) != T.n:
                return
            yield Mapping(S, T, list(img))
            return
        x = gens[i]
        if img[x] != -1:
            yield from rec(i + 1)
            return
        for y in cands[x]:
            budget.spend()
            trail: list[int] = []
            if assign(x, y, trail):
                yield from rec(i + 1)
            undo(trail)

    yield from rec(0)


def find_homomorphism(S, T, budget=DEFAULT_BUDGET, *, onto=False, injective=False, generators=None):
    """First homomorphism S -> T with the requested properties, or None.

    Raises BudgetExceeded if the search is cut off before a definite answer.
    """
    b = budget if isinstance(budget, _Budget) else _Budget(budget)
    if onto and T.n > S.n:
        return None
    if injective and S.n > T.n:
        return None
    return next(_search(S, T, b, onto=onto, injective=injective, generators=generators), None)


def find_onto_homomorphism(S: CayleyTable, T: CayleyTable, budget=DEFAULT_BUDGET) -> Mapping | None:
    return find_homomorphism(S, T, budget, onto=True)


def find_embedding(T: CayleyTable, S: CayleyTable, budget=DEFAULT_BUDGET) -> Mapping | None:
    """An injective homomorphism T -> S, i.e. a copy of T inside S."""
    return find_homomorphism(T, S, budget, injective=True)


def find_isomorphism(S: CayleyTable, T: CayleyTable, budget=DEFAULT_BUDGET) -> Mapping | None:
    if S.n != T.n:
        return None
    return find_homomorphism(S, T, budget, injective=True)


def embeds(T: CayleyTable, S: CayleyTable, budget=DEFAULT_BUDGET) -> bool:
    return find_embedding(T, S, budget) is not None


@dataclass
class DivisorWitness:
    generators: tuple[int, ...]   # generator subset of S
    elements: list[int]           # the subsemigroup U of S they generate
    subsemigroup: CayleyTable     # U as a table (element i is elements[i])
    mapping: Mapping              # U onto T


def divisor_witness(T: CayleyTable, S: CayleyTable, budget=DEFAULT_BUDGET) -> DivisorWitness | None:
    """Find a subsemigroup U of S and a homomorphism of U onto T.

    Subsemigroups are enumerated as closures of generator subsets of size at
    most |T|, smallest subsets first, lexicographically within a size.  That
    bound is enough: if U maps onto T, choosing one preimage per element of T
    gives at most |T| elements whose closure still maps onto T.
    """
    b = budget if isinstance(budget, _Budget) else _Budget(budget)
    if T.n > S.n:
        return None
    seen: set[tuple[int, ...]] = set()
    for k in range(1, T.n + 1):
        for subset in itertools.combinations(range(S.n), k):
            b.spend()
            U = tuple(generated_subsemigroup(S, subset))
            if len(U) < T.n or U in seen:
                continue
            seen.add(U)
            sub = subtable(S, U, generators=subset)
            m = find_homomorphism(sub, T, b, onto=True, generators=sub.generators)
            if m is not None:
                return DivisorWitness(tuple(subset), list(U), sub, m)
    return None


def divides(T: CayleyTable, S: CayleyTable, budget=DEFAULT_BUDGET) -> bool:
    """True iff T is a homomorphic image of a subsemigroup of S."""
    return divisor_witness(T, S, budget) is not None


def verify_subdirect(S: CayleyTable, maps) -> bool:
    """True iff every map is an onto homomorphism out of S and together they separate points."""
    maps = list(maps)
    if not maps:
        return S.n <= 1
    for m in maps:
        if m.source is not S and not np.array_equal(m.source.product, S.product):
            raise ValueError("all maps must share the source table")
        if not (is_homomorphism(m) and is_onto(m)):
            return False
    images = np.stack([m.image_of for m in maps], axis=1)
    return len(np.unique(images, axis=0)) == S.n
