"""Small finite groups and their subgroup machinery."""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import lru_cache, reduce

import numpy as np

from .core import INDEX_DTYPE, CayleyTable, direct_product, generated_subsemigroup, minimal_generating_set
from .errors import CapExceeded, NotNormal, ParseError

MAX_SYMMETRIC_DEGREE = 5


@dataclass(eq=False)
class FiniteGroup:
    """A group table with its identity and inverse map.

    ``elements`` holds the underlying objects (residues, permutations as
    one-line tuples, or index pairs for products); ``kind`` records how to
    parse element names.
    """

    table: CayleyTable
    identity: int
    inverse: np.ndarray
    name: str = "G"
    kind: str = "abstract"
    elements: list | None = None
    factors: tuple["FiniteGroup", ...] = ()

    @property
    def order(self) -> int:
        return self.table.n

    def mul(self, a: int, b: int) -> int:
        return int(self.table.product[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def label(self, a: int) -> str:
        return self.table.label(a)

    def element_order(self, a: int) -> int:
        k, p = 1, int(a)
        while p != self.identity:
            p = self.mul(p, a)
            k += 1
        return k

    @property
    def exponent(self) -> int:
        return reduce(math.lcm, (self.element_order(a) for a in range(self.order)), 1)

    def is_abelian(self) -> bool:
        P = self.table.product
        return bool(np.array_equal(P, P.T))

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


def group_from_table(table: CayleyTable, name="G", **kw) -> FiniteGroup:
    e = table.identity
    if e is None:
        raise ValueError("table has no identity")
    P = table.product
    inverse = np.full(table.n, -1, dtype=np.int64)
    for a in range(table.n):
        hits = np.flatnonzero((P[a] == e) & (P[:, a] == e))
        if len(hits) == 0:
            raise ValueError(f"element {a} has no inverse")
        inverse[a] = hits[0]
    return FiniteGroup(table, e, inverse, name=name, **kw)


@lru_cache(maxsize=None)
def cyclic(n: int) -> FiniteGroup:
    """Z_n on residues 0..n-1 under addition.

    Groups are cached, so equal calls share one object (and its subgroups compare equal).
    """
    if n < 1:
        raise ValueError("cyclic group order must be >= 1")
    r = np.arange(n)
    P = (r[:, None] + r[None, :]) % n
    table = CayleyTable._trusted(P, generators=[1 % n], labels=[str(i) for i in range(n)])
    return FiniteGroup(table, 0, (-r) % n, name=f"C{n}", kind="cyclic", elements=list(range(n)))


def perm_label(p: tuple[int, ...]) -> str:
    """Compact 1-based cycle notation, 'e' for the identity."""
    seen, out = set(), []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(x + 1)
            x = p[x]
        sep = "" if len(p) < 10 else " "
        out.append("(" + sep.join(str(c) for c in cyc) + ")")
    return "".join(out) or "e"


def parse_cycles(text: str, degree: int) -> tuple[int, ...]:
    text = text.strip()
    if text in ("e", "()", "1"):
        return tuple(range(degree))
    if not re.fullmatch(r"(\([\d\s,]*\))+", text):
        raise ParseError(f"not a permutation in cycle notation: {text!r}")
    p = list(range(degree))
    # cycles compose right to left, matching the group multiplication
    for body in reversed(re.findall(r"\(([^)]*)\)", text)):
        parts = re.split(r"[\s,]+", body.strip())
        if len(parts) == 1 and degree < 10:
            parts = list(parts[0])
        pts = [int(c) - 1 for c in parts if c]
        if any(not 0 <= x < degree for x in pts) or len(set(pts)) != len(pts):
            raise ParseError(f"bad cycle ({body}) for degree {degree}")
        cyc = {pts[i]: pts[(i + 1) % len(pts)] for i in range(len(pts))}
        p = [cyc.get(p[x], p[x]) for x in range(degree)]
    return tuple(p)


@lru_cache(maxsize=None)
def symmetric(n: int) -> FiniteGroup:
    """S_n on one-line permutations in lexicographic order.

    The product is composition with the right factor applied first:
    (p*q)(x) = p(q(x)).
    """
    if n < 1:
        raise ValueError("degree must be >= 1")
    if n > MAX_SYMMETRIC_DEGREE:
        raise CapExceeded(f"symmetric groups are capped at degree {MAX_SYMMETRIC_DEGREE}")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    arr = np.array(perms, dtype=np.int64)          # arr[i, x] = perms[i](x)
    m = len(perms)
    # composed[i, j, x] = perms[i][perms[j][x]]
    composed = arr[np.arange(m)[:, None, None], arr[None, :, :]]
    weights = n ** np.arange(n)
    code_to_index = {int(c): i for i, c in enumerate(arr @ weights)}
    P = np.vectorize(code_to_index.__getitem__)(composed @ weights).astype(INDEX_DTYPE)
    inverse = np.empty(m, dtype=np.int64)
    for i, p in enumerate(perms):
        inv = [0] * n
        for x, y in enumerate(p):
            inv[y] = x
        inverse[i] = index[tuple(inv)]
    gens = []
    if n >= 2:
        gens.append(index[parse_cycles("(12)", n)])
    if n >= 3:
        gens.append(index[parse_cycles("(" + "".join(str(i) for i in range(1, n + 1)) + ")", n)])
    if not gens:
        gens = [0]
    table = CayleyTable._trusted(P, generators=gens, labels=[perm_label(p) for p in perms])
    return FiniteGroup(table, 0, inverse, name=f"S{n}", kind="symmetric", elements=perms)


def group_product(G1: FiniteGroup, G2: FiniteGroup) -> FiniteGroup:
    """G1 x G2 on pairs (a, b), pair index a * |G2| + b."""
    table = direct_product(G1.table, G2.table)
    gens = minimal_generating_set(table)
    table = table.with_generators(gens)
    inverse = np.array([G1.inv(a) * G2.order + G2.inv(b) for a in range(G1.order) for b in range(G2.order)])
    return FiniteGroup(
        table,
        G1.identity * G2.order + G2.identity,
        inverse,
        name=f"{G1.name}*{G2.name}",
        kind="product",
        elements=[(a, b) for a in range(G1.order) for b in range(G2.order)],
        factors=(G1, G2),
    )


def resolve_element(G: FiniteGroup, text: str) -> int:
    """Element index from its name: 'e', a label, a residue, or cycle notation."""
    text = text.strip()
    if text == "e":
        return G.identity
    if G.table.labels is not None and text in G.table.labels:
        return G.table.labels.index(text)
    if G.kind == "cyclic" and re.fullmatch(r"-?\d+", text):
        return int(text) % G.order
    if G.kind == "symmetric":
        return G.elements.index(parse_cycles(text, len(G.elements[0])))
    if G.kind == "product" and text.startswith("(") and text.endswith(")"):
        parts = split_top_level(text[1:-1], ",")
        if len(parts) == 2:
            a = resolve_element(G.factors[0], parts[0])
            b = resolve_element(G.factors[1], parts[1])
            return a * G.factors[1].order + b
    raise ParseError(f"cannot resolve {text!r} as an element of {G.name}")


def split_top_level(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


# ---------------------------------------------------------------- subgroups

@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    members: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, g) -> bool:
        return int(g) in self._set

    @property
    def _set(self) -> frozenset:
        return frozenset(self.members)

    def __eq__(self, other):
        return isinstance(other, Subgroup) and other.parent is self.parent and other.members == self.members

    def __hash__(self):
        return hash(self.members)

    def __le__(self, other: "Subgroup") -> bool:
        return self._set <= other._set

    def index(self) -> int:
        return self.parent.order // self.order

    def __repr__(self):
        return "{" + ",".join(self.parent.label(m) for m in self.members) + "}"


def subgroup_generated(G: FiniteGroup, seeds) -> Subgroup:
    seeds = [int(s) for s in seeds] + [G.identity]
    # a finite subsemigroup of a group is a subgroup
    return Subgroup(G, tuple(generated_subsemigroup(G.table, seeds)))


def as_subgroup(G: FiniteGroup, H) -> Subgroup:
    """Accept a Subgroup, or any iterable of elements (closed up)."""
    if isinstance(H, Subgroup):
        if H.parent is not G:
            raise ValueError("subgroup belongs to a different group")
        return H
    return subgroup_generated(G, H)


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (G.identity,))


def whole_group(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)))


def conjugate_subgroup(G: FiniteGroup, H, y: int) -> Subgroup:
    """y H y^-1."""
    H = as_subgroup(G, H)
    yi = G.inv(y)
    return Subgroup(G, tuple(sorted({G.mul(G.mul(y, h), yi) for h in H.members})))


def intersect(*subgroups: Subgroup) -> Subgroup:
    if not subgroups:
        raise ValueError("need at least one subgroup")
    common = set(subgroups[0].members)
    for H in subgroups[1:]:
        common &= set(H.members)
    return Subgroup(subgroups[0].parent, tuple(sorted(common)))


def is_subgroup(G: FiniteGroup, members) -> bool:
    members = set(int(m) for m in members)
    if G.identity not in members:
        return False
    return all(G.mul(a, b) in members for a in members for b in members)


def left_cosets(G: FiniteGroup, H) -> list[tuple[int, ...]]:
    """Left cosets gH, each sorted, ordered by minimal representative."""
    H = as_subgroup(G, H)
    seen, out = set(), []
    for g in range(G.order):
        if g in seen:
            continue
        coset = tuple(sorted(G.mul(g, h) for h in H.members))
        seen.update(coset)
        out.append(coset)
    return out


def right_cosets(G: FiniteGroup, H) -> list[tuple[int, ...]]:
    """Right cosets Hg, each sorted, ordered by minimal representative."""
    H = as_subgroup(G, H)
    seen, out = set(), []
    for g in range(G.order):
        if g in seen:
            continue
        coset = tuple(sorted(G.mul(h, g) for h in H.members))
        seen.update(coset)
        out.append(coset)
    return out


def coset_lookup(G: FiniteGroup, cosets) -> np.ndarray:
    """Array mapping each group element to the index of its coset."""
    where = np.full(G.order, -1, dtype=np.int64)
    for i, c in enumerate(cosets):
        where[list(c)] = i
    return where


def is_normal(G: FiniteGroup, H) -> bool:
    H = as_subgroup(G, H)
    return all(conjugate_subgroup(G, H, y) == H for y in range(G.order))


def core(G: FiniteGroup, H) -> Subgroup:
    """The largest normal subgroup inside H: the intersection of its conjugates."""
    H = as_subgroup(G, H)
    return intersect(*(conjugate_subgroup(G, H, y) for y in range(G.order)))


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, as joins of cyclic subgroups, sorted by (order, members)."""
    found = {subgroup_generated(G, [g]).members for g in range(G.order)}
    frontier = set(found)
    while frontier:
        new = set()
        for a in frontier:
            for b in found:
                j = subgroup_generated(G, a + b).members
                if j not in found and j not in new:
                    new.add(j)
        found |= new
        frontier = new
    return [Subgroup(G, m) for m in sorted(found, key=lambda m: (len(m), m))]


def quotient_group(G: FiniteGroup, N) -> tuple[FiniteGroup, np.ndarray]:
    """G/N on cosets ordered by minimal representative, with the projection."""
    N = as_subgroup(G, N)
    if not is_normal(G, N):
        raise NotNormal(f"{N!r} is not normal in {G.name}")
    cosets = left_cosets(G, N)
    proj = coset_lookup(G, cosets)
    reps = [c[0] for c in cosets]
    k = len(cosets)
    P = np.array([[proj[G.mul(reps[i], reps[j])] for j in range(k)] for i in range(k)], dtype=INDEX_DTYPE)
    gens = sorted({int(proj[g]) for g in (G.table.generators or range(G.order))})
    labels = [f"[{G.label(r)}]" for r in reps]
    table = CayleyTable._trusted(P, generators=gens, labels=labels)
    quotient = group_from_table(table, name=f"{G.name}/N")
    return quotient, proj
