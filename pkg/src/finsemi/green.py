"""Green's relations R, L, J, H, D on finite tables.

R, L and J are strongly connected components of Cayley graphs of S^1
(right, left, and two-sided multiplication by generators).  H is the meet of
R and L, D their join.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .core import (
    CayleyTable,
    cached,
    group_elements,
    quotient_by_partition,
    subtable,
)
from .errors import DNotCongruence, NotACongruence, NotCompletelyRegular

RELATIONS = ("R", "L", "J", "H", "D")


@dataclass(frozen=True)
class GreenPartition:
    relation: str
    class_of: np.ndarray
    class_count: int

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.class_count)]
        for x, c in enumerate(self.class_of.tolist()):
            out[c].append(x)
        return out

    def related(self, x: int, y: int) -> bool:
        return bool(self.class_of[x] == self.class_of[y])


def canonical_labels(labels) -> np.ndarray:
    """Renumber class ids 0, 1, ... in order of first occurrence."""
    labels = np.asarray(labels)
    _, first, inv = np.unique(labels, return_index=True, return_inverse=True)
    rank = np.empty(len(first), dtype=np.int64)
    rank[np.argsort(first)] = np.arange(len(first))
    return rank[inv.ravel()]


def _multipliers(t: CayleyTable) -> list[int]:
    return list(t.generators) if t.generators else list(range(t.n))


def _scc(n: int, src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    graph = csr_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n))
    _, labels = connected_components(graph, directed=True, connection="strong")
    return canonical_labels(labels)


def _right_edges(t, gens):
    src = np.repeat(np.arange(t.n), len(gens))
    dst = t.product[:, gens].ravel()
    return src, dst


def _left_edges(t, gens):
    src = np.repeat(np.arange(t.n), len(gens))
    dst = t.product[gens, :].T.ravel()
    return src, dst


def _compute(t: CayleyTable, relation: str) -> np.ndarray:
    gens = _multipliers(t)
    if relation == "R":
        return _scc(t.n, *_right_edges(t, gens))
    if relation == "L":
        return _scc(t.n, *_left_edges(t, gens))
    if relation == "J":
        rs, rd = _right_edges(t, gens)
        ls, ld = _left_edges(t, gens)
        return _scc(t.n, np.concatenate([rs, ls]), np.concatenate([rd, ld]))
    r = green_classes(t, "R").class_of
    l = green_classes(t, "L").class_of
    if relation == "H":
        return canonical_labels(r * (l.max() + 1) + l)
    if relation == "D":
        # join of R and L: components of the bipartite graph R-class -- L-class
        nr = int(r.max()) + 1
        nl = int(l.max()) + 1
        g = csr_matrix((np.ones(t.n, dtype=np.int8), (r, nr + l)), shape=(nr + nl, nr + nl))
        _, comp = connected_components(g, directed=False)
        return canonical_labels(comp[r])
    raise ValueError(f"unknown Green relation {relation!r}")


def green_classes(t: CayleyTable, relation: str) -> GreenPartition:
    """Partition of ``t`` into classes of one Green relation."""
    relation = relation.upper()
    if relation not in RELATIONS:
        raise ValueError(f"unknown Green relation {relation!r}")

    def build():
        cls = _compute(t, relation)
        cls.setflags(write=False)
        return GreenPartition(relation, cls, int(cls.max()) + 1)

    return cached(t, ("green", relation), build)


def class_counts(t: CayleyTable) -> dict[str, int]:
    return {rel: green_classes(t, rel).class_count for rel in RELATIONS}


def format_counts(counts: dict[str, int]) -> str:
    return " ".join(f"{rel}={counts[rel]}" for rel in RELATIONS)


def same_partition(a, b) -> bool:
    return bool(np.array_equal(canonical_labels(a), canonical_labels(b)))


def check_d_equals_j(t: CayleyTable) -> bool:
    return same_partition(green_classes(t, "D").class_of, green_classes(t, "J").class_of)


def is_completely_regular(t: CayleyTable) -> bool:
    return len(group_elements(t)) == t.n


def is_completely_simple(t: CayleyTable) -> bool:
    return is_completely_regular(t) and green_classes(t, "D").class_count == 1


@dataclass
class CliffordDecomposition:
    semilattice: CayleyTable
    component_of: np.ndarray
    components: list[CayleyTable]
    members: list[list[int]]


def clifford_decomposition(t: CayleyTable) -> CliffordDecomposition:
    """Split a completely regular table into its semilattice of D-classes.

    Each component is returned as the subtable on one D-class, which must be
    completely simple.
    """
    if not is_completely_regular(t):
        raise NotCompletelyRegular("table is not a union of groups")
    D = green_classes(t, "D")
    try:
        Y = quotient_by_partition(t, D.class_of)
    except NotACongruence as exc:
        raise DNotCongruence(str(exc)) from exc
    members = D.classes()
    components = [subtable(t, m) for m in members]
    if not (np.array_equal(Y.product, Y.product.T) and np.array_equal(np.diag(Y.product), np.arange(Y.n))):
        raise DNotCongruence("S/D is not a semilattice")
    for comp in components:
        if not is_completely_simple(comp):
            raise DNotCongruence("a D-class is not completely simple")
    return CliffordDecomposition(Y, D.class_of.copy(), components, members)


@dataclass
class EggBox:
    d_class: int
    r_classes: list[int]
    l_classes: list[int]
    cells: list[list[list[int]]]  # cells[i][j] = H-class at (r_classes[i], l_classes[j])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.r_classes), len(self.l_classes)

    def render(self, t: CayleyTable) -> str:
        text = [[" ".join(t.label(x) for x in cell) or "-" for cell in row] for row in self.cells]
        width = max(len(s) for row in text for s in row)
        return "\n".join(" | ".join(s.ljust(width) for s in row) for row in text)


def egg_box(t: CayleyTable, d_class: int) -> EggBox:
    """Grid of the H-classes inside one D-class, rows by R, columns by L."""
    D = green_classes(t, "D").class_of
    if not 0 <= d_class <= D.max():
        raise ValueError(f"no D-class {d_class}")
    R = green_classes(t, "R").class_of
    L = green_classes(t, "L").class_of
    members = np.flatnonzero(D == d_class)
    rows = list(dict.fromkeys(R[members].tolist()))
    cols = list(dict.fromkeys(L[members].tolist()))
    cells = [[[] for _ in cols] for _ in rows]
    rpos = {r: i for i, r in enumerate(rows)}
    cpos = {c: j for j, c in enumerate(cols)}
    for x in members.tolist():
        cells[rpos[int(R[x])]][cpos[int(L[x])]].append(x)
    return EggBox(d_class, rows, cols, cells)
