"""Named semigroups: the three-element N_2 family, coset attachments, Rees matrices."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_CAP, INDEX_DTYPE, CayleyTable
from .errors import CapExceeded, UnknownName
from .groups import (
    FiniteGroup,
    as_subgroup,
    coset_lookup,
    left_cosets,
    right_cosets,
    trivial_subgroup,
    whole_group,
)

# element order e, a, 0 for the N_2 family
_E, _A, _Z = 0, 1, 2

_SMALL = {
    # e*e, e*a, a*e ; everything else is 0
    "N2_1": (_E, _A, _A),
    "N2_l": (_E, _A, _Z),
    "N2_r": (_E, _Z, _A),
}

SMALL_NAMES = ("N2", "N2_1", "N2_l", "N2_r", "L2", "R2", "trivial")


def named_small(name: str) -> CayleyTable:
    """The small semigroups used throughout: N2, N2_1, N2_l, N2_r, L2, R2, trivial."""
    if name in _SMALL:
        ee, ea, ae = _SMALL[name]
        P = np.full((3, 3), _Z, dtype=INDEX_DTYPE)
        P[_E, _E], P[_E, _A], P[_A, _E] = ee, ea, ae
        return CayleyTable._trusted(P, generators=[_E, _A], labels=["e", "a", "0"])
    if name == "N2":
        return CayleyTable._trusted([[1, 1], [1, 1]], generators=[0], labels=["a", "0"])
    if name == "L2":
        return CayleyTable._trusted([[0, 0], [1, 1]], generators=[0, 1], labels=["p", "q"])
    if name == "R2":
        return CayleyTable._trusted([[0, 1], [0, 1]], generators=[0, 1], labels=["p", "q"])
    if name == "trivial":
        return CayleyTable._trusted([[0]], generators=[0], labels=["e"])
    raise UnknownName(f"unknown small semigroup {name!r}; expected one of {', '.join(SMALL_NAMES)}")


def _group_block(G: FiniteGroup, size: int) -> np.ndarray:
    P = np.empty((size, size), dtype=INDEX_DTYPE)
    P[: G.order, : G.order] = G.table.product
    return P


def _group_gens(G: FiniteGroup) -> list[int]:
    return list(G.table.generators) if G.table.generators else list(range(G.order))


def _attach(G: FiniteGroup, H, side: str, flat: bool, coset_label=None) -> CayleyTable:
    H = as_subgroup(G, H)
    cosets = left_cosets(G, H) if side == "L" else right_cosets(G, H)
    where = coset_lookup(G, cosets)
    g, c = G.order, len(cosets)
    n = g + c + (1 if flat else 0)
    zero = n - 1
    P = _group_block(G, n)
    reps = np.array([cs[0] for cs in cosets])
    GP = G.table.product
    ci = np.arange(c)
    if side == "L":
        # g1 (g2 H) = g1 g2 H ; (g1 H) g2 = g1 H
        P[:g, g:g + c] = g + where[GP[:, reps]]
        P[g:g + c, :g] = (g + ci)[:, None]
        P[g:g + c, g:g + c] = zero if flat else (g + ci)[:, None]
    else:
        # (H g1) g2 = H g1 g2 ; g1 (H g2) = H g2
        P[g:g + c, :g] = g + where[GP[reps, :]]
        P[:g, g:g + c] = (g + ci)[None, :]
        P[g:g + c, g:g + c] = zero if flat else (g + ci)[None, :]
    if flat:
        P[zero, :] = zero
        P[:, zero] = zero
    if coset_label is None:
        fmt = "{}H" if side == "L" else "H{}"
        coset_label = [fmt.format(G.label(r)) for r in reps]
    labels = [G.label(x) for x in range(g)] + list(coset_label)
    if flat:
        labels.append("0" if "0" not in labels else "z")
    # the coset H itself together with generators of G generates everything
    gens = _group_gens(G) + [g + int(where[G.identity])]
    return CayleyTable._trusted(P, generators=gens, labels=labels)


def l_coset_semigroup(G: FiniteGroup, H=None) -> CayleyTable:
    """L_H(G): G followed by its left cosets of H, which act as left zeros.

    Cosets are fresh elements even for the trivial subgroup, so |L(G)| = 2|G|.
    """
    return _attach(G, trivial_subgroup(G) if H is None else H, "L", flat=False)


def r_coset_semigroup(G: FiniteGroup, H=None) -> CayleyTable:
    """R_H(G): G followed by its right cosets of H, which act as right zeros."""
    return _attach(G, trivial_subgroup(G) if H is None else H, "R", flat=False)


def l_flat(G: FiniteGroup, H=None) -> CayleyTable:
    """The flat variant of L_H(G): coset products become a fresh zero (last element)."""
    return _attach(G, trivial_subgroup(G) if H is None else H, "L", flat=True)


def r_flat(G: FiniteGroup, H=None) -> CayleyTable:
    return _attach(G, trivial_subgroup(G) if H is None else H, "R", flat=True)


def l_flat_full(G: FiniteGroup) -> CayleyTable:
    """G with a single coset c and a zero: gc = cg = c, every other product 0."""
    return _attach(G, whole_group(G), "L", flat=True, coset_label=["c"])


@dataclass(frozen=True, eq=False)
class ReesSpec:
    group: FiniteGroup
    I: int
    Lam: int
    P: tuple[tuple[int, ...], ...]  # Lam x I sandwich matrix of group elements

    def __post_init__(self):
        if self.I < 1 or self.Lam < 1:
            raise ValueError("index sets must be non-empty")
        P = tuple(tuple(int(x) for x in row) for row in self.P)
        if len(P) != self.Lam or any(len(row) != self.I for row in P):
            raise ValueError(f"sandwich matrix must be {self.Lam} x {self.I}")
        if any(not 0 <= x < self.group.order for row in P for x in row):
            raise ValueError("sandwich matrix entry is not a group element")
        object.__setattr__(self, "P", P)


def rees_index(spec: ReesSpec, i: int, g: int, lam: int) -> int:
    return (i * spec.group.order + g) * spec.Lam + lam


def rees_matrix(spec: ReesSpec, cap: int = DEFAULT_CAP) -> CayleyTable:
    """M(G; I, Lam; P) on triples (i, g, lam) in lexicographic order.

    (i, g, lam)(j, h, mu) = (i, g p[lam][j] h, mu)
    """
    G = spec.group
    n = spec.I * G.order * spec.Lam
    if n > cap:
        raise CapExceeded(f"Rees matrix semigroup of size {n} exceeds cap {cap}")
    ii, gg, ll = np.unravel_index(np.arange(n), (spec.I, G.order, spec.Lam))
    GP = G.table.product
    S = np.array(spec.P, dtype=np.int64)
    middle = GP[GP[gg[:, None], S[ll[:, None], ii[None, :]]], gg[None, :]]
    P = (ii[:, None] * G.order + middle) * spec.Lam + ll[None, :]
    labels = [f"({i},{G.label(g)},{l})" for i, g, l in zip(ii.tolist(), gg.tolist(), ll.tolist())]
    return CayleyTable._trusted(P, labels=labels)
