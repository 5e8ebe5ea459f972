"""A small language naming tables, used by ``finsemi construct``.

    expr     := factor ( " x " factor )*            direct product
    factor   := SMALL | group | call
    SMALL    := N2 | N2_1 | N2_l | N2_r | L2 | R2 | trivial
    group    := gatom ( "*" gatom )*                 C6, S3, C2*C3 (a group is its own table)
    gatom    := C<n> | Z<n> | S<n>
    call     := L(group[, sub]) | R(group[, sub]) | Lflat(group[, sub]) | Rflat(group[, sub])
              | LflatFull(group) | Rees(group, I, Lam, matrix) | dual(expr) | monoid(expr)
    sub      := {g, ...}     listed elements, must already form a subgroup
              | <g, ...>     subgroup generated by the elements
    matrix   := [[g, ...], ...]                      Lam rows of I entries

Group elements are written as residues (C6: 0..5), cycles (S3: e, (12), (123))
or pairs for products ((1,(12))).
"""
from __future__ import annotations

import re

from .constructions import (
    SMALL_NAMES,
    ReesSpec,
    l_coset_semigroup,
    l_flat,
    l_flat_full,
    named_small,
    r_coset_semigroup,
    r_flat,
    rees_matrix,
)
from .core import DEFAULT_CAP, CayleyTable, adjoin_identity, direct_product
from .errors import ParseError
from .groups import (
    FiniteGroup,
    Subgroup,
    cyclic,
    group_product,
    is_subgroup,
    resolve_element,
    split_top_level,
    subgroup_generated,
    symmetric,
)
from .morphisms import dual_table

_GATOM = re.compile(r"([CZS])(\d+)")
_CALL = re.compile(r"([A-Za-z][A-Za-z0-9_]*)\((.*)\)", re.S)


def _split_product(text: str) -> list[str]:
    parts, depth, start = [], 0, 0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in "([{<":
            depth += 1
        elif ch in ")]}>":
            depth -= 1
        elif depth == 0 and (ch == "×" or (ch == "x" and text[i - 1:i].isspace() and text[i + 1:i + 2].isspace())):
            parts.append(text[start:i])
            start = i + 1
        i += 1
    parts.append(text[start:])
    return [p.strip() for p in parts]


def parse_group(text: str) -> FiniteGroup:
    atoms = split_top_level(text.strip(), "*")
    groups = []
    for atom in atoms:
        m = _GATOM.fullmatch(atom)
        if m is None:
            raise ParseError(f"not a group: {atom!r} (use C<n>, Z<n> or S<n>)")
        kind, n = m.group(1), int(m.group(2))
        if n < 1:
            raise ParseError(f"group order must be positive in {atom!r}")
        groups.append(symmetric(n) if kind == "S" else cyclic(n))
    G = groups[0]
    for H in groups[1:]:
        G = group_product(G, H)
    return G


def _elements(G: FiniteGroup, body: str) -> list[int]:
    body = body.strip()
    if not body:
        return []
    return [resolve_element(G, s) for s in split_top_level(body, ",")]


def parse_subgroup(G: FiniteGroup, text: str) -> Subgroup:
    text = text.strip()
    if text.startswith("{") and text.endswith("}"):
        members = set(_elements(G, text[1:-1])) or {G.identity}
        if not is_subgroup(G, members):
            raise ParseError(f"{text} is not a subgroup of {G.name}")
        return subgroup_generated(G, members)
    if text.startswith("<") and text.endswith(">"):
        return subgroup_generated(G, _elements(G, text[1:-1]))
    raise ParseError(f"subgroups are written {{...}} or <...>, got {text!r}")


def _matrix(G: FiniteGroup, text: str) -> list[list[int]]:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError(f"sandwich matrix must be [[...], ...], got {text!r}")
    rows = []
    for row in split_top_level(text[1:-1], ","):
        if not (row.startswith("[") and row.endswith("]")):
            raise ParseError(f"matrix row must be [...], got {row!r}")
        rows.append(_elements(G, row[1:-1]))
    return rows


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {text!r}") from None


_ATTACH = {"L": l_coset_semigroup, "R": r_coset_semigroup, "Lflat": l_flat, "Rflat": r_flat}


def _call(name: str, args: list[str], cap: int) -> CayleyTable:
    if name in _ATTACH:
        if len(args) not in (1, 2):
            raise ParseError(f"{name} takes a group and an optional subgroup")
        G = parse_group(args[0])
        H = parse_subgroup(G, args[1]) if len(args) == 2 else None
        return _ATTACH[name](G, H)
    if name == "LflatFull":
        if len(args) != 1:
            raise ParseError("LflatFull takes a group")
        return l_flat_full(parse_group(args[0]))
    if name == "Rees":
        if len(args) != 4:
            raise ParseError("Rees takes (group, I, Lam, matrix)")
        G = parse_group(args[0])
        try:
            spec = ReesSpec(G, _int(args[1], "I"), _int(args[2], "Lam"), _matrix(G, args[3]))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        return rees_matrix(spec, cap)
    if name == "dual":
        if len(args) != 1:
            raise ParseError("dual takes one table")
        return dual_table(parse_construction(args[0], cap))
    if name == "monoid":
        if len(args) != 1:
            raise ParseError("monoid takes one table")
        return adjoin_identity(parse_construction(args[0], cap))
    raise ParseError(f"unknown construction {name!r}")


def _factor(text: str, cap: int) -> CayleyTable:
    if not text:
        raise ParseError("empty expression")
    if text in SMALL_NAMES:
        return named_small(text)
    m = _CALL.fullmatch(text)
    if m is not None and m.group(1) in (*_ATTACH, "LflatFull", "Rees", "dual", "monoid"):
        return _call(m.group(1), split_top_level(m.group(2), ","), cap)
    if m is not None:
        raise ParseError(f"unknown construction {m.group(1)!r}")
    return parse_group(text).table


def parse_construction(text: str, cap: int = DEFAULT_CAP) -> CayleyTable:
    """Build the table named by ``text`` (grammar in the module docstring)."""
    parts = _split_product(text.strip())
    t = _factor(parts[0], cap)
    for p in parts[1:]:
        t = direct_product(t, _factor(p, cap), cap)
    return t
