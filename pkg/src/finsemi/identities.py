"""Words, identities, and exhaustive satisfaction checks on finite tables."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .core import CayleyTable, index_periods, omega_plus_ones, omega_powers
from .errors import BadExponent, BudgetExceeded, CapExceeded, ParseError, UnboundVariable

DEFAULT_BUDGET = 10**7
MAX_ZIMIN = 20
_CHUNK = 1 << 20


@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...]

    def __post_init__(self):
        letters = tuple(int(x) for x in self.letters)
        if not letters:
            raise ValueError("words are nonempty")
        if min(letters) < 0:
            raise ValueError("variable ids are non-negative")
        object.__setattr__(self, "letters", letters)

    def __len__(self):
        return len(self.letters)

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __pow__(self, k: int) -> "Word":
        if k < 1:
            raise BadExponent("powers must be positive")
        return Word(self.letters * k)

    def variables(self) -> list[int]:
        return sorted(set(self.letters))

    def __str__(self):
        return format_word(self)


@dataclass(frozen=True)
class Identity:
    lhs: Word
    rhs: Word

    def variables(self) -> list[int]:
        return sorted(set(self.lhs.letters) | set(self.rhs.letters))

    def __str__(self):
        return f"{format_word(self.lhs)} = {format_word(self.rhs)}"


def var(i: int) -> Word:
    return Word((i,))


def format_word(w: Word) -> str:
    """Run-length form with 1-based names: x1 x2^3 x1."""
    out = []
    i = 0
    L = w.letters
    while i < len(L):
        j = i
        while j < len(L) and L[j] == L[i]:
            j += 1
        out.append(f"x{L[i] + 1}" + (f"^{j - i}" if j - i > 1 else ""))
        i = j
    return " ".join(out)


_TOKEN = re.compile(r"\s*(?:([A-Za-z])(\d*)(?:\^(\d+))?|(\S))")


def parse_word(text: str, names: dict | None = None) -> Word:
    """Parse juxtaposed variables with optional powers: "x1 x2^3 x1" or "xyx".

    ``x1, x2, ...`` map to ids 0, 1, ...; bare letters get fresh ids in order
    of appearance (shared through ``names`` when parsing an identity).
    """
    names = {} if names is None else names
    letters: list[int] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.group(4) is not None:
            bad = text[pos:].strip()[:1]
            raise ParseError(f"unexpected {bad!r} in word {text!r}")
        letter, digits, power = m.group(1), m.group(2), m.group(3)
        if digits:
            if int(digits) < 1:
                raise ParseError("variables are numbered from x1")
            vid = int(digits) - 1
        else:
            if letter not in names:
                names[letter] = 1000 + len(names)
            vid = names[letter]
        k = int(power) if power else 1
        if k < 1:
            raise BadExponent(f"exponent {k} in {text!r}")
        letters.extend([vid] * k)
        pos = m.end()
    if not letters:
        raise ParseError("empty word")
    return Word(tuple(letters))


def _densify(*words: Word) -> list[Word]:
    ids = sorted(set().union(*(w.letters for w in words)))
    ren = {v: i for i, v in enumerate(ids)}
    return [Word(tuple(ren[x] for x in w.letters)) for w in words]


def parse_identity(text: str) -> Identity:
    if text.count("=") != 1:
        raise ParseError("an identity needs exactly one '='")
    left, right = text.split("=")
    names: dict = {}
    lhs, rhs = parse_word(left, names), parse_word(right, names)
    if names:
        lhs, rhs = _densify(lhs, rhs)
    return Identity(lhs, rhs)


def evaluate(t: CayleyTable, w: Word, assignment) -> int:
    """Left-to-right product of the assigned values."""
    P = t.product
    missing = [x for x in set(w.letters) if x not in assignment] if isinstance(assignment, dict) else \
        [x for x in set(w.letters) if x >= len(assignment)]
    if missing:
        raise UnboundVariable(f"no value for variable x{min(missing) + 1}")
    values = [int(assignment[x]) for x in w.letters]
    acc = values[0]
    for v in values[1:]:
        acc = int(P[acc, v])
    return acc


def _evaluate_all(P: np.ndarray, w: Word, cols: np.ndarray) -> np.ndarray:
    acc = cols[w.letters[0]]
    for x in w.letters[1:]:
        acc = P[acc, cols[x]]
    return acc


def identity_witness(t: CayleyTable, ident: Identity, budget: int = DEFAULT_BUDGET) -> dict[int, int] | None:
    """First failing assignment (variable id -> element) in lexicographic order, or None."""
    k = max(ident.variables()) + 1
    total = t.n ** k
    if total > budget:
        raise BudgetExceeded(f"{t.n}^{k} = {total} assignments exceed the budget {budget}")
    P = t.product
    shape = (t.n,) * k
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK))
        cols = np.stack(np.unravel_index(idx, shape)) if k > 0 else np.empty((0, len(idx)), dtype=np.int64)
        bad = _evaluate_all(P, ident.lhs, cols) != _evaluate_all(P, ident.rhs, cols)
        if bad.any():
            j = int(np.argmax(bad))
            return {v: int(cols[v, j]) for v in ident.variables()}
    return None


def satisfies(t: CayleyTable, ident: Identity, budget: int = DEFAULT_BUDGET) -> bool:
    return identity_witness(t, ident, budget) is None


def periodicity_identity(m: int, k: int) -> Identity:
    """x^m = x^(m+k)."""
    if m < 1 or k < 1:
        raise BadExponent("need m, k >= 1")
    return Identity(var(0) ** m, var(0) ** (m + k))


def global_index_period(t: CayleyTable) -> tuple[int, int]:
    """Least m and k with x^m = x^(m+k) for every x."""
    ip = index_periods(t)
    m = int(ip[:, 0].max())
    k = reduce(math.lcm, (int(p) for p in ip[:, 1]), 1)
    return m, k


def gr_pseudoidentity_witness(t: CayleyTable) -> tuple[int, int] | None:
    """First (s, t) violating s^(w+1) t = (s^(w+1) t)^(w+1), or None."""
    w1 = omega_plus_ones(t)
    left = t.product[w1, :]
    bad = left != w1[left]
    if bad.any():
        s, u = np.unravel_index(int(np.argmax(bad)), bad.shape)
        return int(s), int(u)
    return None


def gr_pseudoidentity_holds(t: CayleyTable) -> bool:
    return gr_pseudoidentity_witness(t) is None


def separating_identity(u: Word, v: Word, n: int) -> Identity:
    """(x_1 ... x_m)^n u = (x_1 ... x_m)^n v over the variables of u and v."""
    if n < 2:
        raise BadExponent("the exponent must be at least 2")
    ids = sorted(set(u.letters) | set(v.letters))
    prefix = Word(tuple(ids)) ** n
    lhs, rhs = _densify(prefix + u, prefix + v)
    return Identity(lhs, rhs)


def zimin(n: int) -> Word:
    """Z_1 = x_1, Z_(n+1) = Z_n x_(n+1) Z_n."""
    if n < 1:
        raise BadExponent("Zimin words start at n = 1")
    if n > MAX_ZIMIN:
        raise CapExceeded(f"Zimin word Z_{n} has length 2^{n}-1; limit is n = {MAX_ZIMIN}")
    letters = [0]
    for i in range(1, n):
        letters = letters + [i] + letters
    return Word(tuple(letters))


def omega_map_witness(t: CayleyTable) -> tuple[int, int] | None:
    """First (s, t) with (st)^w != s^w t^w, or None."""
    w = omega_powers(t)
    bad = w[t.product] != t.product[np.ix_(w, w)]
    if bad.any():
        s, u = np.unravel_index(int(np.argmax(bad)), bad.shape)
        return int(s), int(u)
    return None


def omega_map_is_homomorphism(t: CayleyTable) -> bool:
    return omega_map_witness(t) is None
