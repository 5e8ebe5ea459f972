"""Square-free words from an r x r letter matrix, r = 6k + 2, and the nilsemigroup of their factors.

Letters a_ij (1 <= i, j <= r) are stored as integer ids (i-1)*r + (j-1).
Row and column numbers stay 1-based everywhere in this module; only the id
encoding is 0-based.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .core import INDEX_DTYPE, CayleyTable
from .errors import BadIndex, CapExceeded, NotAFactor

MAX_WORD_LENGTH = 10**6
DEFAULT_TABLE_CAP = 50_000


def order_r(k: int) -> int:
    if k < 1:
        raise BadIndex("k must be at least 1")
    return 6 * k + 2


def letter(k: int, i: int, j: int) -> int:
    r = order_r(k)
    if not (1 <= i <= r and 1 <= j <= r):
        raise BadIndex(f"a_{i}_{j} is outside the {r} x {r} alphabet")
    return (i - 1) * r + (j - 1)


def letter_indices(k: int, a: int) -> tuple[int, int]:
    r = order_r(k)
    return a // r + 1, a % r + 1


def format_letter(k: int, a: int) -> str:
    i, j = letter_indices(k, a)
    return f"a_{i}_{j}"


def format_word(k: int, w, sep: str = " ") -> str:
    return sep.join(format_letter(k, int(a)) for a in w)


def parse_word(k: int, text: str) -> np.ndarray:
    out = []
    for tok in text.replace(".", " ").split():
        parts = tok.split("_")
        if len(parts) != 3 or parts[0] != "a":
            raise BadIndex(f"not a letter: {tok!r}")
        out.append(letter(k, int(parts[1]), int(parts[2])))
    return np.array(out, dtype=np.int64)


def _rows(k: int) -> np.ndarray:
    """All r^2 rows of the letter matrix at once, as an (r^2, r) array of ids."""
    r = order_r(k)
    t = np.arange(1, r * r + 1)[:, None]
    c = np.arange(1, r + 1)[None, :]
    i = np.where(c % 2 == 1, -(-t // r), (t - 1) % r + 1)
    return (i - 1) * r + (c - 1)


def matrix_row(k: int, t: int) -> np.ndarray:
    """Row t (1-based) of the matrix: odd columns use row ceil(t/r), even ones ((t-1) mod r) + 1."""
    r = order_r(k)
    if not 1 <= t <= r * r:
        raise BadIndex(f"row {t} outside 1..{r * r}")
    return _rows(k)[t - 1]


def gamma(k: int, w, max_length: int = MAX_WORD_LENGTH) -> np.ndarray:
    """Substitute each letter a_ij by row (i-1)r + j of the matrix."""
    r = order_r(k)
    w = np.asarray(w, dtype=np.int64)
    if len(w) * r > max_length:
        raise CapExceeded(f"image of length {len(w) * r} exceeds {max_length}")
    return _rows(k)[w].ravel()


def gamma_power(k: int, m: int, max_length: int = MAX_WORD_LENGTH) -> np.ndarray:
    """gamma applied m times to a_11 (m = 0 gives the letter itself)."""
    if m < 0:
        raise BadIndex("m must be non-negative")
    w = np.array([letter(k, 1, 1)], dtype=np.int64)
    for _ in range(m):
        w = gamma(k, w, max_length)
    return w


def square_witness(w) -> tuple[int, int] | None:
    """(start, p) of the first square uu with |u| = p (shortest p first), or None.

    A square of period p is a run of at least p positions where w[i] == w[i+p].
    """
    w = np.asarray(w)
    n = len(w)
    for p in range(1, n // 2 + 1):
        eq = np.concatenate(([False], w[:-p] == w[p:], [False])).astype(np.int8)
        d = np.diff(eq)
        starts = np.flatnonzero(d == 1)
        ends = np.flatnonzero(d == -1)
        long = np.flatnonzero(ends - starts >= p)
        if len(long):
            return int(starts[long[0]]), p
    return None


def is_square_free(w) -> bool:
    return square_witness(w) is None


# ---------------------------------------------------------------- factor sets
#
# A factor of length l is encoded as the base-B number with digits (id + 1),
# B = r^2 + 1, so words of different lengths never collide and
# key(uv) = key(u) * B^|v| + key(v).

@dataclass(frozen=True, eq=False)
class FactorSet:
    k: int
    L: int
    keys: np.ndarray        # int64, ordered by (length, key)
    lengths: np.ndarray     # int64, parallel to keys
    stabilized_at: int

    def __len__(self):
        return len(self.keys)

    @property
    def base(self) -> int:
        return order_r(self.k) ** 2 + 1

    def index_of(self, word) -> int | None:
        key = _encode(self.k, word)
        if key is None:
            return None
        pos = np.searchsorted(self._sorted, key)
        if pos < len(self._sorted) and self._sorted[pos] == key:
            return int(self._order[pos])
        return None

    def __contains__(self, word) -> bool:
        return self.index_of(word) is not None

    def word(self, idx: int) -> np.ndarray:
        return _decode(self.base, int(self.keys[idx]), int(self.lengths[idx]))

    def words(self) -> list[tuple[int, ...]]:
        return [tuple(self.word(i).tolist()) for i in range(len(self))]

    @cached_property
    def _order(self) -> np.ndarray:
        return np.argsort(self.keys, kind="stable")

    @cached_property
    def _sorted(self) -> np.ndarray:
        return self.keys[self._order]


def _encode(k: int, word) -> int | None:
    w = [int(a) for a in np.atleast_1d(np.asarray(word))]
    B = order_r(k) ** 2 + 1
    if not w:
        return None
    key = 0
    for a in w:
        if not 0 <= a < B - 1:
            return None
        key = key * B + a + 1
    return key


def _decode(B: int, key: int, length: int) -> np.ndarray:
    out = []
    for _ in range(length):
        key, d = divmod(key, B)
        out.append(d - 1)
    return np.array(out[::-1], dtype=np.int64)


def _window_keys(w: np.ndarray, length: int, B: int) -> np.ndarray:
    if len(w) < length:
        return np.empty(0, dtype=np.int64)
    weights = B ** np.arange(length - 1, -1, -1, dtype=np.int64)
    return sliding_window_view(w + 1, length) @ weights


def _factor_keys(w: np.ndarray, L: int, B: int) -> list[np.ndarray]:
    return [np.unique(_window_keys(w, l, B)) for l in range(1, L + 1)]


def factors_upto(k: int, L: int, max_length: int = MAX_WORD_LENGTH) -> FactorSet:
    """All factors of length <= L of the words gamma^m(a_11), m = 1, 2, ...

    Iterates until the factor set of gamma^m equals that of gamma^(m+1) and
    records that m.  Length-L factors of gamma(w) only depend on factors of w
    of length <= ceil(L/r) + 1, so two equal consecutive sets are a fixpoint.
    """
    if L < 1:
        raise BadIndex("L must be at least 1")
    B = order_r(k) ** 2 + 1
    if L * np.log2(B) >= 62:
        raise CapExceeded(f"factors of length {L} do not fit the 64-bit encoding")
    m = 1
    w = gamma_power(k, 1, max_length)
    current = _factor_keys(w, L, B)
    while True:
        w_next = gamma(k, w, max_length)
        following = _factor_keys(w_next, L, B)
        if all(np.array_equal(a, b) for a, b in zip(current, following)):
            break
        m, w, current = m + 1, w_next, following
    keys = np.concatenate(current)
    lengths = np.concatenate([np.full(len(c), l, dtype=np.int64) for l, c in zip(range(1, L + 1), current)])
    return FactorSet(k, L, keys, lengths, m)


def _lookup(fs: FactorSet, keys: np.ndarray) -> np.ndarray:
    """Index of each key in fs, or -1."""
    order = fs._order
    srt = fs.keys[order]
    pos = np.clip(np.searchsorted(srt, keys), 0, len(srt) - 1)
    hit = srt[pos] == keys
    return np.where(hit, order[pos], -1)


def vk_multiply(fs: FactorSet, u, v):
    """uv if it is a factor of length <= L, otherwise None (the zero)."""
    iu, iv = fs.index_of(u), fs.index_of(v)
    if iu is None or iv is None:
        raise NotAFactor("both operands must be members of the factor set")
    if fs.lengths[iu] + fs.lengths[iv] > fs.L:
        return None
    uv = np.concatenate([fs.word(iu), fs.word(iv)])
    return uv if fs.index_of(uv) is not None else None


def vk_table(fs: FactorSet, cap: int = DEFAULT_TABLE_CAP) -> CayleyTable:
    """Table on {0} + factors: index 0 is the zero, factor i sits at i + 1.

    Every non-zero product uv is a factor w split as w = u.v, so the table
    is filled from the (|w| - 1) splits of each factor; the rest stays 0.
    """
    n = len(fs) + 1
    if n > cap:
        raise CapExceeded(f"table of size {n} exceeds cap {cap}")
    B = fs.base
    P = np.zeros((n, n), dtype=INDEX_DTYPE)
    for l in range(2, fs.L + 1):
        sel = np.flatnonzero(fs.lengths == l)
        if not len(sel):
            continue
        keys = fs.keys[sel]
        for s in range(1, l):  # |v| = s
            scale = np.int64(B) ** s
            u = _lookup(fs, keys // scale)
            v = _lookup(fs, keys % scale)
            # factor sets are factor-closed, so both halves are present
            P[u + 1, v + 1] = sel + 1
    letters = np.flatnonzero(fs.lengths == 1) + 1
    labels = ["0"] + [format_word(fs.k, fs.word(i), sep=".") for i in range(len(fs))]
    return CayleyTable._trusted(P, generators=letters.tolist(), labels=labels)
