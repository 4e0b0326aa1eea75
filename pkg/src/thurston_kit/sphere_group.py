"""Word algebra in the fundamental group of an n-punctured sphere.

The group is free on ``g_1 .. g_{n-1}``; the loop around the last marked
point is the derived word ``(g_1 g_2 ... g_{n-1})^{-1}`` so that
``g_1 g_2 ... g_n = 1``.

Words are tuples of nonzero ints: ``i`` stands for ``g_i`` and ``-i`` for
its inverse.  Marked points are indexed ``0 .. n-1`` internally, so the
point with index ``j`` is encircled by the generator ``j + 1``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Tuple

Word = Tuple[int, ...]

EMPTY: Word = ()


class WordError(ValueError):
    """Raised for words that cannot stand for a simple closed curve."""


@dataclass(frozen=True)
class MarkedSet:
    labels: Tuple[str, ...]

    def __post_init__(self):
        if len(self.labels) < 2:
            raise ValueError("a marked set needs at least two points")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"duplicate marked-point labels in {self.labels}")

    @classmethod
    def standard(cls, n: int) -> "MarkedSet":
        return cls(tuple(f"p{i + 1}" for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown marked point {label!r}") from None

    def names(self, points: Iterable[int]) -> list:
        return [self.labels[j] for j in sorted(points)]


@dataclass(frozen=True)
class SidePartition:
    """Unordered split of the marked points by a curve.

    ``inside`` is the side with winding number one when the last marked
    point is put on the zero side.
    """

    inside: frozenset
    outside: frozenset

    def sides(self):
        return (self.inside, self.outside)

    def side_of(self, point: int) -> frozenset:
        return self.inside if point in self.inside else self.outside

    def separates(self, a: int, b: int) -> bool:
        return (a in self.inside) != (b in self.inside)

    @property
    def is_essential(self) -> bool:
        return len(self.inside) >= 2 and len(self.outside) >= 2


@dataclass(frozen=True, order=True)
class CurveClass:
    """Unoriented free-homotopy class of a loop, stored in canonical form."""

    word: Word
    partition: SidePartition = field(compare=False, hash=False)

    def __str__(self):
        return format_word(self.word)

    @property
    def inside(self) -> frozenset:
        return self.partition.inside


# -- basic algebra -----------------------------------------------------------

def inverse(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def free_reduce(w: Iterable[int]) -> Word:
    out: list = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def multiply(*words: Sequence[int]) -> Word:
    out: list = []
    for w in words:
        for x in w:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return tuple(out)


def power(w: Sequence[int], k: int) -> Word:
    if k < 0:
        return power(inverse(w), -k)
    return multiply(*([w] * k))


def conjugate(w: Sequence[int], h: Sequence[int]) -> Word:
    """Return ``h w h^{-1}``."""
    return multiply(h, w, inverse(h))


def cyclic_reduce(w: Sequence[int]) -> Word:
    """Free reduction followed by cancelling first letters against last ones."""
    r = free_reduce(w)
    i, j = 0, len(r) - 1
    while i < j and r[i] == -r[j]:
        i += 1
        j -= 1
    return r[i:j + 1]


def _rotations(w: Word):
    for k in range(len(w)):
        yield w[k:] + w[:k]


def _letter_key(x: int):
    # order g1 < G1 < g2 < G2 < ...
    return (abs(x), x < 0)


def _word_key(w: Word):
    return tuple(_letter_key(x) for x in w)


def least_rotation(w: Word) -> Word:
    """Least cyclic rotation in the order ``g1 < G1 < g2 < ...`` (Booth's algorithm)."""
    if not w:
        return w
    s = [2 * abs(x) + (x < 0) for x in w]
    s += s
    f = [-1] * len(s)
    k = 0
    for j in range(1, len(s)):
        sj = s[j]
        i = f[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    k %= len(w)
    return w[k:] + w[:k]


def free_conjugate(u: Sequence[int], v: Sequence[int]) -> bool:
    """True iff ``u`` and ``v`` are conjugate in the free group."""
    a, b = cyclic_reduce(u), cyclic_reduce(v)
    if len(a) != len(b):
        return False
    if not a:
        return True
    # b is a rotation of a iff it occurs in a doubled copy of a
    return _occurs(b, a + a)


def _occurs(needle: Word, hay: Word) -> bool:
    n = len(needle)
    first = needle[0]
    for k in range(len(hay) - n + 1):
        if hay[k] == first and hay[k:k + n] == needle:
            return True
    return False


def canonical_word(w: Sequence[int]) -> Word:
    """Least rotation over both orientations of the cyclic reduction."""
    r = cyclic_reduce(w)
    if not r:
        return r
    a = least_rotation(r)
    b = least_rotation(inverse(r))
    return min(a, b, key=_word_key)


# -- homology and marked points ---------------------------------------------

def last_loop(n: int) -> Word:
    """The derived loop around the last of ``n`` marked points."""
    return tuple(-i for i in range(n - 1, 0, -1))


def peripheral_word(point: int, n: int) -> Word:
    return last_loop(n) if point == n - 1 else (point + 1,)


def winding_vector(w: Sequence[int], n: int) -> Tuple[int, ...]:
    """Exponent sum of each free generator ``g_1 .. g_{n-1}`` in ``w``."""
    vec = [0] * (n - 1)
    for x in w:
        i = abs(x)
        if i >= n:
            raise WordError(f"generator g{i} out of range for {n} marked points")
        vec[i - 1] += 1 if x > 0 else -1
    return tuple(vec)


def left_side(w: Sequence[int], n: int) -> frozenset:
    """Marked points on the positive side of an oriented simple loop.

    Raises ``WordError`` when the winding vector rules out a simple curve.
    """
    vec = winding_vector(w, n)
    values = set(vec)
    if not values - {0}:
        raise WordError("fails simple-curve homology test: zero winding")
    if values <= {0, 1}:
        return frozenset(i for i, v in enumerate(vec) if v == 1)
    if values <= {0, -1}:
        return frozenset(i for i, v in enumerate(vec) if v == 0) | {n - 1}
    raise WordError(f"fails simple-curve homology test: winding {vec}")


def side_partition(w: Sequence[int], n: int) -> SidePartition:
    vec = winding_vector(w, n)
    values = set(vec)
    if values <= {0, -1}:
        vec = tuple(-v for v in vec)
        values = set(vec)
    if not values <= {0, 1} or 1 not in values:
        raise WordError(f"fails simple-curve homology test: winding {vec}")
    inside = frozenset(i for i, v in enumerate(vec) if v == 1)
    outside = frozenset(range(n)) - inside
    return SidePartition(inside, outside)


def canonical_curve_class(w: Sequence[int], n: int) -> CurveClass:
    r = cyclic_reduce(w)
    if not r:
        raise WordError("null-homotopic word has no curve class")
    return CurveClass(canonical_word(r), side_partition(r, n))


def peripheral_class_of(w: Sequence[int], n: int) -> Optional[int]:
    """Index of the marked point that ``w`` encircles, or None."""
    r = cyclic_reduce(w)
    if len(r) == 1:
        return abs(r[0]) - 1
    if len(r) == n - 1 and canonical_word(r) == canonical_word(last_loop(n)):
        return n - 1
    return None


# -- text form ---------------------------------------------------------------

_TOKEN = re.compile(r"^([gG])(\d+)$")


def parse_word(text: str, n: Optional[int] = None) -> Word:
    """Parse ``"g1 G2 g1"`` (capital letter = inverse); empty text is the identity."""
    out = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m or int(m.group(2)) < 1:
            raise WordError(f"bad generator token {tok!r}")
        i = int(m.group(2))
        if n is not None and i >= n:
            raise WordError(f"generator {tok} out of range for {n} marked points")
        out.append(i if m.group(1) == "g" else -i)
    return tuple(out)


def format_word(w: Sequence[int]) -> str:
    return " ".join(f"g{x}" if x > 0 else f"G{-x}" for x in w)
