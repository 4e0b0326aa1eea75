"""Multicurves, their lifts, pullback saturation and complementary faces.

Disjointness is only checked at the level of side partitions: the inside
sets of a multicurve must form a laminar family (pairwise nested or
disjoint) with no repeats.  That is necessary for a disjoint system; sets
reached as exact fixed points of pullback are disjoint because lifts of a
disjoint system are disjoint.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from .cover import CoverPresentation, Lift, lift_word
from .sphere_group import (
    CurveClass,
    WordError,
    canonical_curve_class,
    last_loop,
    multiply,
)


class MulticurveError(ValueError):
    pass


NOT_REALIZABLE = "not realizable as disjoint system at partition level"


def laminar(classes: Iterable[CurveClass]) -> bool:
    sets = [c.inside for c in classes]
    for i, a in enumerate(sets):
        for b in sets[i + 1:]:
            if a == b:
                return False
            if a & b and not (a <= b or b <= a):
                return False
    return True


@dataclass(frozen=True)
class Multicurve:
    members: Tuple[CurveClass, ...]
    n: int

    def __post_init__(self):
        ms = tuple(sorted(set(self.members)))
        object.__setattr__(self, "members", ms)
        for c in ms:
            if not c.partition.is_essential:
                raise MulticurveError(f"curve {c} is peripheral or trivial")
        if not laminar(ms):
            raise MulticurveError(NOT_REALIZABLE)

    @classmethod
    def from_words(cls, words, n: int) -> "Multicurve":
        return cls(tuple(canonical_curve_class(w, n) for w in words), n)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, c):
        return c in self.members

    def index(self, c: CurveClass) -> int:
        return self.members.index(c)


class LiftCache:
    """Memo of curve lifts for one presentation."""

    def __init__(self, P: CoverPresentation):
        self.P = P
        self._memo: Dict[tuple, List[Lift]] = {}

    def lifts(self, c: CurveClass) -> List[Lift]:
        out = self._memo.get(c.word)
        if out is None:
            out = lift_word(self.P, c.word)
            self._memo[c.word] = out
        return out

    def essential(self, c: CurveClass) -> List[Tuple[CurveClass, int]]:
        return [(l.curve, l.degree) for l in self.lifts(c) if l.kind == "essential"]


def essential_lifts(P: CoverPresentation, G, cache: Optional[LiftCache] = None) -> Dict[CurveClass, list]:
    """Non-peripheral lifts of every member, with multiplicity and degree."""
    cache = cache or LiftCache(P)
    return {c: cache.essential(c) for c in G}


def is_stable(P: CoverPresentation, G, cache: Optional[LiftCache] = None) -> bool:
    members = set(G)
    return all(d in members for lifts in essential_lifts(P, G, cache).values() for d, _ in lifts)


def escaping_lifts(P: CoverPresentation, G, cache: Optional[LiftCache] = None) -> list:
    members = set(G)
    return [(c, d) for c, lifts in essential_lifts(P, G, cache).items()
            for d, _ in lifts if d not in members]


# -- pullback saturation ---------------------------------------------------------

@dataclass
class SaturationResult:
    status: str  # "fixed", "cycle" or "timeout"
    curves: frozenset
    trajectory: List[frozenset] = field(default_factory=list)
    laminar: bool = True
    reason: str = ""

    @property
    def multicurve(self) -> Optional[frozenset]:
        """The invariant set when it is a candidate multicurve."""
        if self.status == "timeout" or not self.laminar:
            return None
        return self.curves


def pullback_saturate(P: CoverPresentation, seeds, max_iter: int = 64, max_size: int = 256,
                      cache: Optional[LiftCache] = None,
                      max_word_length: int = 512) -> SaturationResult:
    """Iterate ``L -> classes of essential lifts of L`` until a set repeats.

    Besides the iteration and size bounds, words longer than
    ``max_word_length`` stop the search: curves that cross a Levy curve of
    multiplicity two or more get twisted further at every step and never
    settle.
    """
    cache = cache or LiftCache(P)
    current = frozenset(seeds)
    trajectory = [current]
    seen = {current: 0}
    for _ in range(max_iter):
        nxt = frozenset(d for c in current for d, _ in cache.essential(c))
        if len(nxt) > max_size:
            return SaturationResult("timeout", nxt, trajectory, False,
                                    f"set size {len(nxt)} exceeds {max_size}")
        longest = max((len(c.word) for c in nxt), default=0)
        if longest > max_word_length:
            return SaturationResult("timeout", nxt, trajectory, False,
                                    f"word length {longest} exceeds {max_word_length}")
        trajectory.append(nxt)
        if nxt in seen:
            start = seen[nxt]
            if start == len(trajectory) - 2:
                return SaturationResult("fixed", nxt, trajectory, laminar(nxt))
            union = frozenset().union(*trajectory[start:-1])
            image = frozenset(d for c in union for d, _ in cache.essential(c))
            if image != union:
                raise AssertionError("union over a pullback cycle is not invariant")
            return SaturationResult("cycle", union, trajectory, laminar(union))
        seen[nxt] = len(trajectory) - 1
        current = nxt
    return SaturationResult("timeout", current, trajectory, False,
                            f"no repetition after {max_iter} iterations")


def standard_seeds(n: int) -> List[CurveClass]:
    """Round curves around each pair of marked points, deduplicated."""
    out = []
    for a in range(n):
        for b in range(a + 1, n):
            if b < n - 1:
                w = (a + 1, b + 1)
            else:
                w = multiply((a + 1,), last_loop(n))
            try:
                c = canonical_curve_class(w, n)
            except WordError:
                continue
            if c.partition.is_essential and c not in out:
                out.append(c)
    return out


# -- faces -----------------------------------------------------------------------

@dataclass(frozen=True)
class Face:
    boundary: Tuple[CurveClass, ...]
    marked: frozenset
    owner: Optional[CurveClass]  # the curve this face sits just inside; None for the outer face

    @property
    def is_disk(self) -> bool:
        return len(self.boundary) == 1

    def disk_side(self, n: int) -> frozenset:
        """All marked points on this face's side of its single boundary curve."""
        if not self.is_disk:
            raise ValueError("face is not a disk")
        c = self.boundary[0]
        return c.inside if self.owner is not None else c.partition.outside


@dataclass(frozen=True)
class FaceTree:
    faces: Tuple[Face, ...]
    parent: Dict[CurveClass, Optional[CurveClass]]

    def disk_faces(self) -> List[Face]:
        return [f for f in self.faces if f.is_disk]

    def face_of(self, point: int) -> Face:
        for f in self.faces:
            if point in f.marked:
                return f
        raise KeyError(point)


def face_structure(G, n) -> FaceTree:
    """Nesting tree of a laminar multicurve; ``n`` is a count or a ``MarkedSet``."""
    n = getattr(n, "n", n)
    members = list(G)
    if not laminar(members):
        raise MulticurveError(NOT_REALIZABLE)
    parent: Dict[CurveClass, Optional[CurveClass]] = {}
    for c in members:
        above = [d for d in members if d != c and c.inside < d.inside]
        parent[c] = min(above, key=lambda d: len(d.inside)) if above else None
    children: Dict[Optional[CurveClass], list] = {c: [] for c in members}
    children[None] = []
    for c, p in parent.items():
        children[p].append(c)
    faces = []
    for c in members:
        kids = children[c]
        marked = c.inside - frozenset().union(*[k.inside for k in kids]) if kids else c.inside
        faces.append(Face(tuple([c] + sorted(kids)), marked, c))
    top = children[None]
    covered = frozenset().union(*[k.inside for k in top]) if top else frozenset()
    faces.append(Face(tuple(sorted(top)), frozenset(range(n)) - covered, None))
    return FaceTree(tuple(faces), parent)


def lift_faces_contained(P: CoverPresentation, G, cache: Optional[LiftCache] = None) -> bool:
    """Every face cut out by the essential lifts of ``G`` sits inside one face of ``G``."""
    lifted = {d for lifts in essential_lifts(P, G, cache).values() for d, _ in lifts}
    if not laminar(lifted):
        return False
    base = face_structure(G, P.n).faces
    return all(any(f.marked <= g.marked for g in base) for f in face_structure(lifted, P.n).faces)
