"""Branched covers of the sphere given by monodromy plus restriction words.

A presentation of degree ``d`` over ``n`` marked points stores, for every
free generator ``g_i`` (``i < n``), a permutation ``sigma_i`` of the sheets
``0 .. d-1`` and one restriction word per sheet.  The permutation and
restrictions of the last point are derived from the sphere relation.

Composition convention: for a product ``u v`` the right factor is
traversed first, so the permutation of ``u v`` is ``sigma_u o sigma_v`` and
its sheet word at ``k`` is ``r_u(sigma_v(k)) . r_v(k)``.  The lift of a loop
``w`` along a cycle ``(k, pi(k), ..., pi^{m-1}(k))`` of its permutation is the
sheet word of ``w^m`` at ``k``, where ``k`` is the least sheet of the cycle.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Optional, Sequence, Tuple, Union

from .sphere_group import (
    CurveClass,
    MarkedSet,
    Word,
    WordError,
    canonical_curve_class,
    cyclic_reduce,
    free_conjugate,
    free_reduce,
    inverse,
    left_side,
    multiply,
    peripheral_class_of,
    peripheral_word,
    winding_vector,
)

Perm = Tuple[int, ...]


# -- permutations -------------------------------------------------------------

def identity_perm(d: int) -> Perm:
    return tuple(range(d))


def compose(p: Sequence[int], q: Sequence[int]) -> Perm:
    """``p o q``: apply ``q`` first."""
    return tuple(p[q[k]] for k in range(len(q)))


def invert_perm(p: Sequence[int]) -> Perm:
    out = [0] * len(p)
    for k, v in enumerate(p):
        out[v] = k
    return tuple(out)


def cycles(p: Sequence[int]) -> list:
    """Cycles of ``p``, each starting at its least sheet, sorted by that sheet."""
    seen = [False] * len(p)
    out = []
    for k in range(len(p)):
        if seen[k]:
            continue
        cyc = []
        j = k
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        out.append(tuple(cyc))
    return out


def perm_from_cycles(cycs, d: int) -> Perm:
    p = list(range(d))
    for cyc in cycs:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            p[a] = b
    return tuple(p)


def normalize_cycle(cyc: Sequence[int]) -> Tuple[int, ...]:
    k = cyc.index(min(cyc))
    return tuple(cyc[k:]) + tuple(cyc[:k])


# -- the presentation ---------------------------------------------------------

@dataclass(frozen=True)
class CoverPresentation:
    degree: int
    marked: MarkedSet
    dynamics: Tuple[int, ...]
    perms: Tuple[Perm, ...]
    restrictions: Tuple[Tuple[Word, ...], ...]
    assignment: Tuple[Tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return self.marked.n

    @cached_property
    def last_perm(self) -> Perm:
        prod = identity_perm(self.degree)
        for p in self.perms:
            prod = compose(prod, p)
        return invert_perm(prod)

    @cached_property
    def all_perms(self) -> Tuple[Perm, ...]:
        return tuple(self.perms) + (self.last_perm,)

    @cached_property
    def _letters(self) -> dict:
        d = self.degree
        table = {}
        for i, (p, rest) in enumerate(zip(self.perms, self.restrictions), start=1):
            table[i] = (p, tuple(free_reduce(r) for r in rest))
            pinv = invert_perm(p)
            table[-i] = (pinv, tuple(inverse(rest[pinv[k]]) for k in range(d)))
        return table

    def local_degree(self, point: int) -> int:
        return len(self.assignment[point])

    def critical_values(self) -> list:
        return [i for i, p in enumerate(self.all_perms) if any(len(c) > 1 for c in cycles(p))]

    def branching(self, point: int) -> int:
        return self.degree - len(cycles(self.all_perms[point]))

    def label(self, point: int) -> str:
        return self.marked.labels[point]


def wreath_apply(P: CoverPresentation, w: Sequence[int]):
    """Permutation and per-sheet words of the loop ``w``."""
    d = P.degree
    table = P._letters
    perm = list(range(d))
    words = [()] * d
    for x in reversed(w):
        if abs(x) >= P.n or x == 0:
            raise WordError(f"letter {x} out of range for {P.n} marked points")
        p, rest = table[x]
        words = [multiply(rest[perm[k]], words[k]) for k in range(d)]
        perm = [p[perm[k]] for k in range(d)]
    return tuple(perm), tuple(words)


def peripheral_lift_word(P: CoverPresentation, point: int, cycle: Sequence[int]) -> Word:
    """Lift of the loop around ``point`` along one cycle of its permutation."""
    w = peripheral_word(point, P.n)
    m = len(cycle)
    _, words = wreath_apply(P, w * m)
    return words[min(cycle)]


# -- validation ---------------------------------------------------------------

@dataclass
class ValidationReport:
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, name: str, detail: str):
        self.failures.append((name, detail))

    def __str__(self):
        if self.ok:
            return "valid"
        return "\n".join(f"{name}: {detail}" for name, detail in self.failures)


def _orbit_closure(start, step):
    seen = set()
    todo = list(start)
    while todo:
        x = todo.pop()
        if x in seen:
            continue
        seen.add(x)
        todo.append(step(x))
    return seen


def validate_presentation(P: CoverPresentation, check_peripheral: bool = True,
                          allow_fixed_extra: bool = False) -> ValidationReport:
    """Check every invariant of a presentation and list the failures.

    ``check_peripheral`` additionally demands that each cycle lift of a
    peripheral loop is conjugate to the loop around the marked point
    assigned to that cycle, or trivial for unmarked preimages.
    """
    rep = ValidationReport()
    d, n = P.degree, P.n
    if d < 2:
        rep.fail("degree", f"degree {d} < 2")
    if len(P.dynamics) != n or any(not 0 <= t < n for t in P.dynamics):
        rep.fail("dynamics", "dynamics must map marked points to marked points")
        return rep
    if len(P.perms) != n - 1 or len(P.restrictions) != n - 1:
        rep.fail("shape", f"expected {n - 1} stored permutations and restriction rows")
        return rep
    for i, p in enumerate(P.perms):
        if sorted(p) != list(range(d)):
            rep.fail("permutation", f"{P.label(i)}: {p} is not a permutation of {d} sheets")
            return rep
    for i, row in enumerate(P.restrictions):
        if len(row) != d:
            rep.fail("restrictions", f"{P.label(i)}: expected {d} sheet words")
            return rep
        for w in row:
            if any(x == 0 or abs(x) >= n for x in w):
                rep.fail("restrictions", f"{P.label(i)}: word {w} uses unknown generators")
                return rep

    total = sum(P.branching(i) for i in range(n))
    if total != 2 * d - 2:
        rep.fail("riemann-hurwitz", f"total branching {total} != 2d-2 = {2 * d - 2}")

    orbit = {0}
    frontier = [0]
    while frontier:
        k = frontier.pop()
        for p in P.perms:
            if p[k] not in orbit:
                orbit.add(p[k])
                frontier.append(p[k])
    if len(orbit) != d:
        rep.fail("transitivity", f"monodromy orbit of sheet 1 has size {len(orbit)} < {d}")

    if len(P.assignment) != n:
        rep.fail("assignment", "every marked point needs an assigned cycle")
        return rep
    used = set()
    for j, cyc in enumerate(P.assignment):
        target = P.dynamics[j]
        if tuple(cyc) not in cycles(P.all_perms[target]):
            rep.fail("assignment", f"{P.label(j)}: {cyc} is not a cycle over {P.label(target)}")
            continue
        key = (target, tuple(cyc))
        if key in used:
            rep.fail("assignment", f"{P.label(j)}: cycle {cyc} over {P.label(target)} assigned twice")
        used.add(key)

    crit_values = P.critical_values()
    post = _orbit_closure(crit_values, lambda x: P.dynamics[x]) if crit_values else set()
    for j in range(n):
        if j in post:
            continue
        if allow_fixed_extra and P.dynamics[j] == j:
            continue
        rep.fail("postcritical", f"{P.label(j)} is not in the postcritical set")

    if check_peripheral and rep.ok:
        owner = {(P.dynamics[j], tuple(c)): j for j, c in enumerate(P.assignment)}
        for i, p in enumerate(P.all_perms):
            for cyc in cycles(p):
                w = peripheral_lift_word(P, i, cyc)
                j = owner.get((i, cyc))
                if j is None:
                    if free_reduce(w):
                        rep.fail("peripheral", f"unmarked preimage {cyc} of {P.label(i)} lifts to {w}, not trivial")
                elif not free_conjugate(w, peripheral_word(j, n)):
                    rep.fail("peripheral", f"lift over {P.label(i)} on {cyc} is {w}, not a loop around {P.label(j)}")
    return rep


# -- lifting curves -----------------------------------------------------------

@dataclass(frozen=True)
class Lift:
    word: Word
    degree: int
    sheets: Tuple[int, ...]
    kind: str
    point: Optional[int] = None
    curve: Optional[CurveClass] = None


def _classify_lift(word: Word, degree: int, sheets, n: int) -> Lift:
    w = free_reduce(word)
    r = cyclic_reduce(w)
    if not r:
        return Lift(w, degree, sheets, "trivial")
    pt = peripheral_class_of(r, n)
    if pt is not None:
        return Lift(w, degree, sheets, "peripheral", point=pt)
    return Lift(w, degree, sheets, "essential", curve=canonical_curve_class(r, n))


def lift_word(P: CoverPresentation, w: Sequence[int]) -> list:
    """Components of the preimage of the loop ``w``, one per cycle."""
    perm, words = wreath_apply(P, w)
    out = []
    for cyc in cycles(perm):
        k = cyc[0]
        parts = [words[k]]
        j = perm[k]
        while j != k:
            parts.append(words[j])
            j = perm[j]
        out.append(_classify_lift(multiply(*reversed(parts)), len(cyc), cyc, P.n))
    return out


def lift_curve(P: CoverPresentation, c: Union[CurveClass, Sequence[int]]) -> list:
    w = c.word if isinstance(c, CurveClass) else tuple(c)
    return lift_word(P, w)


# -- preimages of disks ------------------------------------------------------

def orient_left(w: Sequence[int], side: frozenset, n: int) -> Word:
    """Orient ``w`` so that the marked points ``side`` lie on its left."""
    w = tuple(w)
    if not free_reduce(w) or not any(winding_vector(w, n)):
        return w
    left = left_side(w, n)
    if left == side:
        return w
    if frozenset(range(n)) - left == side:
        return inverse(w)
    raise WordError(f"{sorted(side)} is not a side of the curve")


@dataclass(frozen=True)
class PreimageTopology:
    marked: frozenset
    boundary_lifts: Tuple[Lift, ...]
    total_chi: int
    component_count: int
    all_disks: bool
    boundary_multiset: Optional[Tuple[int, ...]]
    disk_sides: Optional[Tuple[frozenset, ...]] = None

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(sorted(l.degree for l in self.boundary_lifts))

    @property
    def ambiguous(self) -> bool:
        return self.boundary_multiset is None


def euler_characteristic_of_preimage(P: CoverPresentation, marked: frozenset) -> int:
    d = P.degree
    return d * (1 - len(marked)) + sum(len(cycles(P.all_perms[j])) for j in marked)


def disk_preimage_topology(P: CoverPresentation, boundary, side) -> PreimageTopology:
    """Topology of the preimage of the disk bounded by ``boundary`` on ``side``.

    Each preimage component is planar, so ``component_count`` follows from
    the Euler characteristic and the number of boundary lifts.  The
    multiset of boundary counts per component is only reported when that
    arithmetic forces it.
    """
    n = P.n
    side = frozenset(side)
    w = boundary.word if isinstance(boundary, CurveClass) else tuple(boundary)
    w = orient_left(w, side, n)
    lifts = tuple(lift_word(P, w))
    chi = euler_characteristic_of_preimage(P, side)
    nb = len(lifts)
    if (chi + nb) % 2:
        raise ArithmeticError(f"odd chi + boundaries ({chi} + {nb}); presentation is inconsistent")
    count = (chi + nb) // 2
    if count < 1 or count > nb:
        raise ArithmeticError(f"impossible component count {count} for {nb} boundary curves")
    if count == 1:
        multiset = (nb,)
    elif count == nb:
        multiset = (1,) * nb
    elif count == nb - 1:
        multiset = (2,) + (1,) * (nb - 2)
    else:
        multiset = None
    all_disks = chi == nb
    disk_sides = None
    if all_disks:
        if nb == 1:
            disk_sides = (frozenset(j for j in range(n) if P.dynamics[j] in side),)
        else:
            disk_sides = tuple(_lift_left(l, n) for l in lifts)
    return PreimageTopology(side, lifts, chi, count, all_disks, multiset, disk_sides)


def _lift_left(l: Lift, n: int) -> frozenset:
    if l.kind == "trivial":
        return frozenset()
    return left_side(l.word, n)


# -- orbifold and critical data ----------------------------------------------

@dataclass(frozen=True)
class OrbifoldSignature:
    nu: Tuple[Optional[int], ...]  # None encodes infinity
    chi_orb: Fraction

    @property
    def hyperbolic(self) -> bool:
        return self.chi_orb < 0


def orbifold_signature(P: CoverPresentation) -> OrbifoldSignature:
    n = P.n
    owner = {(P.dynamics[j], tuple(c)): j for j, c in enumerate(P.assignment)}
    # constraints: (source point or None, local degree) -> target point
    feeds = []
    for i, p in enumerate(P.all_perms):
        for cyc in cycles(p):
            j = owner.get((i, cyc))
            if j is not None or len(cyc) > 1:
                feeds.append((j, len(cyc), i))

    # a periodic marked cycle through a critical marked point forces infinity
    infinite = set()
    for j in range(n):
        k, seen = P.dynamics[j], [j]
        while k not in seen:
            seen.append(k)
            k = P.dynamics[k]
        if k == j and any(P.local_degree(x) > 1 for x in seen):
            infinite.update(seen)
    changed = True
    while changed:
        changed = False
        for j in list(infinite):
            if P.dynamics[j] not in infinite:
                infinite.add(P.dynamics[j])
                changed = True

    nu = [1] * n
    for _ in range(4 * n + 4):
        changed = False
        for src, deg, tgt in feeds:
            if tgt in infinite:
                continue
            need = deg * (1 if src is None else nu[src])
            new = lcm(nu[tgt], need)
            if new != nu[tgt]:
                nu[tgt] = new
                changed = True
        if not changed:
            break
    else:
        raise RuntimeError("orbifold recursion did not settle")
    values = tuple(None if j in infinite else nu[j] for j in range(n))
    chi = Fraction(2) - sum((1 - (Fraction(0) if v is None else Fraction(1, v))) for v in values)
    return OrbifoldSignature(values, chi)


def fixed_critical_points(P: CoverPresentation) -> list:
    """``(point, local degree)`` for every fixed critical marked point."""
    return [(j, P.local_degree(j)) for j in range(P.n)
            if P.dynamics[j] == j and P.local_degree(j) >= 2]


def free_critical_values(P: CoverPresentation) -> list:
    fixed = {j for j, _ in fixed_critical_points(P)}
    out = []
    for i in P.critical_values():
        crit = [c for c in cycles(P.all_perms[i]) if len(c) > 1]
        mine = {tuple(P.assignment[j]) for j in fixed if P.dynamics[j] == i}
        if any(c not in mine for c in crit):
            out.append(i)
    return out
