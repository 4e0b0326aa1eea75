"""Transition matrices, Levy cycles and the two-fixed-critical-point analysis.

Columns of a transition matrix are indexed by source curves: entry
``(i, j)`` sums ``1/deg`` over the lifts of ``G[j]`` isotopic to ``G[i]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from .cover import (
    CoverPresentation,
    Lift,
    disk_preimage_topology,
    fixed_critical_points,
    free_critical_values,
    validate_presentation,
)
from .curves import (
    Face,
    LiftCache,
    face_structure,
    lift_faces_contained,
)
from .spectral import (
    GE1,
    EigenvalueBounds,
    is_irreducible,
    leading_eigenvalue_bounds,
)
from .sphere_group import CurveClass, canonical_word, left_side

NEWTON_LIKE = "NewtonLike"
QUADRATIC_LIKE = "QuadraticLike"
REMOVABLE_LEVY = "RemovableLevy"
UNEXPECTED = "Unexpected"

CONFIRMED = "confirmed"
COUNTEREXAMPLE = "COUNTEREXAMPLE-FLAG"


class ObstructionError(ValueError):
    pass


class PreconditionError(ObstructionError):
    """An analysis was asked of an input outside its hypotheses."""


def _members(G) -> List[CurveClass]:
    return sorted(set(G))


# -- transition matrix ---------------------------------------------------------------

@dataclass(frozen=True)
class TransitionMatrix:
    curves: Tuple[CurveClass, ...]
    entries: Tuple[Tuple[Fraction, ...], ...]

    def __len__(self):
        return len(self.curves)

    def index(self, c: CurveClass) -> int:
        return self.curves.index(c)

    def restrict(self, idx: Sequence[int]) -> "TransitionMatrix":
        return TransitionMatrix(tuple(self.curves[i] for i in idx),
                                tuple(tuple(self.entries[i][j] for j in idx) for i in idx))

    def __str__(self):
        width = max([len(str(x)) for r in self.entries for x in r] + [1])
        lines = [" ".join(str(x).rjust(width) for x in row) for row in self.entries]
        return "\n".join(lines)


def transition_matrix(P: CoverPresentation, G, require_stable: bool = True,
                      cache: Optional[LiftCache] = None) -> TransitionMatrix:
    """Exact Thurston matrix of ``G``.

    With ``require_stable=False`` lifts that leave ``G`` are ignored, which
    gives the matrix of a sub-multicurve of a stable one.
    """
    cache = cache or LiftCache(P)
    members = _members(G)
    pos = {c: i for i, c in enumerate(members)}
    m = len(members)
    f = [[Fraction(0)] * m for _ in range(m)]
    for j, c in enumerate(members):
        for d, deg in cache.essential(c):
            i = pos.get(d)
            if i is None:
                if require_stable:
                    raise ObstructionError(
                        f"multicurve is not F-stable: lift {d} of {c} is not a member")
                continue
            f[i][j] += Fraction(1, deg)
    return TransitionMatrix(tuple(members), tuple(tuple(r) for r in f))


# -- Levy cycles ---------------------------------------------------------------------

@dataclass(frozen=True)
class LevyCycle:
    """``curves[k]`` has a degree-one lift isotopic to ``curves[k+1]``."""

    curves: Tuple[CurveClass, ...]
    witnesses: Tuple[Lift, ...]

    def __len__(self):
        return len(self.curves)

    def __str__(self):
        return " -> ".join(f"[{c}]" for c in self.curves)


@dataclass
class LevyReport:
    cycles: List[LevyCycle]
    classification: List[str] = field(default_factory=list)

    def __bool__(self):
        return bool(self.cycles)


def levy_digraph(P: CoverPresentation, G, cache: Optional[LiftCache] = None) -> nx.DiGraph:
    """Edge ``c -> d`` when ``d`` is the class of a degree-one lift of ``c``."""
    cache = cache or LiftCache(P)
    members = set(G)
    D = nx.DiGraph()
    D.add_nodes_from(members)
    for c in members:
        for l in cache.lifts(c):
            if l.kind == "essential" and l.degree == 1 and l.curve in members:
                D.add_edge(c, l.curve)
                D.edges[c, l.curve].setdefault("lifts", []).append(l)
    return D


def find_levy_cycles(P: CoverPresentation, G, cache: Optional[LiftCache] = None,
                     limit: int = 1000) -> LevyReport:
    """Elementary cycles of the degree-one lift digraph, at most ``limit`` of them."""
    D = levy_digraph(P, G, cache)
    found = []
    for cyc in nx.simple_cycles(D):
        k = cyc.index(min(cyc))
        cyc = cyc[k:] + cyc[:k]
        witnesses = tuple(D.edges[cyc[t], cyc[(t + 1) % len(cyc)]]["lifts"][0]
                          for t in range(len(cyc)))
        found.append(LevyCycle(tuple(cyc), witnesses))
        if len(found) >= limit:
            break
    found.sort(key=lambda c: (len(c), c.curves))
    return LevyReport(found, ["plain"] * len(found))


def levy_cycle_bounds(P: CoverPresentation, cycle: LevyCycle) -> EigenvalueBounds:
    """Spectral bounds of the cycle's own matrix; a Levy cycle has ``lambda >= 1``."""
    return leading_eigenvalue_bounds(transition_matrix(P, cycle.curves, require_stable=False))


# -- degenerate and removable Levy cycles --------------------------------------------

@dataclass(frozen=True)
class LevyClassification:
    kind: str  # "not-degenerate", "degenerate" or "removable-up-to-depth"
    depth: Optional[int] = None
    disks: Tuple[frozenset, ...] = ()
    failed_at: Optional[int] = None
    detail: str = ""

    def __str__(self):
        if self.kind == "removable-up-to-depth":
            return f"removable-up-to-depth({self.depth})"
        if self.kind == "degenerate" and self.failed_at is not None:
            return f"degenerate (non-disk preimage at depth {self.failed_at})"
        return self.kind


def _disk_choices(cycle: LevyCycle, n: int) -> List[Tuple[frozenset, ...]]:
    curves = list(cycle.curves)
    tree = face_structure(curves, n)
    if len(curves) == 1:
        c = curves[0]
        return [(c.inside,), (c.partition.outside,)]
    central = [f for f in tree.faces if len(f.boundary) == len(curves)]
    disks = [f for f in tree.faces if f.is_disk]
    if len(central) != 1 or len(disks) != len(curves):
        return []
    by_curve = {f.boundary[0]: f.disk_side(n) for f in disks}
    if set(by_curve) != set(curves):
        return []
    return [tuple(by_curve[c] for c in curves)]


def _homeomorphic_preimage(P: CoverPresentation, curve: CurveClass, disk: frozenset,
                           target: CurveClass, target_disk: frozenset) -> bool:
    """Partition-level test that the disk bounded by ``curve`` on ``disk`` has a
    degree-one preimage disk isotopic to the one bounded by ``target``.

    Lifts keep orientation, so with ``disk`` on the left of ``curve`` every
    preimage component lies on the left of its boundary lifts.
    """
    n = P.n
    topo = disk_preimage_topology(P, curve, disk)
    for l in topo.boundary_lifts:
        if l.kind != "essential" or l.degree != 1 or l.curve != target:
            continue
        if left_side(l.word, n) != target_disk:
            continue
        image = [P.dynamics[j] for j in target_disk]
        if len(set(image)) != len(image) or not set(image) <= disk:
            continue
        if any(P.local_degree(j) > 1 for j in target_disk):
            continue
        return True
    return False


def removable_depth(P: CoverPresentation, disks: Sequence[Tuple[Sequence[int], frozenset]],
                    depth: int) -> Optional[int]:
    """First level ``k <= depth`` with a non-disk preimage component, else None.

    ``disks`` lists ``(boundary word, interior marked set)`` pairs.  States
    are memoised on the boundary class and the interior marked set.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    frontier = {(canonical_word(w), frozenset(s)): tuple(w) for w, s in disks}
    seen = set()
    for level in range(1, depth + 1):
        nxt = {}
        for key, w in frontier.items():
            if key in seen:
                continue
            seen.add(key)
            topo = disk_preimage_topology(P, w, key[1])
            if not topo.all_disks:
                return level
            for l, side in zip(topo.boundary_lifts, topo.disk_sides):
                k2 = (canonical_word(l.word), side)
                if k2 not in seen:
                    nxt[k2] = l.word
        frontier = nxt
        if not frontier:
            break
    return None


def classify_levy(P: CoverPresentation, G, cycle: LevyCycle, depth: int) -> LevyClassification:
    """Degenerate and removable tests for one Levy cycle.

    Removability is only ever claimed up to ``depth`` iterated preimages.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    curves = list(cycle.curves)
    m = len(curves)
    best = None
    for disks in _disk_choices(cycle, P.n):
        if not all(_homeomorphic_preimage(P, curves[i], disks[i], curves[(i + 1) % m],
                                          disks[(i + 1) % m]) for i in range(m)):
            continue
        failed = removable_depth(P, [(c.word, d) for c, d in zip(curves, disks)], depth)
        if failed is None:
            return LevyClassification("removable-up-to-depth", depth, disks)
        if best is None:
            best = LevyClassification("degenerate", depth, disks, failed)
    if best is not None:
        return best
    return LevyClassification("not-degenerate", depth,
                              detail="complement is not disks around one face with "
                                     "homeomorphic disk preimages")


# -- obstruction analysis for cubic maps with two fixed critical points -------------

def _require_family(P: CoverPresentation):
    if P.degree != 3:
        raise PreconditionError(f"precondition (cubic) unmet: degree is {P.degree}")
    fixed = fixed_critical_points(P)
    if len(fixed) != 2:
        raise PreconditionError(
            f"precondition (two fixed critical points) unmet: found {len(fixed)}")


def _require_obstruction(P: CoverPresentation, G, require_stable: bool,
                         cache: LiftCache) -> Tuple[TransitionMatrix, EigenvalueBounds]:
    if not list(G):
        raise PreconditionError("precondition (nonempty multicurve) unmet: lambda is undefined")
    try:
        M = transition_matrix(P, G, require_stable=require_stable, cache=cache)
    except ObstructionError as exc:
        raise PreconditionError(f"precondition (F-stable) unmet: {exc}") from None
    if not is_irreducible(M):
        raise PreconditionError("precondition (irreducible matrix) unmet")
    bounds = leading_eigenvalue_bounds(M)
    if bounds.decision != GE1:
        raise PreconditionError(
            f"precondition (certified lambda >= 1) unmet: decision {bounds.decision}, "
            f"lambda in [{float(bounds.lower):.6g}, {float(bounds.upper):.6g}]")
    return M, bounds


@dataclass(frozen=True)
class FaceCase:
    face: Face
    marked: frozenset
    case: str
    total_chi: int
    boundary_lifts: int


@dataclass
class CaseReport:
    case: str
    faces: List[FaceCase]
    flag: bool = False
    removable_checked_to: Optional[int] = None

    @property
    def cases(self) -> List[str]:
        return sorted({fc.case for fc in self.faces}) or [self.case]

    def __str__(self):
        out = self.case
        if len(self.cases) > 1:
            out = "+".join(self.cases)
        if self.case == REMOVABLE_LEVY and self.removable_checked_to is not None:
            out += f" (disk preimages checked to depth {self.removable_checked_to})"
        if self.flag:
            out += " [diagnostic: disk faces disagree on the case]"
        return out


def classify_obstruction_case(P: CoverPresentation, G, depth: int = 1,
                              require_stable: bool = True,
                              cache: Optional[LiftCache] = None) -> CaseReport:
    """NewtonLike, QuadraticLike or RemovableLevy for an irreducible obstruction.

    Disk faces are scanned for a non-disk first preimage.  Every such face
    is classified; faces that disagree raise ``flag``.  When no face has a
    non-disk preimage the answer is RemovableLevy, with iterated preimages
    of the disk faces checked to ``depth``.
    """
    cache = cache or LiftCache(P)
    _require_family(P)
    _require_obstruction(P, G, require_stable, cache)
    n = P.n
    fixed = {j for j, _ in fixed_critical_points(P)}
    free_values = set(free_critical_values(P))
    critical_values = set(P.critical_values())
    tree = face_structure(list(G), n)
    found = []
    for f in tree.disk_faces():
        side = f.disk_side(n)
        topo = disk_preimage_topology(P, f.boundary[0], side)
        if topo.all_disks:
            continue
        if side & fixed:
            case = NEWTON_LIKE
        elif side & critical_values == free_values and len(free_values) == 2:
            case = QUADRATIC_LIKE
        else:
            case = UNEXPECTED
        found.append(FaceCase(f, side, case, topo.total_chi, len(topo.boundary_lifts)))
    if not found:
        faces = [(f.boundary[0].word, f.disk_side(n)) for f in tree.disk_faces()]
        failed = removable_depth(P, faces, depth) if faces else None
        if failed is not None:
            return CaseReport(UNEXPECTED, [], True, failed)
        return CaseReport(REMOVABLE_LEVY, [], False, depth)
    cases = {fc.case for fc in found}
    # a face with a fixed critical point gives the singleton Levy cycle of
    # the Newton-like theorem, so it takes precedence
    case = next(c for c in (UNEXPECTED, NEWTON_LIKE, QUADRATIC_LIKE) if c in cases)
    return CaseReport(case, found, len(cases) > 1 or UNEXPECTED in cases)


@dataclass
class StructuralReport:
    separating: List[CurveClass]
    wrong_preimages: List[Tuple[CurveClass, Tuple[int, ...]]]
    containment: bool

    @property
    def ok(self) -> bool:
        return not self.separating and not self.wrong_preimages and self.containment

    def __str__(self):
        lines = [
            f"(1) members separating the fixed critical points: {len(self.separating)}",
            f"(2) members without three degree-1 preimages: {len(self.wrong_preimages)}",
            f"(3) lift faces contained in faces of the multicurve: {self.containment}",
        ]
        for c in self.separating:
            lines.append(f"    separating: [{c}]")
        for c, degs in self.wrong_preimages:
            lines.append(f"    [{c}] preimage degrees {degs}")
        return "\n".join(lines)


def structural_checks(P: CoverPresentation, G, require_case: bool = True,
                      require_stable: bool = True,
                      cache: Optional[LiftCache] = None) -> StructuralReport:
    """Separation, preimage count and face containment for a quadratic-like obstruction."""
    cache = cache or LiftCache(P)
    _require_family(P)
    if require_case:
        rep = classify_obstruction_case(P, G, require_stable=require_stable, cache=cache)
        if QUADRATIC_LIKE not in rep.cases:
            raise PreconditionError(f"precondition (QuadraticLike) unmet: case is {rep.case}")
    a, b = [j for j, _ in fixed_critical_points(P)]
    members = _members(G)
    separating = [c for c in members if c.partition.separates(a, b)]
    wrong = []
    for c in members:
        lifts = cache.lifts(c)
        degs = tuple(sorted(l.degree for l in lifts))
        if degs != (1, 1, 1):
            wrong.append((c, degs))
    return StructuralReport(separating, wrong, lift_faces_contained(P, members, cache))


@dataclass
class Verdict:
    status: str
    witness: Optional[LevyCycle]
    matrix: TransitionMatrix
    bounds: EigenvalueBounds
    levy: LevyReport
    diagnostics: Dict[str, str] = field(default_factory=dict)

    @property
    def confirmed(self) -> bool:
        return self.status == CONFIRMED

    def __str__(self):
        if self.confirmed:
            return f"{self.status}: Levy cycle {self.witness}"
        lines = [self.status]
        lines += [f"  {k}: {v}" for k, v in self.diagnostics.items()]
        return "\n".join(lines)


def verify_main_theorem(P: CoverPresentation, G, require_stable: bool = True,
                        cache: Optional[LiftCache] = None) -> Verdict:
    """Check that an irreducible obstruction of a map in the family has a Levy cycle.

    A missing Levy cycle is reported as ``COUNTEREXAMPLE-FLAG`` with the
    matrix and lift data; it means a bug or an invalid input.
    """
    cache = cache or LiftCache(P)
    rep = validate_presentation(P)
    if not rep.ok:
        raise PreconditionError(f"precondition (valid presentation) unmet:\n{rep}")
    _require_family(P)
    M, bounds = _require_obstruction(P, G, require_stable, cache)
    levy = find_levy_cycles(P, G, cache)
    if levy.cycles:
        return Verdict(CONFIRMED, levy.cycles[0], M, bounds, levy)
    diag = {
        "matrix": str(M).replace("\n", " | "),
        "lambda": f"[{bounds.lower}, {bounds.upper}]",
    }
    for c in M.curves:
        diag[f"lifts of [{c}]"] = ", ".join(
            f"{l.kind}/deg {l.degree}" + (f" [{l.curve}]" if l.curve else "")
            for l in cache.lifts(c))
    return Verdict(COUNTEREXAMPLE, None, M, bounds, levy, diag)
