"""The shipped example corpus and its expected properties.

Each entry names a presentation file in the ``corpus`` data directory, an
optional curves file (otherwise the file's own ``multicurve`` block is
used) and the facts that must hold for it.  ``check_entry`` recomputes
them from scratch.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import List, Optional, Tuple

from .cover import CoverPresentation, fixed_critical_points, validate_presentation
from .curves import LiftCache, is_stable
from .io import load_curves, read_presentation_file
from .obstruction import (
    NEWTON_LIKE,
    QUADRATIC_LIKE,
    REMOVABLE_LEVY,
    classify_levy,
    classify_obstruction_case,
    find_levy_cycles,
    structural_checks,
    transition_matrix,
    verify_main_theorem,
)
from .spectral import GE1, LT1, leading_eigenvalue_bounds
from .sphere_group import canonical_curve_class


def corpus_dir() -> Path:
    return Path(str(resources.files(__package__) / "corpus"))


@dataclass(frozen=True)
class Expected:
    valid: bool = True
    matrix: Optional[Tuple[Tuple[str, ...], ...]] = None
    decision: Optional[str] = None
    levy: Optional[bool] = None
    case: Optional[str] = None
    levy_kind: Optional[str] = None
    family: Optional[bool] = None  # cubic with exactly two fixed critical points


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    file: str
    description: str
    curves: Optional[str] = None
    expected: Expected = field(default_factory=Expected)

    @property
    def path(self) -> Path:
        return corpus_dir() / self.file

    def load(self) -> CoverPresentation:
        return read_presentation_file(self.path).presentation

    def multicurve(self) -> Optional[list]:
        P = self.load()
        if self.curves is not None:
            words = load_curves(corpus_dir() / self.curves, P.n)
        else:
            words = read_presentation_file(self.path).multicurve
        if words is None:
            return None
        return [canonical_curve_class(w, P.n) for w in words]


CORPUS: Tuple[CorpusEntry, ...] = (
    CorpusEntry("z3", "z3.cover", "z -> z^3: two fixed points of local degree 3, nothing else marked"),
    CorpusEntry("basilica", "basilica.cover",
                "z -> z^2 - 1: critical period-two cycle and a fixed critical point at infinity"),
    CorpusEntry("basilica-selfmating", "basilica-selfmating.cover",
                "basilica mated with itself; the curve around both critical values is a Levy curve",
                curves="levy.curves",
                expected=Expected(matrix=(("1",),), decision=GE1, levy=True)),
    CorpusEntry("basilica-selfmating-equator", "basilica-selfmating.cover",
                "the equator of the self-mating pulls back to itself by degree two",
                curves="equator.curves",
                expected=Expected(matrix=(("1/2",),), decision=LT1, levy=False)),
    CorpusEntry("newton-like", "newton-like.cover",
                "cubic with two fixed critical points; the disk holds a fixed critical point "
                "and a free critical value",
                expected=Expected(matrix=(("1",),), decision=GE1, levy=True, case=NEWTON_LIKE, family=True)),
    CorpusEntry("quadratic-like", "quadratic-like.cover",
                "cubic with two fixed critical points; a disk holds both free critical values "
                "and a second disk holds their period-two partners",
                expected=Expected(matrix=(("0", "1"), ("1", "0")), decision=GE1, levy=True,
                                  case=QUADRATIC_LIKE, family=True)),
    CorpusEntry("removable-levy", "removable-levy.cover",
                "cubic with two fixed critical points; a Levy two-cycle around pairs of a "
                "period-four orbit, each disk holding at most one critical value",
                expected=Expected(matrix=(("0", "1"), ("1", "0")), decision=GE1, levy=True,
                                  case=REMOVABLE_LEVY, levy_kind="removable-up-to-depth", family=True)),
    CorpusEntry("degree-two-lift", "degree-two-lift.cover",
                "cubic with two fixed critical points; the only essential lift of the curve "
                "is itself, by degree two",
                expected=Expected(matrix=(("1/2",),), decision=LT1, levy=False, family=True)),
    CorpusEntry("triple-lift", "triple-lift.cover",
                "cubic whose four critical values are fixed; the curve splitting them in pairs "
                "has three degree-1 lifts isotopic to itself",
                expected=Expected(matrix=(("3",),), decision=GE1, levy=True, family=False)),
)


def get_entry(name: str) -> CorpusEntry:
    for e in CORPUS:
        if e.name == name:
            return e
    raise KeyError(f"no corpus entry named {name!r}")


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""

    def __str__(self):
        return f"{'ok  ' if self.ok else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


def check_entry(entry: CorpusEntry, depth: int = 3) -> List[Check]:
    """Recompute every expected property of one entry."""
    out: List[Check] = []
    exp = entry.expected
    P = entry.load()
    rep = validate_presentation(P)
    out.append(Check("valid", rep.ok == exp.valid, "" if rep.ok else str(rep)))
    if exp.family is not None:
        inside = P.degree == 3 and len(fixed_critical_points(P)) == 2
        out.append(Check("two fixed critical points" if exp.family else "outside the family",
                         inside == exp.family))
    G = entry.multicurve()
    if G is None or exp.matrix is None:
        return out
    cache = LiftCache(P)
    out.append(Check("F-stable", is_stable(P, G, cache)))
    M = transition_matrix(P, G, cache=cache)
    got = tuple(tuple(str(x) for x in row) for row in M.entries)
    out.append(Check("matrix", got == exp.matrix, f"got {got}"))
    bounds = leading_eigenvalue_bounds(M)
    if exp.decision is not None:
        out.append(Check("decision", bounds.decision == exp.decision, bounds.decision))
    levy = find_levy_cycles(P, G, cache)
    if exp.levy is not None:
        out.append(Check("Levy cycle", bool(levy.cycles) == exp.levy,
                         "; ".join(str(c) for c in levy.cycles)))
    if exp.levy_kind is not None:
        kinds = [classify_levy(P, G, c, depth).kind for c in levy.cycles]
        out.append(Check("Levy classification", exp.levy_kind in kinds, ", ".join(kinds)))
    if exp.case is not None:
        case = classify_obstruction_case(P, G, depth=depth, cache=cache)
        out.append(Check("case", case.case == exp.case and not case.flag, str(case)))
        verdict = verify_main_theorem(P, G, cache=cache)
        out.append(Check("main theorem", verdict.confirmed, str(verdict)))
        if exp.case == NEWTON_LIKE:
            boundary = {fc.face.boundary[0] for fc in case.faces}
            singles = {c.curves[0] for c in levy.cycles if len(c) == 1}
            out.append(Check("disk boundary is a Levy cycle", bool(boundary) and boundary <= singles))
        if exp.case == QUADRATIC_LIKE:
            s = structural_checks(P, G, cache=cache)
            out.append(Check("structure", s.ok, str(s).replace("\n", "; ")))
    return out

