"""Plain-text presentation and curve files.

A presentation file looks like::

    degree 3
    marked p1 p2 p3 p4
    dynamics p1>p1 p2>p2 p3>p4 p4>p3
    perm p1 (1 2)            # one-based sheets; omitted sheets are fixed
    perm p2 (2 3)
    perm p3 (1 3)
    rest p1 1: g2 G1         # restriction of generator p1 at sheet 1
    rest p1 2:               # empty word
    assign p1 = p1@(1 2)     # marked preimage: cycle over the image point

The permutation of the last marked point is derived and must be left out.
Missing ``perm`` and ``rest`` lines mean identity; every point needs an
``assign`` line.  An optional block::

    multicurve
    g1 g2
    end

lists curves, one word per line, as does a separate curves file.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .cover import CoverPresentation, ValidationReport, cycles, validate_presentation
from .sphere_group import MarkedSet, Word, WordError, format_word, parse_word

PathLike = Union[str, Path]


class PresentationParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class PresentationValidationError(ValueError):
    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__(f"presentation is not valid:\n{report}")


@dataclass(frozen=True)
class PresentationFile:
    presentation: CoverPresentation
    multicurve: Optional[Tuple[Word, ...]] = None


_CYCLE = re.compile(r"\(([^()]*)\)")
_LABEL = re.compile(r"^[^\s>@=:()#]+$")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _parse_cycles(text: str, d: int, lineno: int) -> Tuple[int, ...]:
    rest = _CYCLE.sub("", text).strip()
    if rest:
        raise PresentationParseError(f"cannot read permutation {text!r}", lineno)
    perm = list(range(d))
    seen = set()
    for body in _CYCLE.findall(text):
        try:
            items = [int(x) - 1 for x in body.split()]
        except ValueError:
            raise PresentationParseError(f"bad sheet in cycle ({body})", lineno) from None
        for x in items:
            if not 0 <= x < d:
                raise PresentationParseError(f"sheet {x + 1} out of range 1..{d}", lineno)
            if x in seen:
                raise PresentationParseError(f"sheet {x + 1} repeated in permutation", lineno)
            seen.add(x)
        for a, b in zip(items, items[1:] + items[:1]):
            perm[a] = b
    return tuple(perm)


def parse_presentation(text: str) -> PresentationFile:
    """Parse presentation text; raises ``PresentationParseError`` with line numbers."""
    degree = None
    labels: Optional[Tuple[str, ...]] = None
    dynamics: Optional[Dict[str, str]] = None
    perms: Dict[str, Tuple[Tuple[int, ...], int]] = {}
    rests: Dict[Tuple[str, int], Tuple[str, int]] = {}
    assigns: Dict[str, Tuple[str, str, int]] = {}
    curves: Optional[List[Word]] = None
    curve_lines: List[Tuple[str, int]] = []
    in_block = False

    def need(what, lineno):
        if what is None:
            raise PresentationParseError("'degree' and 'marked' lines must come first", lineno)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        if in_block:
            if line == "end":
                in_block = False
            else:
                curve_lines.append((line, lineno))
            continue
        key, _, body = line.partition(" ")
        body = body.strip()
        if key == "degree":
            if degree is not None:
                raise PresentationParseError("duplicate 'degree' line", lineno)
            if not body.isdigit() or int(body) < 2:
                raise PresentationParseError(f"degree must be an integer >= 2, got {body!r}", lineno)
            degree = int(body)
        elif key == "marked":
            if labels is not None:
                raise PresentationParseError("duplicate 'marked' line", lineno)
            labels = tuple(body.split())
            for lab in labels:
                if not _LABEL.match(lab):
                    raise PresentationParseError(f"bad marked-point label {lab!r}", lineno)
            try:
                MarkedSet(labels)
            except ValueError as exc:
                raise PresentationParseError(str(exc), lineno) from None
        elif key == "dynamics":
            need(labels, lineno)
            if dynamics is not None:
                raise PresentationParseError("duplicate 'dynamics' line", lineno)
            dynamics = {}
            for tok in body.split():
                a, sep, b = tok.partition(">")
                if not sep or a not in labels or b not in labels:
                    raise PresentationParseError(f"bad dynamics entry {tok!r}", lineno)
                if a in dynamics:
                    raise PresentationParseError(f"dynamics of {a} given twice", lineno)
                dynamics[a] = b
            missing = [x for x in labels if x not in dynamics]
            if missing:
                raise PresentationParseError(f"dynamics missing for {' '.join(missing)}", lineno)
        elif key == "perm":
            need(labels, lineno)
            need(degree, lineno)
            pt, _, cyc = body.partition(" ")
            if pt not in labels:
                raise PresentationParseError(f"unknown marked point {pt!r}", lineno)
            if pt == labels[-1]:
                raise PresentationParseError(
                    f"permutation of the last marked point {pt} is derived and must be omitted", lineno)
            if pt in perms:
                raise PresentationParseError(f"duplicate 'perm {pt}' line", lineno)
            perms[pt] = (_parse_cycles(cyc, degree, lineno), lineno)
        elif key == "rest":
            need(labels, lineno)
            need(degree, lineno)
            head, sep, word = body.partition(":")
            parts = head.split()
            if not sep or len(parts) != 2:
                raise PresentationParseError("expected 'rest <point> <sheet>: <word>'", lineno)
            pt, sheet = parts
            if pt not in labels[:-1]:
                raise PresentationParseError(f"{pt!r} is not a generator point", lineno)
            if not sheet.isdigit() or not 1 <= int(sheet) <= degree:
                raise PresentationParseError(f"sheet {sheet!r} out of range 1..{degree}", lineno)
            k = (pt, int(sheet) - 1)
            if k in rests:
                raise PresentationParseError(f"duplicate 'rest {pt} {sheet}' line", lineno)
            rests[k] = (word.strip(), lineno)
        elif key == "assign":
            need(labels, lineno)
            m = re.match(r"^(\S+)\s*=\s*([^@\s]+)@(\(.*\))$", body)
            if not m:
                raise PresentationParseError("expected 'assign <point> = <image>@(<cycle>)'", lineno)
            pt, img, cyc = m.groups()
            if pt not in labels or img not in labels:
                raise PresentationParseError(f"unknown marked point in {body!r}", lineno)
            if pt in assigns:
                raise PresentationParseError(f"duplicate 'assign {pt}' line", lineno)
            assigns[pt] = (img, cyc, lineno)
        elif key == "multicurve":
            if curves is not None or curve_lines:
                raise PresentationParseError("duplicate 'multicurve' block", lineno)
            curves = []
            in_block = True
        else:
            raise PresentationParseError(f"unknown keyword {key!r}", lineno)

    if in_block:
        raise PresentationParseError("'multicurve' block is not closed by 'end'")
    for what, value in (("degree", degree), ("marked", labels), ("dynamics", dynamics)):
        if value is None:
            raise PresentationParseError(f"missing '{what}' line")
    d, n = degree, len(labels)
    marked = MarkedSet(labels)
    perm_list = [perms.get(lab, (tuple(range(d)), 0))[0] for lab in labels[:-1]]
    restrictions = []
    for lab in labels[:-1]:
        row = []
        for k in range(d):
            text_word, lineno = rests.get((lab, k), ("", 0))
            try:
                row.append(parse_word(text_word, n))
            except WordError as exc:
                raise PresentationParseError(str(exc), lineno) from None
        restrictions.append(tuple(row))
    dyn = tuple(marked.index(dynamics[lab]) for lab in labels)

    partial = CoverPresentation(d, marked, dyn, tuple(perm_list), tuple(restrictions),
                                tuple(() for _ in labels))
    all_perms = partial.all_perms
    assignment = []
    for j, lab in enumerate(labels):
        if lab not in assigns:
            raise PresentationParseError(
                f"missing line 'assign {lab} = {dynamics[lab]}@(...)'")
        img, cyc_text, lineno = assigns[lab]
        if img != dynamics[lab]:
            raise PresentationParseError(
                f"assign {lab} names {img} but the dynamics send {lab} to {dynamics[lab]}", lineno)
        bodies = _CYCLE.findall(cyc_text)
        if len(bodies) != 1:
            raise PresentationParseError("an assignment names exactly one cycle", lineno)
        try:
            items = tuple(int(x) - 1 for x in bodies[0].split())
        except ValueError:
            raise PresentationParseError(f"bad cycle {cyc_text}", lineno) from None
        if not items:
            raise PresentationParseError("empty cycle in assignment", lineno)
        lo = items.index(min(items))
        items = items[lo:] + items[:lo]
        if items not in cycles(all_perms[dyn[j]]):
            raise PresentationParseError(
                f"{cyc_text} is not a cycle of the permutation over {img}", lineno)
        assignment.append(items)

    P = CoverPresentation(d, marked, dyn, tuple(perm_list), tuple(restrictions), tuple(assignment))
    if curves is not None:
        for text_word, lineno in curve_lines:
            try:
                curves.append(parse_word(text_word, n))
            except WordError as exc:
                raise PresentationParseError(str(exc), lineno) from None
        return PresentationFile(P, tuple(curves))
    return PresentationFile(P)


def _format_cycles(perm: Sequence[int]) -> str:
    return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cycles(perm) if len(c) > 1)


def dump_presentation(P: CoverPresentation, multicurve: Optional[Sequence[Word]] = None) -> str:
    labels = P.marked.labels
    lines = [
        f"degree {P.degree}",
        "marked " + " ".join(labels),
        "dynamics " + " ".join(f"{labels[j]}>{labels[P.dynamics[j]]}" for j in range(P.n)),
    ]
    for j, p in enumerate(P.perms):
        lines.append(f"perm {labels[j]} {_format_cycles(p)}".rstrip())
    for j, row in enumerate(P.restrictions):
        for k, w in enumerate(row):
            lines.append(f"rest {labels[j]} {k + 1}: {format_word(w)}".rstrip())
    for j, cyc in enumerate(P.assignment):
        body = " ".join(str(x + 1) for x in cyc)
        lines.append(f"assign {labels[j]} = {labels[P.dynamics[j]]}@({body})")
    if multicurve is not None:
        lines.append("multicurve")
        lines.extend(format_word(w) for w in multicurve)
        lines.append("end")
    return "\n".join(lines) + "\n"


def read_presentation_file(path: PathLike) -> PresentationFile:
    return parse_presentation(Path(path).read_text())


def load_presentation(path: PathLike, validate: bool = True, **checks) -> CoverPresentation:
    """Read a presentation; syntax errors and validation failures raise distinct errors."""
    P = read_presentation_file(path).presentation
    if validate:
        rep = validate_presentation(P, **checks)
        if not rep.ok:
            raise PresentationValidationError(rep)
    return P


def save_presentation(P: CoverPresentation, path: PathLike,
                      multicurve: Optional[Sequence[Word]] = None):
    Path(path).write_text(dump_presentation(P, multicurve))


def parse_curves(text: str, n: Optional[int] = None) -> List[Word]:
    """One word per line; an optional ``multicurve`` ... ``end`` wrapper is ignored."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line or line in ("multicurve", "end"):
            continue
        try:
            out.append(parse_word(line, n))
        except WordError as exc:
            raise PresentationParseError(str(exc), lineno) from None
    return out


def load_curves(path: PathLike, n: Optional[int] = None) -> List[Word]:
    return parse_curves(Path(path).read_text(), n)


def save_curves(words: Sequence[Word], path: PathLike):
    Path(path).write_text("".join(format_word(w) + "\n" for w in words))
