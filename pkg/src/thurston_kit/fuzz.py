"""Randomised checking of the Levy-cycle theorem.

Each generated presentation is saturated from the standard seeds.  Every
invariant set is split into the strongly connected blocks of its matrix;
a block with certified ``lambda >= 1`` is an irreducible obstruction and
must contain a Levy cycle.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, List, Optional

from .cover import CoverPresentation
from .curves import LiftCache, pullback_saturate, standard_seeds
from .generate import GeneratorConfig, generate_random_cubic_two_fixed, generate_random_quadratic
from .obstruction import (
    COUNTEREXAMPLE,
    NEWTON_LIKE,
    QUADRATIC_LIKE,
    UNEXPECTED,
    CaseReport,
    StructuralReport,
    TransitionMatrix,
    Verdict,
    classify_obstruction_case,
    find_levy_cycles,
    levy_cycle_bounds,
    structural_checks,
    transition_matrix,
    verify_main_theorem,
)
from .spectral import GE1, EigenvalueBounds, cyclic_components, leading_eigenvalue_bounds


@dataclass
class ObstructionRecord:
    curves: tuple
    matrix: TransitionMatrix
    bounds: EigenvalueBounds
    verdict: Optional[Verdict] = None
    case: Optional[CaseReport] = None
    structure: Optional[StructuralReport] = None
    is_levy_cycle: Optional[bool] = None


@dataclass
class InstanceResult:
    index: int
    presentation: CoverPresentation
    timeout: bool = False
    seed_timeouts: int = 0
    invariant_sets: int = 0
    non_laminar: int = 0
    obstructions: List[ObstructionRecord] = field(default_factory=list)
    flags: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)


def analyze_instance(P: CoverPresentation, index: int = 0, depth: int = 2,
                     max_iter: int = 64, max_size: int = 256,
                     max_word_length: int = 512) -> InstanceResult:
    out = InstanceResult(index, P)
    cache = LiftCache(P)
    seen_sets, seen_blocks = set(), set()
    for seed in standard_seeds(P.n):
        res = pullback_saturate(P, [seed], max_iter=max_iter, max_size=max_size, cache=cache,
                               max_word_length=max_word_length)
        if res.status == "timeout":
            out.timeout = True
            out.seed_timeouts += 1
            continue
        if not res.curves or res.curves in seen_sets:
            continue
        seen_sets.add(res.curves)
        if not res.laminar:
            out.non_laminar += 1
            continue
        out.invariant_sets += 1
        M = transition_matrix(P, res.curves, cache=cache)
        for blk in cyclic_components(M.entries):
            sub = M.restrict(blk)
            key = frozenset(sub.curves)
            if key in seen_blocks:
                continue
            seen_blocks.add(key)
            bounds = leading_eigenvalue_bounds(sub)
            if bounds.decision != GE1:
                continue
            rec = ObstructionRecord(sub.curves, sub, bounds)
            out.obstructions.append(rec)
            _check_obstruction(P, rec, depth, cache, out)
    return out


def _check_obstruction(P, rec: ObstructionRecord, depth: int, cache: LiftCache,
                       out: InstanceResult):
    G = rec.curves
    levy = find_levy_cycles(P, G, cache)
    for cyc in levy.cycles:
        if levy_cycle_bounds(P, cyc).decision != GE1:
            out.flags.append(f"Levy cycle {cyc} has a matrix without certified lambda >= 1")
    if P.degree == 2:
        rec.is_levy_cycle = any(set(c.curves) == set(G) for c in levy.cycles)
        if not rec.is_levy_cycle:
            out.flags.append(f"{COUNTEREXAMPLE}: quadratic irreducible obstruction "
                             f"{[str(c) for c in G]} is not a Levy cycle")
        return
    rec.verdict = verify_main_theorem(P, G, require_stable=False, cache=cache)
    if rec.verdict.status == COUNTEREXAMPLE:
        out.flags.append(f"{COUNTEREXAMPLE}: no Levy cycle in {[str(c) for c in G]}\n{rec.verdict}")
    rec.case = classify_obstruction_case(P, G, depth=depth, require_stable=False, cache=cache)
    if rec.case.flag or rec.case.case == UNEXPECTED:
        out.notes.append(f"case diagnostic for {[str(c) for c in G]}: {rec.case}")
    if rec.case.case == NEWTON_LIKE:
        for fc in rec.case.faces:
            if fc.case != NEWTON_LIKE:
                continue
            c = fc.face.boundary[0]
            self_lift = any(l.kind == "essential" and l.degree == 1 and l.curve == c
                            for l in cache.lifts(c))
            if c not in G or not self_lift:
                out.flags.append(f"{COUNTEREXAMPLE}: NewtonLike face boundary [{c}] "
                                 "is not a Levy cycle of the obstruction")
    if QUADRATIC_LIKE in rec.case.cases:
        rec.structure = structural_checks(P, G, require_case=False, cache=cache)
        if not rec.structure.ok:
            out.flags.append(f"{COUNTEREXAMPLE}: quadratic-like structure fails\n{rec.structure}")


@dataclass
class FuzzSummary:
    results: List[InstanceResult]
    seconds: float

    @property
    def count(self) -> int:
        return len(self.results)

    @property
    def timeouts(self) -> int:
        return sum(r.timeout for r in self.results)

    @property
    def obstructions(self) -> int:
        return sum(len(r.obstructions) for r in self.results)

    @property
    def flags(self) -> List[str]:
        return [f"instance {r.index}: {f}" for r in self.results for f in r.flags]

    def case_counts(self) -> dict:
        out = {}
        for r in self.results:
            for o in r.obstructions:
                key = "+".join(o.case.cases) if o.case else "degree-2"
                out[key] = out.get(key, 0) + 1
        return out

    def __str__(self):
        lines = [
            f"instances: {self.count}",
            f"timeouts: {self.timeouts} ({100 * self.timeouts / max(1, self.count):.1f}%)",
            f"certified irreducible obstructions: {self.obstructions}",
            f"cases: {self.case_counts()}",
            f"flags: {len(self.flags)}",
            f"time: {self.seconds:.1f}s",
        ]
        return "\n".join(lines + self.flags)


def run_fuzz(presentations: Iterable[CoverPresentation], depth: int = 2, max_iter: int = 64,
             max_size: int = 256, max_word_length: int = 512) -> FuzzSummary:
    t0 = time.perf_counter()
    results = [analyze_instance(P, i, depth, max_iter, max_size, max_word_length)
               for i, P in enumerate(presentations)]
    return FuzzSummary(results, time.perf_counter() - t0)


def fuzz_cubic(cfg: GeneratorConfig, depth: int = 2, **kw) -> FuzzSummary:
    return run_fuzz(generate_random_cubic_two_fixed(cfg), depth, **kw)


def fuzz_quadratic(cfg: GeneratorConfig, depth: int = 2, **kw) -> FuzzSummary:
    return run_fuzz(generate_random_quadratic(cfg), depth, **kw)
