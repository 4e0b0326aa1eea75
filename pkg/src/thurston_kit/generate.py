"""Random presentations for fuzzing.

Cubic maps with two simple fixed critical points and quadratic maps are
drawn by choosing postcritical dynamics and sheet permutations that fit
them, building a presentation from that branch data and precomposing with
a random pure braid.  Every output is validated before it is yielded.
"""
from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass
from typing import Iterator, Optional

from .build import (
    ConstructionError,
    derived_last_perm,
    presentation_from_constellation,
    random_pure_braid,
    twist_presentation,
)
from .cover import CoverPresentation, cycles, perm_from_cycles, validate_presentation
from .sphere_group import MarkedSet

SEED_ENV = "THURSTON_KIT_SEED"


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 0
    count: int = 1
    max_free_points: int = 3
    braid_length: int = 2

    @classmethod
    def from_env(cls, **kw) -> "GeneratorConfig":
        if os.environ.get(SEED_ENV):
            kw["seed"] = int(os.environ[SEED_ENV])
        return cls(**kw)


def _transposition(d, rng):
    a, b = rng.sample(range(d), 2)
    return perm_from_cycles([(a, b)], d)


def _three_cycle(rng):
    return rng.choice([(1, 2, 0), (2, 0, 1)])


def _reachable(sources, dyn):
    seen, todo = set(), list(sources)
    while todo:
        x = todo.pop()
        if x not in seen:
            seen.add(x)
            todo.append(dyn[x])
    return seen


def _try_cubic(rng: random.Random, max_free: int, braid_length: int) -> Optional[CoverPresentation]:
    d = 3
    m = rng.randint(2, max(2, max_free))
    n = 2 + m
    points = list(range(n))
    rng.shuffle(points)
    c1, c2 = points[0], points[1]
    free = points[2:]
    double = rng.random() < 0.15
    if double:
        values = [rng.choice(free)]
    else:
        if len(free) < 2:
            return None
        values = rng.sample(free, 2)

    dyn = [0] * n
    dyn[c1], dyn[c2] = c1, c2
    for x in free:
        dyn[x] = rng.choice(points)
    if _reachable(values, dyn) | {c1, c2} != set(range(n)):
        return None

    shape = {}
    shape[c1] = "t"
    shape[c2] = "t"
    for v in values:
        shape[v] = "c" if double else "t"
    last = n - 1
    perms = []
    for i in range(n - 1):
        kind = shape.get(i)
        if kind == "t":
            perms.append(_transposition(d, rng))
        elif kind == "c":
            perms.append(_three_cycle(rng))
        else:
            perms.append(tuple(range(d)))
    sigma_last = derived_last_perm(perms, d)
    want = shape.get(last)
    lens = sorted(len(c) for c in cycles(sigma_last))
    if {"t": [1, 2], "c": [3], None: [1, 1, 1]}[want] != lens:
        return None
    all_perms = perms + [sigma_last]

    assignment = [None] * n
    taken = set()
    for c in (c1, c2):
        crit = [cy for cy in cycles(all_perms[c]) if len(cy) == 2][0]
        assignment[c] = crit
        taken.add((c, crit))
    for x in free:
        options = [cy for cy in cycles(all_perms[dyn[x]]) if (dyn[x], cy) not in taken]
        if not options:
            return None
        cy = rng.choice(options)
        # a third fixed critical point is outside the family
        if dyn[x] == x and len(cy) > 1:
            return None
        assignment[x] = cy
        taken.add((dyn[x], cy))

    marked = MarkedSet.standard(n)
    try:
        P = presentation_from_constellation(d, marked, tuple(dyn), perms, assignment, rng=rng)
    except ConstructionError:
        return None
    return twist_presentation(P, random_pure_braid(n, rng.randint(0, braid_length), rng))


def _try_quadratic(rng: random.Random, max_free: int, braid_length: int) -> Optional[CoverPresentation]:
    d = 2
    n = rng.randint(4, max(4, max_free + 2))
    values = rng.sample(range(n), 2)
    dyn = [rng.randrange(n) for _ in range(n)]
    if _reachable(values, dyn) != set(range(n)):
        return None
    perms = [(1, 0) if i in values else (0, 1) for i in range(n - 1)]
    sigma_last = derived_last_perm(perms, d)
    if (sigma_last == (1, 0)) != (n - 1 in values):
        return None
    all_perms = perms + [sigma_last]
    assignment = [None] * n
    taken = set()
    for x in range(n):
        options = [cy for cy in cycles(all_perms[dyn[x]]) if (dyn[x], cy) not in taken]
        if not options:
            return None
        cy = rng.choice(options)
        assignment[x] = cy
        taken.add((dyn[x], cy))
    marked = MarkedSet.standard(n)
    try:
        P = presentation_from_constellation(d, marked, tuple(dyn), perms, assignment, rng=rng)
    except ConstructionError:
        return None
    return twist_presentation(P, random_pure_braid(n, rng.randint(0, braid_length), rng))


def _stream(trial, cfg: GeneratorConfig) -> Iterator[CoverPresentation]:
    rng = random.Random(cfg.seed)
    made = 0
    for _ in itertools.count():
        if made >= cfg.count:
            return
        P = trial(rng, cfg.max_free_points, cfg.braid_length)
        if P is None:
            continue
        rep = validate_presentation(P)
        if not rep.ok:
            raise AssertionError(f"generator produced an invalid presentation:\n{rep}")
        made += 1
        yield P


def generate_random_cubic_two_fixed(cfg: GeneratorConfig) -> Iterator[CoverPresentation]:
    """Cubic presentations with exactly two simple fixed critical points."""
    return _stream(_try_cubic, cfg)


def generate_random_quadratic(cfg: GeneratorConfig) -> Iterator[CoverPresentation]:
    return _stream(_try_quadratic, cfg)
