"""Build valid presentations from branch data.

Given sheet permutations with product one, the domain sphere of the cover
is assembled from the Schreier graph of the monodromy: its faces are the
cycles of the peripheral loops.  A spanning tree of that graph and the dual
tree of faces give a standard system of peripheral loops of the domain;
forgetting unmarked preimages and sorting the rest by Hurwitz moves yields
an identification of the domain with the base, and hence restriction words.

Any two identifications differ by a pure mapping class, so the output is
one Thurston map with the requested branch data.  ``pure_braid`` and
``twist_presentation`` move around inside that family.
"""
from __future__ import annotations

import random
from typing import Dict, Optional, Sequence

from .cover import (
    CoverPresentation,
    compose,
    cycles,
    identity_perm,
    invert_perm,
    normalize_cycle,
    validate_presentation,
)
from .sphere_group import MarkedSet, Word, free_reduce, inverse, multiply, peripheral_word


class ConstructionError(ValueError):
    pass


def derived_last_perm(perms: Sequence[Sequence[int]], d: int):
    prod = identity_perm(d)
    for p in perms:
        prod = compose(prod, p)
    return invert_perm(prod)


def presentation_from_constellation(degree: int, marked: MarkedSet, dynamics, perms,
                                    assignment, rng: Optional[random.Random] = None,
                                    check: bool = True) -> CoverPresentation:
    """Presentation with the given monodromy, dynamics and marked preimages.

    ``perms`` holds the permutations of the first ``n-1`` points (0-based
    sheets); ``assignment[j]`` is the cycle, over ``dynamics[j]``, that is
    the marked point ``j``.
    """
    d, n = degree, marked.n
    perms = [tuple(p) for p in perms]
    if len(perms) != n - 1:
        raise ConstructionError(f"need {n - 1} permutations, got {len(perms)}")
    all_perms = perms + [derived_last_perm(perms, d)]
    assignment = tuple(normalize_cycle(tuple(c)) for c in assignment)
    owner = {}
    for j, c in enumerate(assignment):
        key = (dynamics[j], c)
        if c not in cycles(all_perms[dynamics[j]]):
            raise ConstructionError(f"{marked.labels[j]}: {c} is not a cycle over {marked.labels[dynamics[j]]}")
        if key in owner:
            raise ConstructionError(f"cycle {c} over {marked.labels[dynamics[j]]} assigned twice")
        owner[key] = j

    # Schreier graph: edge (i, k) runs from sheet k to perms[i-1][k]
    edges = [(i, k) for i in range(1, n) for k in range(d)]
    order = list(edges)
    if rng is not None:
        rng.shuffle(order)
    transversal: Dict[int, Word] = {0: ()}
    tree = set()
    grew = True
    while grew:
        grew = False
        for (i, k) in order:
            if (i, k) in tree:
                continue
            t = perms[i - 1][k]
            if k in transversal and t not in transversal:
                transversal[t] = multiply((i,), transversal[k])
            elif t in transversal and k not in transversal:
                transversal[k] = multiply((-i,), transversal[t])
            else:
                continue
            tree.add((i, k))
            grew = True
    if len(transversal) != d:
        raise ConstructionError("monodromy is not transitive")

    def schreier(edge) -> Word:
        i, k = edge
        return multiply(inverse(transversal[perms[i - 1][k]]), (i,), transversal[k])

    # faces: (point, cycle, walk) with walk a list of (edge, +-1)
    faces = []
    for j in range(n):
        for cyc in cycles(all_perms[j]):
            walk = []
            if j < n - 1:
                walk = [((j + 1, k), 1) for k in cyc]
            else:
                for k in cyc:
                    cur = k
                    for i in range(1, n):
                        u = invert_perm(perms[i - 1])[cur]
                        walk.append(((i, u), -1))
                        cur = u
            faces.append((j, cyc, walk))

    # dual tree over the non-tree edges
    where: Dict[tuple, list] = {}
    for f, (_, _, walk) in enumerate(faces):
        for e, s in walk:
            if e not in tree:
                where.setdefault(e, []).append((f, s))
    for e, occ in where.items():
        if len(occ) != 2 or occ[0][0] == occ[1][0]:
            raise ConstructionError("face structure is not a planar tree; check Riemann-Hurwitz")
    nfaces = len(faces)
    if len(where) != nfaces - 1:
        raise ConstructionError("branch data does not describe a sphere")

    root = rng.randrange(nfaces) if rng is not None else 0
    parent_edge: Dict[int, tuple] = {}
    seen = {root}
    stack = [root]
    while stack:
        f = stack.pop()
        for e, s in _group_letters(faces[f][2], tree):
            for g, _ in where[e]:
                if g not in seen:
                    seen.add(g)
                    parent_edge[g] = e
                    stack.append(g)
    if len(seen) != nfaces:
        raise ConstructionError("dual graph is disconnected")

    # rotate each face word so that its parent letter comes first
    rho_x: Dict[int, list] = {}
    children: Dict[int, list] = {f: [] for f in range(nfaces)}
    sign_in_face: Dict[int, int] = {}
    for f in range(nfaces):
        letters = _group_letters(faces[f][2], tree)
        if f != root:
            pos = [t for t, (e, _) in enumerate(letters) if e == parent_edge[f]][0]
            letters = letters[pos:] + letters[:pos]
            sign_in_face[f] = letters[0][1]
            rest = letters[1:]
        else:
            rest = letters
        rho_x[f] = letters
        for e, _ in rest:
            (g1, _), (g2, _) = where[e]
            children[f].append(g2 if g1 == f else g1)

    def expand(f) -> list:
        out = [f]
        for c in reversed(children[f]):
            out.extend(expand(c))
        return out

    sequence = [root]
    for c in reversed(children[root]):
        sequence.extend(expand(c))

    # label faces by marked points, drop unmarked ones, sort by Hurwitz moves
    label = {f: owner.get((faces[f][0], faces[f][1])) for f in range(nfaces)}
    marked_seq = [f for f in sequence if label[f] is not None]
    labels = [label[f] for f in marked_seq]
    if sorted(labels) != list(range(n)):
        raise ConstructionError("marked points are not all assigned")
    moves = []
    changed = True
    while changed:
        changed = False
        for t in range(n - 1):
            if labels[t] > labels[t + 1]:
                labels[t], labels[t + 1] = labels[t + 1], labels[t]
                moves.append(t)
                changed = True
    images = [peripheral_word(j, n) for j in range(n)]
    for t in reversed(moves):
        a_new, b_new = images[t], images[t + 1]
        images[t] = b_new
        images[t + 1] = multiply(inverse(b_new), a_new, b_new)
    phi_rho = {f: () for f in range(nfaces)}
    for f, img in zip(marked_seq, images):
        phi_rho[f] = img

    phi_z: Dict[int, Word] = {}

    def phi_of_z(f) -> Word:
        if f not in phi_z:
            parts = [phi_rho[f]] + [phi_of_z(c) for c in reversed(children[f])]
            phi_z[f] = multiply(*parts)
        return phi_z[f]

    phi_x: Dict[tuple, Word] = {}
    for f in range(nfaces):
        if f == root:
            continue
        z = phi_of_z(f)
        phi_x[parent_edge[f]] = z if sign_in_face[f] > 0 else inverse(z)

    restrictions = tuple(
        tuple(phi_x.get((i, k), ()) for k in range(d)) for i in range(1, n)
    )
    P = CoverPresentation(d, marked, tuple(dynamics), tuple(perms), restrictions, assignment)
    if check:
        # the face loops must multiply to one in the order found above
        rho_words = {f: multiply(*[schreier(e) if s > 0 else inverse(schreier(e))
                                   for e, s in rho_x[f]]) for f in range(nfaces)}
        if free_reduce(multiply(*[rho_words[f] for f in sequence])):
            raise ConstructionError("internal error: face loops do not multiply to one")
        rep = validate_presentation(P)
        if not rep.ok:
            raise ConstructionError(f"constructed presentation is invalid:\n{rep}")
    return P


def _group_letters(walk, tree) -> list:
    # traversal e1, e2, ... gives the element x_eL ... x_e2 x_e1
    return [(e, s) for e, s in reversed(walk) if e not in tree]


# -- pure braids ---------------------------------------------------------------

Automorphism = Dict[int, Word]


def apply_automorphism(phi: Automorphism, w: Sequence[int]) -> Word:
    parts = [phi[x] if x > 0 else inverse(phi[-x]) for x in w]
    return multiply(*parts)


def compose_automorphisms(phi: Automorphism, psi: Automorphism) -> Automorphism:
    """``phi o psi``."""
    return {i: apply_automorphism(phi, psi[i]) for i in psi}


def artin_generator(t: int, n: int, sign: int = 1) -> Automorphism:
    """Half twist exchanging the points with indices ``t-1`` and ``t`` (1 <= t <= n-2)."""
    if not 1 <= t <= n - 2:
        raise ValueError("Artin generator index out of range")
    phi = {i: (i,) for i in range(1, n)}
    if sign > 0:
        phi[t] = (t, t + 1, -t)
        phi[t + 1] = (t,)
    else:
        phi[t] = (t + 1,)
        phi[t + 1] = (-(t + 1), t, t + 1)
    return phi


def pure_braid(a: int, b: int, n: int, sign: int = 1) -> Automorphism:
    """Full twist of the marked points ``a < b`` (1-based generator indices < n)."""
    if not 1 <= a < b <= n - 1:
        raise ValueError("pure braid indices out of range")
    phi = {i: (i,) for i in range(1, n)}
    factors = [artin_generator(t, n, 1) for t in range(b - 1, a, -1)]
    middle = [artin_generator(a, n, sign), artin_generator(a, n, sign)]
    tail = [artin_generator(t, n, -1) for t in range(a + 1, b)]
    for f in factors + middle + tail:
        phi = compose_automorphisms(phi, f)
    return phi


def random_pure_braid(n: int, length: int, rng: random.Random) -> Automorphism:
    phi = {i: (i,) for i in range(1, n)}
    if n < 3:
        return phi
    for _ in range(length):
        a, b = sorted(rng.sample(range(1, n), 2))
        phi = compose_automorphisms(phi, pure_braid(a, b, n, rng.choice((1, -1))))
    return phi


def twist_presentation(P: CoverPresentation, phi: Automorphism) -> CoverPresentation:
    """Precompose with the pure mapping class acting by ``phi`` on restriction words."""
    rest = tuple(tuple(apply_automorphism(phi, w) for w in row) for row in P.restrictions)
    return CoverPresentation(P.degree, P.marked, P.dynamics, P.perms, rest, P.assignment)
