import random
from fractions import Fraction

import pytest

from oracles import random_word, reduce_word
from thurston_kit.build import derived_last_perm, presentation_from_constellation
from thurston_kit.corpus import get_entry
from thurston_kit.cover import (
    CoverPresentation,
    compose,
    cycles,
    disk_preimage_topology,
    fixed_critical_points,
    free_critical_values,
    lift_curve,
    lift_word,
    orbifold_signature,
    validate_presentation,
    wreath_apply,
)
from thurston_kit.generate import GeneratorConfig, generate_random_cubic_two_fixed
from thurston_kit.sphere_group import (
    MarkedSet,
    canonical_curve_class,
    free_conjugate,
    free_reduce,
    inverse,
    multiply,
    parse_word,
)


def z3(perm=(1, 2, 0)):
    return CoverPresentation(3, MarkedSet.standard(2), (0, 1), (perm,),
                             (((), (), ()),), ((0, 1, 2), (0, 2, 1)))


@pytest.fixture(scope="module")
def selfmating():
    return get_entry("basilica-selfmating").load()


def simple_curve(rng, n):
    """A conjugate of a round curve, so a genuine simple closed curve."""
    a, b = sorted(rng.sample(range(1, n), 2))
    h = random_word(rng, n, 4)
    return multiply(h, tuple(range(a, b + 1)), inverse(h))


@pytest.fixture(scope="module")
def cubics():
    return list(generate_random_cubic_two_fixed(GeneratorConfig(seed=11, count=40)))


# -- validation ------------------------------------------------------------------------

def test_z3_trivial_restrictions_pass_the_type_invariants():
    # with every restriction trivial the peripheral lift check cannot hold,
    # so only the listed invariants are checked here
    rep = validate_presentation(z3(), check_peripheral=False)
    assert rep.ok, str(rep)
    assert sum(z3().branching(i) for i in range(2)) == 4


def test_z3_identity_permutation_fails_riemann_hurwitz():
    P = CoverPresentation(3, MarkedSet.standard(2), (0, 1), ((0, 1, 2),),
                          (((), (), ()),), ((0,), (1,)))
    rep = validate_presentation(P, check_peripheral=False)
    assert not rep.ok
    assert [name for name, _ in rep.failures][0] == "riemann-hurwitz"
    assert "0 != 2d-2 = 4" in str(rep)


def test_shipped_z3_passes_all_checks():
    assert validate_presentation(get_entry("z3").load()).ok


def test_selfmating_is_valid(selfmating):
    rep = validate_presentation(selfmating)
    assert rep.ok, str(rep)


def test_validation_failures_are_listed():
    P = get_entry("basilica").load()
    bad = CoverPresentation(P.degree, P.marked, (1, 0, 1), P.perms, P.restrictions, P.assignment)
    names = {name for name, _ in validate_presentation(bad).failures}
    assert "assignment" in names


def test_intransitive_monodromy_is_rejected():
    # two sheets that never mix
    P = CoverPresentation(2, MarkedSet.standard(3), (0, 1, 2), ((0, 1), (0, 1)),
                          (((), ()), ((), ())), ((0,), (0,), (0,)))
    names = {name for name, _ in validate_presentation(P).failures}
    assert "transitivity" in names and "riemann-hurwitz" in names


def test_generated_cubics_are_valid(cubics):
    for P in cubics:
        assert validate_presentation(P).ok


# -- wreath recursion -----------------------------------------------------------------

def test_wreath_apply_base_cases(selfmating):
    P = selfmating
    perm, words = wreath_apply(P, ())
    assert perm == (0, 1) and words == ((), ())
    for i in range(1, P.n):
        perm, words = wreath_apply(P, (i,))
        assert perm == P.perms[i - 1]
        assert words == tuple(free_reduce(r) for r in P.restrictions[i - 1])


def test_wreath_apply_group_laws(cubics):
    rng = random.Random(5)
    for P in cubics[:15]:
        for _ in range(10):
            u = random_word(rng, P.n, rng.randint(0, 8))
            v = random_word(rng, P.n, rng.randint(0, 8))
            perm, words = wreath_apply(P, u + inverse(u))
            assert perm == tuple(range(3)) and all(w == () for w in words)
            pu, wu = wreath_apply(P, u)
            pv, wv = wreath_apply(P, v)
            puv, wuv = wreath_apply(P, u + v)
            assert puv == tuple(pu[pv[k]] for k in range(3))
            assert wuv == tuple(multiply(wu[pv[k]], wv[k]) for k in range(3))


def test_sphere_relation_holds_by_construction(cubics):
    for P in cubics:
        prod = (0, 1, 2)
        for p in P.all_perms:
            prod = compose(prod, p)
        assert prod == (0, 1, 2)


# -- lifting -------------------------------------------------------------------------

def test_z3_peripheral_curve_lifts_to_one_degree_three_loop():
    lifts = lift_word(get_entry("z3").load(), (1,))
    assert [(l.degree, l.kind, l.point) for l in lifts] == [(3, "peripheral", 0)]


def test_identity_permutation_gives_three_degree_one_lifts(cubics):
    rng = random.Random(3)
    hits = 0
    for P in cubics:
        for _ in range(60):
            w = simple_curve(rng, P.n)
            perm, words = wreath_apply(P, w)
            if perm != (0, 1, 2):
                continue
            hits += 1
            lifts = lift_word(P, w)
            assert [l.degree for l in lifts] == [1, 1, 1]
            assert [l.word for l in lifts] == [free_reduce(x) for x in words]
    assert hits > 0


def test_selfmating_levy_curve_hand_lift(selfmating):
    # g1 g2 with sigma_1 = sigma_2 = id: sheet 1 carries
    # r(p1,1) r(p2,1) = (G3 G2 G1)(g1 g2 g3 G2 G1) = G2 G1, sheet 2 is trivial
    P = selfmating
    want = reduce_word(parse_word("G3 G2 G1") + parse_word("g1 g2 g3 G2 G1"))
    assert want == parse_word("G2 G1")
    lifts = lift_curve(P, parse_word("g1 g2"))
    assert [(l.degree, l.kind) for l in lifts] == [(1, "essential"), (1, "trivial")]
    assert lifts[0].word == want
    assert lifts[0].curve == canonical_curve_class(parse_word("g1 g2"), 4)


def test_selfmating_equator_hand_lift(selfmating):
    # g2 g3: sigma_3 swaps the sheets; sheet 1 carries r(p2,2) r(p3,1) = e and
    # sheet 2 carries r(p2,1) r(p3,2) = g1 g2 g3 G1, so one degree-2 lift
    P = selfmating
    lifts = lift_curve(P, parse_word("g2 g3"))
    assert [(l.degree, l.kind) for l in lifts] == [(2, "essential")]
    assert free_conjugate(lifts[0].word, parse_word("g1 g2 g3 G1"))
    assert lifts[0].curve == canonical_curve_class(parse_word("g2 g3"), 4)


def test_lift_degrees_sum_to_degree(cubics):
    rng = random.Random(9)
    for P in cubics:
        for _ in range(10):
            w = simple_curve(rng, P.n)
            assert sum(l.degree for l in lift_word(P, w)) == P.degree


def test_peripheral_lifts_follow_the_cycles(cubics):
    from thurston_kit.sphere_group import peripheral_word
    for P in cubics:
        owner = {(P.dynamics[j], tuple(c)): j for j, c in enumerate(P.assignment)}
        for i, p in enumerate(P.all_perms):
            lifts = lift_word(P, peripheral_word(i, P.n))
            assert sorted(l.degree for l in lifts) == sorted(len(c) for c in cycles(p))
            for l in lifts:
                j = owner.get((i, tuple(l.sheets)))
                if j is None:
                    assert l.kind == "trivial"
                else:
                    assert (l.kind, l.point) == ("peripheral", j)


# -- disk preimages --------------------------------------------------------------------

def test_preimage_topology_arithmetic(cubics):
    from thurston_kit.curves import standard_seeds
    for P in cubics:
        for c in standard_seeds(P.n):
            for side in c.partition.sides():
                t = disk_preimage_topology(P, c, side)
                nb = len(t.boundary_lifts)
                assert sum(l.degree for l in t.boundary_lifts) == P.degree
                assert 2 * t.component_count == t.total_chi + nb
                assert t.all_disks == (t.total_chi == nb)


def _fixed_cubic(perms, dynamics):
    """Cubic with the given monodromy; each point is assigned a fixed sheet over its image."""
    n = len(perms) + 1
    allp = list(perms) + [derived_last_perm(perms, 3)]
    used, assign = set(), []
    for j in range(n):
        t = dynamics[j]
        c = next(c for c in cycles(allp[t]) if len(c) == 1 and (t, c) not in used)
        used.add((t, c))
        assign.append(c)
    return presentation_from_constellation(3, MarkedSet.standard(n), dynamics, perms, assign)


A, B, C = (1, 0, 2), (0, 2, 1), (2, 1, 0)  # the three transpositions of three sheets

RH_CASES = [
    # (perms, dynamics, boundary word, components, boundary multiset, lift degrees)
    ([A, A, B], (0, 1, 2, 3), "g1 g2", 2, (1, 2), (1, 1, 1)),
    ([A, B, A], (0, 1, 2, 3), "g1 g2 g3", 1, (2,), (1, 2)),
    ([A, A, B, B], (4, 1, 2, 3, 4), "g1 g2 g3 g4", 1, (3,), (1, 1, 1)),
]


@pytest.mark.parametrize("perms, dyn, word, count, multiset, degrees", RH_CASES)
def test_riemann_hurwitz_cases(perms, dyn, word, count, multiset, degrees):
    P = _fixed_cubic(perms, dyn)
    assert validate_presentation(P).ok
    c = canonical_curve_class(parse_word(word), P.n)
    assert len(c.inside & set(P.critical_values())) == len(word.split())
    t = disk_preimage_topology(P, c, c.inside)
    assert (t.component_count, tuple(sorted(t.boundary_multiset)), t.degrees) == (count, multiset, degrees)
    assert not t.all_disks


def test_disk_with_one_critical_value_has_disk_preimages():
    P = _fixed_cubic([A, A, B], (0, 1, 2, 3))
    c = canonical_curve_class(parse_word("g2 g3"), P.n)
    t = disk_preimage_topology(P, c, c.inside)
    # two critical values inside, but their product is a 3-cycle: one disk
    assert t.degrees == (3,) and t.all_disks and t.component_count == 1


# -- orbifold and critical data ---------------------------------------------------------

def test_orbifold_z3():
    sig = orbifold_signature(get_entry("z3").load())
    assert sig.nu == (None, None) and sig.chi_orb == 0 and not sig.hyperbolic


def test_orbifold_basilica():
    sig = orbifold_signature(get_entry("basilica").load())
    assert sig.nu == (None, None, None) and sig.chi_orb == -1 and sig.hyperbolic


def _nu_by_hand(P):
    """nu by the divisibility recursion, iterated to a fixed point."""
    n = P.n
    inf = set()
    for j in range(n):
        seen, k = [j], P.dynamics[j]
        while k not in seen:
            seen.append(k)
            k = P.dynamics[k]
        if k == j and any(P.local_degree(x) > 1 for x in seen):
            inf |= set(seen)
    nu = [1] * n
    for _ in range(50):
        for j in range(n):
            t = P.dynamics[j]
            if t not in inf:
                need = P.local_degree(j) * nu[j]
                nu[t] = nu[t] * need // __import__("math").gcd(nu[t], need)
    return tuple(None if j in inf else nu[j] for j in range(n))


def test_orbifold_corpus_cubics_are_hyperbolic():
    for name in ("newton-like", "quadratic-like", "removable-levy", "degree-two-lift"):
        P = get_entry(name).load()
        sig = orbifold_signature(P)
        assert sig.chi_orb < 0, name
        hand = _nu_by_hand(P)
        # the recursion above ignores unmarked critical preimages, which only
        # ever raise nu, so it is a lower bound on finite entries
        for a, b in zip(sig.nu, hand):
            assert (a is None) == (b is None) or a is None
            if a is not None and b is not None:
                assert a % b == 0


def test_fixed_critical_points():
    assert fixed_critical_points(get_entry("z3").load()) == [(0, 3), (1, 3)]
    assert fixed_critical_points(get_entry("basilica").load()) == [(2, 2)]
    P = get_entry("newton-like").load()
    assert [deg for _, deg in fixed_critical_points(P)] == [2, 2]


def test_generated_cubics_have_two_simple_fixed_critical_points(cubics):
    for P in cubics:
        fixed = fixed_critical_points(P)
        assert len(fixed) == 2 and all(deg == 2 for _, deg in fixed)
        assert len(free_critical_values(P)) >= 1


def test_chi_orb_formula(cubics):
    for P in cubics[:10]:
        sig = orbifold_signature(P)
        want = 2 - sum(1 - (Fraction(0) if v is None else Fraction(1, v)) for v in sig.nu)
        assert sig.chi_orb == want
