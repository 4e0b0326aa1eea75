import random
from fractions import Fraction

import numpy as np
import pytest

from oracles import irreducible_by_powers, pattern_rows, radius_at_least_one
from thurston_kit.spectral import (
    DEFAULT_TOL,
    GE1,
    LT1,
    UNDECIDED,
    check_certificate,
    cyclic_components,
    is_irreducible,
    leading_eigenvalue_bounds,
    leading_eigenvalue_bounds_many,
    leading_eigenvalue_bounds_scaled,
    strongly_connected_masks,
)

F = Fraction


def test_one_by_one_examples():
    b = leading_eigenvalue_bounds([[1]])
    assert b.decision == GE1 and b.lower == b.upper == 1
    b = leading_eigenvalue_bounds([[F(1, 2)]])
    assert b.decision == LT1 and b.upper < 1


def test_swap_with_weights_has_radius_one():
    M = [[0, 2], [F(1, 2), 0]]
    b = leading_eigenvalue_bounds(M)
    assert b.decision == GE1 and b.lower >= 1
    assert b.width <= DEFAULT_TOL
    # (2, 1) is a Perron vector: M (2, 1) = (2, 1)
    assert check_certificate(M, b)
    v = b.certificate
    assert v[0] == 2 * v[1]


def test_zero_matrix():
    b = leading_eigenvalue_bounds([[0]])
    assert b.decision == LT1 and b.lower == b.upper == 0


def test_reducible_matrix_takes_the_largest_block():
    M = [[F(1, 2), 0, 0], [1, 3, 0], [0, 1, F(1, 3)]]
    b = leading_eigenvalue_bounds(M)
    assert b.decision == GE1 and b.lower == 3 and b.upper == 3


def test_irrational_radius_bracket():
    # radius of [[1, 1], [1, 0]] is the golden ratio
    b = leading_eigenvalue_bounds([[1, 1], [1, 0]])
    phi = (1 + 5 ** 0.5) / 2
    assert float(b.lower) <= phi <= float(b.upper)
    assert b.width <= DEFAULT_TOL
    assert b.decision == GE1


def test_near_one_is_decided_exactly():
    eps = F(1, 10 ** 12)
    b = leading_eigenvalue_bounds([[1 - eps]])
    assert b.decision == LT1
    b = leading_eigenvalue_bounds([[0, 1 - eps], [1, 0]])
    assert b.decision == LT1
    b = leading_eigenvalue_bounds([[0, 1 + eps], [1, 0]])
    assert b.decision == GE1


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        leading_eigenvalue_bounds([[1, 2]])
    with pytest.raises(ValueError):
        leading_eigenvalue_bounds([[-1]])


def test_bounds_bracket_float_estimate_and_certificates_hold():
    rng = random.Random(4)
    values = [F(0), F(1, 3), F(1, 2), F(1), F(2), F(1, 6)]
    mats = [[[rng.choice(values) for _ in range(m)] for _ in range(m)]
            for m in (1, 2, 3, 4, 5) for _ in range(60)]
    for M, b in zip(mats, leading_eigenvalue_bounds_many(mats)):
        rho = max(abs(np.linalg.eigvals(np.array(M, dtype=float))))
        assert float(b.lower) - 1e-9 <= rho <= float(b.upper) + 1e-9
        assert b.decision != UNDECIDED
        assert check_certificate(M, b)
        if b.decision == GE1:
            assert b.lower >= 1
        else:
            assert b.upper < 1


def test_batch_and_single_paths_agree():
    rng = np.random.default_rng(2)
    B = rng.choice([0, 2, 3, 6, 12], size=(300, 3, 3))
    batch = leading_eigenvalue_bounds_scaled(B, 6)
    for t in range(0, 300, 7):
        single = leading_eigenvalue_bounds([[F(int(x), 6) for x in row] for row in B[t]])
        assert batch[t].decision == single.decision
        assert batch[t].lower <= single.upper and single.lower <= batch[t].upper
    want = radius_at_least_one(B, 6)
    assert ((np.asarray(batch.decisions) == GE1) == want).all()


# -- irreducibility -----------------------------------------------------------------------

def test_irreducible_examples():
    assert is_irreducible([[0, 1], [1, 0]])
    assert not is_irreducible([[1, 0], [1, 1]])
    assert not is_irreducible([[0]])
    assert is_irreducible([[F(1, 2)]])


def test_cyclic_components_are_the_strong_components():
    A = [[0, 1, 0, 0], [1, 0, 0, 0], [1, 0, 0, 0], [0, 0, 1, 1]]
    comps = sorted(sorted(c) for c in cyclic_components(A))
    assert comps == [[0, 1], [3]]


def test_irreducible_agrees_with_boolean_powers_up_to_six():
    rng = np.random.default_rng(8)
    for m in range(1, 7):
        if m <= 3:
            pats = np.arange(1 << (m * m), dtype=np.int64)
        else:
            pats = rng.integers(0, 1 << (m * m), size=20000, dtype=np.int64)
            # denser patterns are the interesting ones
            pats |= rng.integers(0, 1 << (m * m), size=20000, dtype=np.int64)
        want = irreducible_by_powers(pats, m)
        got = strongly_connected_masks(pattern_rows(pats, m), m)
        assert (got == want).all()
        for p in pats[:200]:
            A = [[int(p) >> (i * m + j) & 1 for j in range(m)] for i in range(m)]
            assert is_irreducible(A) == bool(irreducible_by_powers(np.array([p]), m)[0])
