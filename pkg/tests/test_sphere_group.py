import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import conjugate_by_rotation, reduce_word, winding
from thurston_kit.sphere_group import (
    MarkedSet,
    WordError,
    canonical_curve_class,
    canonical_word,
    conjugate,
    cyclic_reduce,
    format_word,
    free_conjugate,
    free_reduce,
    inverse,
    last_loop,
    least_rotation,
    multiply,
    parse_word,
    peripheral_class_of,
    peripheral_word,
    side_partition,
    winding_vector,
)


def W(text):
    return parse_word(text)


# -- examples -------------------------------------------------------------------------

@pytest.mark.parametrize("text, want", [
    ("g1 g2 G2", "g1"),
    ("G1 g2 g1", "g2"),
    ("", ""),
])
def test_cyclic_reduce_examples(text, want):
    assert cyclic_reduce(W(text)) == W(want)


def test_free_conjugate_examples():
    assert free_conjugate(W("g1 g2"), W("g2 g1"))
    assert not free_conjugate(W("g1"), W("g2"))
    w, h = W("g1 G3 g2"), W("g2 g2 G1")
    assert free_conjugate(w, conjugate(w, h))


def test_canonical_curve_class_examples():
    n = 4
    assert canonical_curve_class(W("g1 g2"), n) == canonical_curve_class(W("G2 G1"), n)
    assert canonical_curve_class(W("g2 g1"), n) == canonical_curve_class(W("g1 g2"), n)
    with pytest.raises(WordError, match="null-homotopic"):
        canonical_curve_class((), n)
    with pytest.raises(WordError):
        canonical_curve_class(W("g1 G1"), n)


def test_peripheral_class_of_examples():
    assert peripheral_class_of(W("g3"), 4) == 2
    assert peripheral_class_of(W("g1 g2 g3"), 4) == 3
    assert peripheral_class_of(W("G3 G2 G1"), 4) == 3
    assert peripheral_class_of(W("g1 g2"), 4) is None
    assert peripheral_class_of(W("g2 g1 G2"), 4) == 0


@pytest.mark.parametrize("text, want", [
    ("g1 g2", (1, 1, 0)),
    ("g1 G1", (0, 0, 0)),
    ("g1 G2", (1, -1, 0)),
])
def test_winding_vector_examples(text, want):
    assert winding_vector(W(text), 4) == want


def test_side_partition_examples():
    p = side_partition(W("g1 g2"), 4)
    assert (p.inside, p.outside) == ({0, 1}, {2, 3})
    p = side_partition(W("g2 g3"), 4)
    assert (p.inside, p.outside) == ({1, 2}, {0, 3})
    with pytest.raises(WordError, match="homology"):
        side_partition(W("g1 G2"), 4)
    with pytest.raises(WordError, match="homology"):
        side_partition(W("g1 g1 g2"), 4)


def test_last_point_goes_to_zero_side():
    # G3 G2 G1 encircles p4 only; with sign normalisation p4 sits outside
    p = side_partition(last_loop(4), 4)
    assert p.inside == {0, 1, 2} and p.outside == {3}


def test_marked_set():
    m = MarkedSet.standard(3)
    assert m.labels == ("p1", "p2", "p3") and m.n == 3
    with pytest.raises(ValueError):
        MarkedSet(("a",))
    with pytest.raises(ValueError):
        MarkedSet(("a", "a"))
    with pytest.raises(KeyError):
        m.index("q")


def test_parse_and_format():
    assert parse_word("g1 G2 g1") == (1, -2, 1)
    assert format_word((1, -2, 1)) == "g1 G2 g1"
    assert parse_word("") == ()
    with pytest.raises(WordError):
        parse_word("g0")
    with pytest.raises(WordError):
        parse_word("h1")
    with pytest.raises(WordError):
        parse_word("g4", 4)


def test_least_rotation_matches_brute_force():
    w = (3, 1, 2, 1, 2, 1, 1)
    rots = [w[k:] + w[:k] for k in range(len(w))]
    assert least_rotation(w) in rots
    assert least_rotation(least_rotation(w)) == least_rotation(w)
    assert all(least_rotation(r) == least_rotation(w) for r in rots)


# -- properties -----------------------------------------------------------------------

N = 5
letters = st.integers(1, N - 1).flatmap(lambda i: st.sampled_from((i, -i)))
words = st.lists(letters, max_size=14).map(tuple)


@given(words)
def test_cyclic_reduce_idempotent_and_shorter(w):
    r = cyclic_reduce(w)
    assert cyclic_reduce(r) == r
    assert len(r) <= len(w)


@given(words)
def test_free_reduce_agrees_with_oracle(w):
    assert free_reduce(w) == reduce_word(w)


@given(words, words)
def test_free_conjugate_agrees_with_oracle(u, v):
    assert free_conjugate(u, v) == conjugate_by_rotation(u, v)


@given(words, words, words)
@settings(max_examples=200)
def test_free_conjugate_is_an_equivalence(u, h, k):
    v = conjugate(u, h)
    x = conjugate(v, k)
    assert free_conjugate(u, u)
    assert free_conjugate(v, u)
    assert free_conjugate(u, x)


@given(words, words)
def test_canonical_word_laws(w, h):
    c = canonical_word(w)
    assert canonical_word(conjugate(w, h)) == c
    assert canonical_word(inverse(w)) == c
    assert canonical_word(c) == c


@given(words, words)
def test_winding_conjugation_and_inversion(w, h):
    assert list(winding_vector(w, N)) == winding(w, N)
    assert winding_vector(conjugate(w, h), N) == winding_vector(w, N)
    assert winding_vector(inverse(w), N) == tuple(-x for x in winding_vector(w, N))


@given(st.integers(0, N - 1), words)
def test_peripheral_words_have_singleton_side(j, h):
    w = conjugate(peripheral_word(j, N), h)
    p = side_partition(w, N)
    assert {j} in (p.inside, p.outside)
    assert peripheral_class_of(cyclic_reduce(w), N) == j


@given(words, words)
def test_side_partition_invariance(w, h):
    try:
        p = side_partition(w, N)
    except WordError:
        return
    assert side_partition(conjugate(w, h), N) == p
    assert side_partition(inverse(w), N) == p


@given(words, words)
def test_multiply_cancels_an_inverse(u, v):
    assert multiply(u, v, inverse(v)) == free_reduce(u)
