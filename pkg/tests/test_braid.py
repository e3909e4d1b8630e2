import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from burau import signature
from hildenkit.braid import (
    BraidWord,
    Permutation,
    delta_word,
    equal,
    expand,
    exponent_sum,
    finishing_set,
    format_word,
    free_reduce,
    invert,
    normal_form,
    parse_word,
    permutation_braid_word,
    permutation_image,
    random_word,
    starting_set,
)
from hildenkit.braid import _garside_py, garside
from hildenkit.braid.properties import left_weighted, relation_moves, run_property_suite
from hildenkit.errors import IndexRangeError, ParseError, StrandMismatch


def W(m, *letters):
    return BraidWord(m, letters)


@st.composite
def words(draw, min_strands=2, max_strands=6, max_len=20):
    m = draw(st.integers(min_strands, max_strands))
    n = draw(st.integers(0, max_len))
    gens = [s * i for i in range(1, m) for s in (1, -1)]
    return BraidWord(m, tuple(draw(st.lists(st.sampled_from(gens), min_size=n, max_size=n))))


# ---------------------------------------------------------------- words


def test_parse_word_examples():
    assert parse_word("s2 s1 s3^-1 s2^-1", 4).letters == (2, 1, -3, -2)
    assert parse_word("", 3).letters == ()
    assert parse_word("(2,1,-3,-2)", 4).letters == (2, 1, -3, -2)
    with pytest.raises(IndexRangeError):
        parse_word("s5", 4)


@pytest.mark.parametrize("text", ["s0", "x1", "s1^2", "0", "s"])
def test_parse_word_malformed(text):
    with pytest.raises((ParseError, IndexRangeError)):
        parse_word(text, 4)


def test_format_round_trip():
    w = W(4, 2, 1, -3, -2)
    assert format_word(w) == "2 1 -3 -2"
    assert parse_word(format_word(w), 4) == w


@pytest.mark.parametrize(
    "letters, reduced",
    [((1, -1), ()), ((2, 1, -1, 3), (2, 3)), ((1, 2, -2, -1), ())],
)
def test_free_reduce(letters, reduced):
    assert free_reduce(W(4, *letters)).letters == reduced


@pytest.mark.parametrize(
    "letters, inv",
    [((2, 1, -3, -2), (2, 3, -1, -2)), ((), ()), ((1, 1), (-1, -1))],
)
def test_invert(letters, inv):
    assert invert(W(4, *letters)).letters == inv


def test_strand_mismatch():
    with pytest.raises(StrandMismatch):
        W(3, 1) * W(4, 1)
    with pytest.raises(StrandMismatch):
        equal(W(3, 1), W(4, 1))


def test_permutation_image_examples():
    assert permutation_image(W(4, 1)) == Permutation.transposition(4, 1, 2)
    assert str(permutation_image(W(4, 2, 1, -3, -2))) == "(1 3)(2 4)"


def test_exponent_sum_examples():
    assert exponent_sum(W(4, 2, 1, -3, -2)) == 0
    assert exponent_sum(W(4, 2, 1, 3, 2)) == 4
    assert exponent_sum(W(4, 1, 1, 1)) == 3


@given(words(), st.data())
def test_homomorphisms(u, data):
    v = data.draw(words(u.strands, u.strands))
    assert permutation_image(u * v) == permutation_image(u) * permutation_image(v)
    assert exponent_sum(u * v) == exponent_sum(u) + exponent_sum(v)
    assert permutation_image(u * invert(u)).is_identity()


def test_left_to_right_convention():
    # (p*q)(x) = q(p(x)): s1 then s2 sends 1 -> 2 -> 3
    p = permutation_image(W(3, 1, 2))
    assert p(1) == 3


# ---------------------------------------------------------------- normal form


def test_normal_form_examples():
    nf = normal_form(W(3))
    assert (nf.delta_power, nf.factors) == (0, ())
    nf = normal_form(W(3, 1, 2, 1))
    assert (nf.delta_power, nf.factors) == (1, ())
    assert normal_form(W(3, 1, 2, 1)) == normal_form(W(3, 2, 1, 2))


def test_equal_examples():
    assert equal(W(3, 1, 2, 1), W(3, 2, 1, 2))
    assert equal(W(4, 1, 3), W(4, 3, 1))
    assert not equal(W(3, 1), W(3, 2))


def test_delta_and_permutation_braids():
    for m in range(2, 7):
        d = delta_word(m)
        assert normal_form(d).delta_power == 1
        assert len(d) == m * (m - 1) // 2
        # Delta^2 is central
        for i in range(1, m):
            assert equal(d * d * W(m, i), W(m, i) * d * d)
    p = Permutation.from_arrangement([2, 0, 1, 3])
    w = permutation_braid_word(p)
    assert all(x > 0 for x in w.letters)
    assert len(w) == p.inversions()


def test_starting_and_finishing_sets():
    p = permutation_image(W(3, 1, 2))
    assert starting_set(p) == frozenset({1})
    assert finishing_set(p) == frozenset({2})


@given(words(), st.integers(0, 20), st.integers(1, 7))
def test_free_insertion_invariance(w, at, i):
    i = 1 + (i - 1) % (w.strands - 1)
    at = min(at, len(w))
    padded = BraidWord(w.strands, w.letters[:at] + (i, -i) + w.letters[at:])
    assert equal(padded, w)


@given(words())
def test_idempotent_and_left_weighted(w):
    nf = normal_form(w)
    assert normal_form(expand(nf)) == nf
    assert left_weighted(nf.factors)
    assert equal(expand(nf), w)


@given(words(), st.integers(0, 2**32))
def test_relation_moves_preserve_normal_form(w, seed):
    moved = relation_moves(random.Random(seed), w, 10)
    assert normal_form(moved) == normal_form(w)


# ---------------------------------------------------------------- oracles


def test_burau_agrees_with_garside_on_equal_pairs():
    """Garside-equal words must have equal Burau matrices."""
    rng = random.Random(11)
    for _ in range(150):
        m = rng.randint(2, 6)
        w = random_word(rng, m, rng.randint(0, 12))
        moved = relation_moves(rng, w, 8)
        assert equal(w, moved)
        assert signature(w) == signature(moved)
        assert signature(w) == signature(expand(normal_form(w)))


def test_burau_separates_garside_unequal_pairs():
    """Burau-distinct words are never reported equal, and conversely for B_3."""
    rng = random.Random(12)
    checked = 0
    for _ in range(300):
        m = rng.randint(2, 5)
        u = random_word(rng, m, rng.randint(0, 8))
        v = random_word(rng, m, rng.randint(0, 8))
        same_burau = signature(u) == signature(v)
        if not same_burau:
            assert not equal(u, v)
            checked += 1
        elif m <= 3:
            # the Burau representation is faithful on three strands
            assert equal(u, v)
    assert checked > 200


def test_kernels_agree():
    rng = random.Random(13)
    for _ in range(500):
        m = rng.randint(2, 8)
        w = random_word(rng, m, rng.randint(0, 40))
        assert normal_form(w, _garside_py) == normal_form(w)


def test_kernel_selected():
    assert garside.KERNEL in ("compiled", "python")


def test_property_suite_small():
    rep = run_property_suite(count=300, seed=5)
    assert rep.ok, rep.violations[:3]
    assert rep.words == 300
    assert all(line.endswith("PASS") for line in rep.lines()[1:])


def test_pure_python_fallback_selected_by_env():
    import os
    import subprocess
    import sys

    env = dict(os.environ, HILDENKIT_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from hildenkit.braid import KERNEL, equal, parse_word as p;"
         "print(KERNEL, equal(p('1 2 1', 3), p('2 1 2', 3)))"],
        capture_output=True, text=True, env=env,
    )
    assert out.stdout.split() == ["python", "True"]
