"""Word arithmetic: canonical forms against the rewriting-closure oracle."""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracle import SignedOracle, partitions_agree, positive_closure, signed_words
from systolic.errors import ResourceBudgetError
from systolic.words import (
    canonicalize,
    delta,
    equal,
    generator,
    identity,
    inverse_word,
    lower_word,
    monoid_injectivity_probe,
    positive_equal_classes,
    upper_word,
)

WORDS = st.text(alphabet="abAB", max_size=12)


def test_relator_halves_are_equal():
    for n in range(2, 9):
        assert equal(upper_word(n), lower_word(n), n)
        assert canonicalize(upper_word(n), n) == delta(n)


def test_identity_and_free_reduction():
    assert canonicalize("", 5) == identity(5)
    assert equal("aAb", "b", 4)
    assert canonicalize("aA", 3).is_identity()


def test_fixed_small_cases():
    # frozen from the rewriting-closure oracle (n = 3)
    assert equal("abab", "babb", 3)
    assert not equal("ab", "ba", 3)
    assert equal("abAB", "abAB", 7)
    assert canonicalize("abab", 3).key == "1.b"
    assert canonicalize("A", 3).key == "-1.ab"


def test_invalid_letters_rejected():
    with pytest.raises(ValueError):
        canonicalize("abc", 3)
    with pytest.raises(ValueError):
        canonicalize("ab", 1)


def test_tail_runs_stay_short():
    rng = random.Random(7)
    for n in (2, 3, 5):
        for _ in range(300):
            w = "".join(rng.choice("abAB") for _ in range(rng.randrange(0, 15)))
            form = canonicalize(w, n)
            runs = [len(r) for r in _alternating_runs(form.tail)]
            assert all(r <= n - 1 for r in runs), (w, n, form)


def _alternating_runs(word):
    runs = []
    for ch in word:
        if runs and runs[-1][-1] != ch:
            runs[-1] += ch
        else:
            runs.append(ch)
    return runs


@given(w=WORDS, n=st.integers(min_value=2, max_value=6))
@settings(max_examples=300, deadline=None)
def test_roundtrip_and_inverse(w, n):
    form = canonicalize(w, n)
    assert canonicalize(form.word(), n) == form
    assert canonicalize(w + inverse_word(w), n).is_identity()
    assert (form * form.inverse()).is_identity()


@given(w=WORDS, v=WORDS, n=st.integers(min_value=2, max_value=6))
@settings(max_examples=300, deadline=None)
def test_multiplication_matches_concatenation(w, v, n):
    assert canonicalize(w, n) * canonicalize(v, n) == canonicalize(w + v, n)


@given(w=WORDS, n=st.integers(min_value=2, max_value=6))
@settings(max_examples=200, deadline=None)
def test_tail_length_bound(w, n):
    form = canonicalize(w, n)
    assert len(form.tail) <= len(w) + n * abs(form.delta_power)


def test_equal_is_equivalence_on_samples():
    rng = random.Random(11)
    n = 3
    words = ["".join(rng.choice("abAB") for _ in range(rng.randrange(0, 7))) for _ in range(60)]
    keys = {w: canonicalize(w, n).key for w in words}
    for w1, w2 in itertools.combinations(words, 2):
        assert equal(w1, w2, n) == (keys[w1] == keys[w2])


def test_mixed_index_multiplication_rejected():
    with pytest.raises(ValueError):
        generator("a", 3) * generator("a", 4)


# ---------------------------------------------------------------------------
# positive words


def test_positive_classes_small():
    assert positive_equal_classes(2, 3) == [["aa"], ["ab"], ["ba"], ["bb"]]
    classes3 = positive_equal_classes(3, 3)
    assert ["aba", "bab"] in classes3
    assert sum(1 for c in classes3 if len(c) > 1) == 1
    assert ["aaba", "abab", "babb"] in positive_equal_classes(4, 3)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_positive_classes_below_relator_length(n):
    for length in range(n + 1):
        classes = positive_equal_classes(length, n)
        nontrivial = [c for c in classes if len(c) > 1]
        if length < n:
            assert nontrivial == []
        else:
            assert nontrivial == [sorted([upper_word(n), lower_word(n)])]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_positive_words_equal_in_group_have_equal_length(n):
    for length in range(0, 9):
        for cls in positive_equal_classes(length, n):
            assert all(len(w) == length for w in cls)
    # distinct lengths never share a form: graded abelianization argument,
    # checked exhaustively here
    seen = {}
    for length in range(0, 9):
        for letters in itertools.product("ab", repeat=length):
            key = canonicalize("".join(letters), n).key
            assert seen.setdefault(key, length) == length
        seen = {k: v for k, v in seen.items()}


def test_positive_classes_match_positive_closure_oracle():
    for n in (3, 4):
        for length in range(0, 8):
            closure = positive_closure(n, length)
            keys = {w: canonicalize(w, n).key for w in closure}
            assert partitions_agree(keys, closure)


# ---------------------------------------------------------------------------
# the injectivity probe


def test_probe_small():
    report = monoid_injectivity_probe(6, 3)
    assert report.ok and report.words_checked == 127
    assert report.nonsingleton_by_length[3] == (("aba", "bab"),)


def test_probe_relator_length_merge_only():
    report = monoid_injectivity_probe(4, 4)
    assert report.ok
    assert report.nonsingleton_by_length == {4: (("abab", "baba"),)}


def test_probe_trivial():
    report = monoid_injectivity_probe(0, 5)
    assert report.ok and report.words_checked == 1 and not report.nonsingleton_by_length


def test_probe_budget():
    with pytest.raises(ResourceBudgetError):
        monoid_injectivity_probe(30, 3, max_words=1000)


# ---------------------------------------------------------------------------
# signed closure oracle on a small universe (the full-size run lives in the
# acceptance suite)


def test_signed_closure_small():
    oracle = SignedOracle(3, 7)
    keys = {}
    roots = {}
    for w in signed_words(4):
        keys[w] = canonicalize(w, 3).key
        roots[w] = oracle.root(w)
    assert partitions_agree(keys, roots)
    assert oracle.equal("abab", "babb")
    assert not oracle.equal("ab", "ba")
