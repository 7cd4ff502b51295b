"""Exact word arithmetic in the two-generator (dihedral) Artin group.

The group ``DA(n)`` is presented by ``<a, b | P = Q>`` where ``P`` is the
alternating word of length ``n`` starting with ``a`` and ``Q`` is the one
starting with ``b`` (``n >= 2``).  The common value of ``P`` and ``Q`` is the
half twist ``D``.  Words are ASCII strings over ``a``, ``b``, ``A``, ``B``
with uppercase meaning inverse, so ``"abA"`` is a*b*a^-1.

Every group element factors uniquely as ``D^p * t`` where ``p`` is an integer
and ``t`` is a positive word none of whose maximal alternating runs reaches
length ``n`` (equivalently: ``t`` is not left-divisible by ``D`` in the
positive monoid).  Over a two-letter alphabet the maximal alternating runs of
a word decompose it uniquely, and each run of ``t`` is a greedy factor of the
left normal form, so the pair ``(p, t)`` is a canonical form: two words are
equal in the group iff their forms coincide.  The only extra group fact the
normalizer needs is that conjugation by ``D`` swaps ``a`` and ``b`` when
``n`` is odd and is trivial when ``n`` is even.

The normalizer is quadratic in the word length.  It is validated against a
brute-force rewriting-closure oracle in the test suite.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import ResourceBudgetError

POSITIVE_LETTERS = "ab"
ALPHABET = "abAB"

_SWAP = str.maketrans("ab", "ba")
_INVERT = str.maketrans("abAB", "ABab")


def alternating(first: str, length: int) -> str:
    """The alternating positive word of the given length starting at `first`."""
    if first not in POSITIVE_LETTERS:
        raise ValueError(f"not a positive generator: {first!r}")
    other = "b" if first == "a" else "a"
    return ((first + other) * length)[:length]


def upper_word(n: int) -> str:
    """One relator half: the alternating word of length n starting with 'a'."""
    return alternating("a", n)


def lower_word(n: int) -> str:
    """The other relator half, derived by swapping letters, never respelled."""
    return upper_word(n).translate(_SWAP)


def inverse_word(word: str) -> str:
    """The inverse of a signed word (reverse and flip every letter's case)."""
    return word[::-1].translate(_INVERT)


def _check_index(n: int) -> None:
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"relator half-length must be an integer >= 2, got {n!r}")


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical representative ``D^delta_power * tail`` of an element of DA(n).

    `tail` is a positive word whose maximal alternating runs all have length
    at most ``n - 1``.  Equal group elements have identical forms, so forms
    are usable as dictionary keys and vertex identities.
    """

    n: int
    delta_power: int
    tail: str

    @property
    def key(self) -> str:
        """Stable string key, e.g. ``"-1.ab"``; unique per group element."""
        return f"{self.delta_power}.{self.tail}"

    def is_identity(self) -> bool:
        return self.delta_power == 0 and not self.tail

    def word(self) -> str:
        """Some signed word spelling this element (canonical, round-trips)."""
        if self.delta_power >= 0:
            return upper_word(self.n) * self.delta_power + self.tail
        return inverse_word(upper_word(self.n)) * (-self.delta_power) + self.tail

    def __mul__(self, other: "CanonicalForm") -> "CanonicalForm":
        if not isinstance(other, CanonicalForm):
            return NotImplemented
        if self.n != other.n:
            raise ValueError(f"mixed relator lengths: {self.n} and {other.n}")
        acc = _Accumulator(self.n)
        acc.power = self.delta_power + other.delta_power
        tail = self.tail
        if other.delta_power % 2 and self.n % 2:
            tail = tail.translate(_SWAP)
        acc.tail = list(tail)
        acc._recompute_run()
        for ch in other.tail:
            acc.push_positive(ch)
        return acc.form()

    def inverse(self) -> "CanonicalForm":
        return canonicalize(inverse_word(self.word()), self.n)

    def __repr__(self) -> str:
        return f"CanonicalForm(n={self.n}, D^{self.delta_power} * {self.tail!r})"


class _Accumulator:
    """Mutable state ``D^power * tail`` consumed letter by letter.

    Appending a positive letter may complete a trailing alternating run of
    length n; that run spells D, and ``u * D = D * swap(u)`` moves it into the
    power (the swap applies only for odd n).  An inverse letter x^-1 is
    rewritten as (x\\D) * D^-1: push the alternating complement of length
    n - 1, then commute the D^-1 to the front the same way.
    """

    __slots__ = ("n", "power", "tail", "_run")

    def __init__(self, n: int):
        self.n = n
        self.power = 0
        self.tail: list[str] = []
        self._run = 0  # length of the maximal alternating suffix of `tail`

    def _recompute_run(self) -> None:
        tail = self.tail
        k = len(tail) - 1
        run = 0 if k < 0 else 1
        while k > 0 and tail[k - 1] != tail[k]:
            run += 1
            k -= 1
        self._run = run

    def _swap_tail(self) -> None:
        if self.n % 2:
            self.tail = [("b" if ch == "a" else "a") for ch in self.tail]

    def push_positive(self, letter: str) -> None:
        tail = self.tail
        if tail and tail[-1] != letter:
            self._run += 1
        else:
            self._run = 1
        tail.append(letter)
        if self._run == self.n:
            del tail[-self.n:]
            self.power += 1
            self._swap_tail()
            self._recompute_run()

    def push_inverse(self, letter: str) -> None:
        complement = alternating("b" if letter == "a" else "a", self.n - 1)
        for ch in complement:
            self.push_positive(ch)
        self.power -= 1
        self._swap_tail()

    def form(self) -> CanonicalForm:
        return CanonicalForm(self.n, self.power, "".join(self.tail))


def canonicalize(word: str, n: int) -> CanonicalForm:
    """Canonical form of a signed word; total on words over {a, b, A, B}."""
    _check_index(n)
    acc = _Accumulator(n)
    for pos, ch in enumerate(word):
        if ch in POSITIVE_LETTERS:
            acc.push_positive(ch)
        elif ch in "AB":
            acc.push_inverse(ch.lower())
        else:
            raise ValueError(f"invalid letter {ch!r} at position {pos}")
    return acc.form()


def identity(n: int) -> CanonicalForm:
    _check_index(n)
    return CanonicalForm(n, 0, "")


def delta(n: int) -> CanonicalForm:
    """The half twist D (the common value of the two relator halves)."""
    _check_index(n)
    return CanonicalForm(n, 1, "")


def generator(letter: str, n: int) -> CanonicalForm:
    return canonicalize(letter, n)


def equal(w1: str, w2: str, n: int) -> bool:
    """Whether two signed words represent the same element of DA(n)."""
    return canonicalize(w1, n) == canonicalize(w2, n)


def positive_equal_classes(length: int, n: int) -> list[list[str]]:
    """Partition of all 2^length positive words by equality in DA(n).

    Returned classes and their members are sorted, so the output is stable.
    """
    _check_index(n)
    if length < 0:
        raise ValueError("length must be >= 0")
    groups: dict[str, list[str]] = {}
    for letters in itertools.product(POSITIVE_LETTERS, repeat=length):
        word = "".join(letters)
        groups.setdefault(canonicalize(word, n).key, []).append(word)
    return sorted(sorted(cls) for cls in groups.values())


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx


@dataclass(frozen=True)
class Discrepancy:
    """A disagreement between positive rewriting and group canonicalization."""

    kind: str  # "missing-connection" or "spurious-connection"
    word1: str
    word2: str


@dataclass(frozen=True)
class ProbeReport:
    """Result of comparing monoid rewriting against group equality.

    A nonempty `discrepancies` indicates an implementation bug: positive
    words must be equal in the group exactly when they are connected by
    positive relator substitutions.
    """

    n: int
    max_length: int
    words_checked: int
    discrepancies: tuple[Discrepancy, ...]
    nonsingleton_by_length: dict[int, tuple[tuple[str, ...], ...]]

    @property
    def ok(self) -> bool:
        return not self.discrepancies


def monoid_injectivity_probe(length: int, n: int, max_words: int = 2**21) -> ProbeReport:
    """Exhaustively compare positive-relator rewriting with group equality.

    For every positive word of length <= `length`, the partition generated by
    substituting one relator half for the other (which preserves length) is
    compared with the partition by canonical form.
    """
    _check_index(n)
    if length < 0:
        raise ValueError("length must be >= 0")
    total = 2 ** (length + 1) - 1
    if total > max_words:
        raise ResourceBudgetError(
            f"probe needs {total} positive words, budget is {max_words}",
            attempted=total,
            budget=max_words,
        )

    upper, lower = upper_word(n), lower_word(n)
    discrepancies: list[Discrepancy] = []
    nonsingleton: dict[int, tuple[tuple[str, ...], ...]] = {}
    checked = 0

    for ell in range(length + 1):
        words = ["".join(t) for t in itertools.product(POSITIVE_LETTERS, repeat=ell)]
        index = {w: i for i, w in enumerate(words)}
        uf = _UnionFind(len(words))
        if ell >= n:
            for i, w in enumerate(words):
                for pat, rep in ((upper, lower), (lower, upper)):
                    start = w.find(pat)
                    while start != -1:
                        uf.union(i, index[w[:start] + rep + w[start + n:]])
                        start = w.find(pat, start + 1)

        roots: dict[str, int] = {}
        forms: dict[str, str] = {}
        by_root: dict[int, list[str]] = {}
        for i, w in enumerate(words):
            roots[w] = uf.find(i)
            forms[w] = canonicalize(w, n).key
            by_root.setdefault(roots[w], []).append(w)
        checked += len(words)

        root_to_form: dict[int, str] = {}
        form_to_root: dict[str, int] = {}
        for w in words:
            r, f = roots[w], forms[w]
            if r in root_to_form and root_to_form[r] != f:
                other = next(x for x in by_root[r] if forms[x] == root_to_form[r])
                discrepancies.append(Discrepancy("spurious-connection", other, w))
            root_to_form[r] = f
            if f in form_to_root and form_to_root[f] != r:
                other = next(x for x in words if forms[x] == f and roots[x] == form_to_root[f])
                discrepancies.append(Discrepancy("missing-connection", other, w))
            form_to_root[f] = r

        classes = tuple(
            tuple(sorted(cls)) for cls in sorted(by_root.values()) if len(cls) > 1
        )
        if classes:
            nonsingleton[ell] = classes

    return ProbeReport(n, length, checked, tuple(discrepancies), nonsingleton)
