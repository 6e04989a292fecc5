"""Finite words, ultimately periodic words and their normal forms.

Finite words are tuples of letters (letters are non-empty strings), so
multi-character letters such as ``a1`` work the same as ``a``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Iterable, Sequence, Union

from .errors import InputError, ParseError

SEPARATOR = "$"

Word = tuple  # tuple[str, ...]
WordLike = Union[str, Sequence[str]]


def word(w: WordLike) -> Word:
    """Coerce ``"ab"`` or ``["a", "b"]`` to a letter tuple.

    Strings are split into characters unless they contain whitespace, in
    which case they are split on whitespace (for multi-character letters).
    """
    if isinstance(w, str):
        return tuple(w.split()) if any(c.isspace() for c in w) else tuple(w)
    return tuple(w)


def render(w: Sequence[str]) -> str:
    if all(len(a) == 1 for a in w):
        return "".join(w)
    return " ".join(w)


def sub(w: Sequence[str], i: int, k: int) -> Word:
    """1-based inclusive slice w[i..k]; empty when i > k."""
    if i > k:
        return ()
    return tuple(w[i - 1:k])


class Alphabet:
    """Ordered set of letters; ``$`` is reserved."""

    def __init__(self, symbols: Iterable[str]):
        symbols = tuple(symbols)
        if not symbols:
            raise InputError("alphabet must be nonempty")
        if len(set(symbols)) != len(symbols):
            raise InputError(f"duplicate letters in alphabet {symbols}")
        if SEPARATOR in symbols:
            raise InputError("'$' cannot be an alphabet letter")
        for a in symbols:
            if not isinstance(a, str) or not a or "," in a or any(c.isspace() for c in a):
                raise InputError(f"bad letter {a!r}")
        self.symbols = symbols
        self._index = {a: i for i, a in enumerate(symbols)}

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def __contains__(self, a):
        return a in self._index

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.symbols == other.symbols

    def __hash__(self):
        return hash(self.symbols)

    def __repr__(self):
        return f"Alphabet({list(self.symbols)})"

    def index(self, a: str) -> int:
        return self._index[a]

    def with_separator(self) -> tuple:
        """Letters plus ``$``, ordered last."""
        return self.symbols + (SEPARATOR,)

    def words(self, max_len: int, min_len: int = 0):
        """All words of length min_len..max_len in length-lexicographic order."""
        layer = [()]
        for n in range(max_len + 1):
            if n >= min_len:
                yield from layer
            layer = [w + (a,) for w in layer for a in self.symbols]


@dataclass(frozen=True)
class OmegaWord:
    """The ultimately periodic word prefix·period^ω.

    Field equality is structural; use :func:`omega_equal` for word equality.
    """

    prefix: Word
    period: Word

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise InputError("period of an omega-word must be nonempty")

    @classmethod
    def of(cls, u: WordLike, v: WordLike) -> "OmegaWord":
        return cls(word(u), word(v))

    @classmethod
    def parse(cls, text: str) -> "OmegaWord":
        text = text.strip()
        if text.count(SEPARATOR) != 1:
            raise ParseError(f"expected exactly one '$' in {text!r}")
        u, v = text.split(SEPARATOR)
        try:
            return cls(word(u.strip()), word(v.strip()))
        except InputError as e:
            raise ParseError(str(e)) from None

    def unroll(self, n: int) -> Word:
        """First n letters."""
        out = list(self.prefix[:n])
        while len(out) < n:
            out.extend(self.period)
        return tuple(out[:n])

    def letters(self) -> set:
        return set(self.prefix) | set(self.period)

    def __str__(self):
        return f"{render(self.prefix)}{SEPARATOR}{render(self.period)}"


def omega_equal(a: OmegaWord, b: OmegaWord) -> bool:
    n = len(a.prefix) + len(b.prefix) + lcm(len(a.period), len(b.period))
    return a.unroll(n) == b.unroll(n)


def smallest_period(w: OmegaWord) -> Word:
    v = w.period
    for k in range(1, len(v) + 1):
        if len(v) % k == 0 and v[:k] * (len(v) // k) == v:
            return v[:k]
    raise AssertionError("unreachable")


def _strip(x: Word, y: Word) -> Word:
    while len(x) >= len(y) and x[len(x) - len(y):] == y:
        x = x[:len(x) - len(y)]
    return x


def shortest_form(w: OmegaWord) -> tuple:
    y = smallest_period(w)
    return _strip(w.prefix, y), y


def rotate_form(x: Word, y: Word) -> tuple:
    x, y = tuple(x), tuple(y)
    if not y:
        raise InputError("rotate_form needs a nonempty period")
    return _strip(x + y[:1], y[1:] + y[:1]), y[1:] + y[:1]


def canonical_form(w: OmegaWord) -> OmegaWord:
    """Unique representative of the ω-word: shortest prefix, primitive period.

    Two OmegaWords denote the same infinite word iff their canonical forms
    are structurally equal.
    """
    x, y = shortest_form(w)
    while x and x[-1] == y[-1]:
        x = x[:-1]
        y = y[-1:] + y[:-1]
    return OmegaWord(x, y)


def normalize_decomposition(m, w: OmegaWord) -> tuple:
    """Smallest i ≥ 0, then smallest j ≥ 1, with M(u v^i · v^j) = M(u v^i)."""
    u, v = w.prefix, w.period
    n = m.num_states
    state = m.run(u)
    for i in range(n + 1):
        s = state
        for j in range(1, n + 1):
            s = m.run(v, s)
            if s == state:
                return u + v * i, v * j
        state = m.run(v, state)
    raise AssertionError("no normalized factorization within |Q| iterations")
