"""Free-group words, cyclic words and sparse group-ring elements.

A word is a tuple of nonzero ints: ``i`` stands for the generator ``x_i`` and
``-i`` for its inverse.  Coefficients are exact (``int`` or ``Fraction``).
"""

from __future__ import annotations

import random
import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Tuple, Union

Word = Tuple[int, ...]
Coeff = Union[int, Fraction]

EMPTY: Word = ()


def reduce(letters: Iterable[int]) -> Word:
    """Freely reduce a letter sequence.

    >>> reduce([1, -1])
    ()
    >>> reduce([1, 2, -2, 1])
    (1, 1)
    """
    stack: list[int] = []
    for g in letters:
        if g == 0:
            raise ValueError("generator index 0 is not allowed")
        if stack and stack[-1] == -g:
            stack.pop()
        else:
            stack.append(g)
    return tuple(stack)


def inverse(w: Sequence[int]) -> Word:
    return tuple(-g for g in reversed(w))


def is_reduced(w: Sequence[int]) -> bool:
    return all(w[k] != -w[k + 1] for k in range(len(w) - 1))


def cyclically_reduce(w: Sequence[int]) -> Word:
    w = reduce(w)
    lo, hi = 0, len(w)
    while hi - lo >= 2 and w[lo] == -w[hi - 1]:
        lo += 1
        hi -= 1
    return w[lo:hi]


def rotate(w: Sequence[int], k: int) -> Word:
    k %= max(len(w), 1)
    return tuple(w[k:]) + tuple(w[:k])


def _letter_key(g: int) -> tuple[int, int]:
    # x_i before x_i^-1, then by index
    return (abs(g), 0 if g > 0 else 1)


def word_key(w: Sequence[int]) -> tuple:
    """Shortlex key used for every deterministic ordering of words."""
    return (len(w), tuple(_letter_key(g) for g in w))


def cyclic_canonical(w: Sequence[int]) -> Word:
    """Canonical representative of the conjugacy class of ``w``.

    Cyclically reduces, then picks the lexicographically least rotation.

    >>> cyclic_canonical([1, 2, -1])
    (2,)
    >>> cyclic_canonical([2, 1])
    (1, 2)
    """
    w = cyclically_reduce(w)
    if not w:
        return w
    best = min(range(len(w)), key=lambda k: [_letter_key(g) for g in rotate(w, k)])
    return rotate(w, best)


def is_proper_power(w: Sequence[int]) -> bool:
    """True when ``w = u^k`` for some word ``u`` and ``k >= 2``."""
    n = len(w)
    return any(n % d == 0 and tuple(w) == tuple(w[:d]) * (n // d) for d in range(1, n // 2 + 1))


def parity(w: Iterable[int], odd: Iterable[int] | None = None) -> int:
    """Number of letters from ``odd`` (all generators by default), mod 2."""
    if odd is None:
        return sum(1 for _ in w) % 2
    odd = set(odd)
    return sum(1 for g in w if abs(g) in odd) % 2


def max_index(w: Iterable[int]) -> int:
    return max((abs(g) for g in w), default=0)


# -- text format ------------------------------------------------------------

_TOKEN = re.compile(r"^([a-z])(\d+)(\^-1)?$")


class WordSyntaxError(ValueError):
    pass


def parse_word(text: str, letter: str | None = None) -> Word:
    """Parse ``"x1 x2^-1 x1"`` (or ``"e"`` for the empty word).

    When ``letter`` is given every token must use that alphabet letter.
    """
    tokens = text.replace(",", " ").split()
    if tokens in ([], ["e"]):
        return EMPTY
    out = []
    for tok in tokens:
        m = _TOKEN.match(tok)
        if m is None:
            raise WordSyntaxError(f"malformed token {tok!r}")
        if letter is not None and m.group(1) != letter:
            raise WordSyntaxError(f"token {tok!r} is not in the {letter!r} alphabet")
        idx = int(m.group(2))
        if idx == 0:
            raise WordSyntaxError(f"generator index 0 in {tok!r}")
        out.append(-idx if m.group(3) else idx)
    return reduce(out)


def format_word(w: Sequence[int], letter: str = "x") -> str:
    if not w:
        return "e"
    return " ".join(f"{letter}{abs(g)}" + ("^-1" if g < 0 else "") for g in w)


def format_coeff(c: Coeff) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


# -- linear combinations ----------------------------------------------------


class _Combination:
    """Finite formal sum of hashable keys with exact coefficients."""

    __slots__ = ("terms", "rank")

    def __init__(self, terms: Mapping | Iterable | None = None, rank: int | None = None):
        acc: dict = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for key, c in items:
                key = self._normalize(key)
                acc[key] = acc.get(key, 0) + c
        self.terms = {k: c for k, c in acc.items() if c != 0}
        self.rank = rank

    @staticmethod
    def _normalize(key):
        return tuple(key)

    @classmethod
    def _raw(cls, terms: dict, rank):
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.rank = rank
        return obj

    def _check_rank(self, other) -> int | None:
        if self.rank is not None and other.rank is not None and self.rank != other.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")
        return self.rank if self.rank is not None else other.rank

    def __iter__(self) -> Iterator:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        if type(other) is not type(self):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coeff(self, key) -> Coeff:
        return self.terms.get(self._normalize(key), 0)

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if type(other) is not type(self):
            return NotImplemented
        rank = self._check_rank(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return self._raw(out, rank)

    __radd__ = __add__

    def __neg__(self):
        return self._raw({k: -c for k, c in self.terms.items()}, self.rank)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: Coeff):
        if c == 0:
            return self._raw({}, self.rank)
        return self._raw({k: v * c for k, v in self.terms.items()}, self.rank)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: word_key(kv[0]))

    def to_json(self, letter: str = "x") -> list[dict]:
        return [{"coeff": format_coeff(c), "word": format_word(w, letter)} for w, c in self.sorted_terms()]

    def format(self, letter: str = "x") -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            w_txt = format_word(w, letter)
            if c == 1:
                parts.append(f"+ {w_txt}")
            elif c == -1:
                parts.append(f"- {w_txt}")
            else:
                sign = "-" if c < 0 else "+"
                parts.append(f"{sign} {format_coeff(abs(c))}*{w_txt}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.format()})"


class GroupRingElement(_Combination):
    """Element of the group ring of a free group over the rationals."""

    __slots__ = ()

    @staticmethod
    def _normalize(key):
        return reduce(key)

    @classmethod
    def from_word(cls, w: Iterable[int], coeff: Coeff = 1, rank: int | None = None) -> "GroupRingElement":
        return cls({reduce(w): coeff}, rank=rank)

    @classmethod
    def one(cls, rank: int | None = None) -> "GroupRingElement":
        return cls({EMPTY: 1}, rank=rank)

    @classmethod
    def zero(cls, rank: int | None = None) -> "GroupRingElement":
        return cls({}, rank=rank)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "GroupRingElement":
        out = GroupRingElement.one(self.rank)
        for _ in range(n):
            out = out * self
        return out

    def augmentation(self) -> Coeff:
        return augmentation(self)

    @classmethod
    def from_json(cls, data: list[dict], letter: str = "x") -> "GroupRingElement":
        return cls((parse_word(t["word"], letter), Fraction(t["coeff"])) for t in data)


class LoopSum(_Combination):
    """Formal combination of free homotopy classes (canonical cyclic words)."""

    __slots__ = ()

    @staticmethod
    def _normalize(key):
        return cyclic_canonical(key)

    @classmethod
    def from_word(cls, w: Iterable[int], coeff: Coeff = 1, rank: int | None = None) -> "LoopSum":
        return cls({tuple(w): coeff}, rank=rank)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def drop_trivial(self) -> "LoopSum":
        """Remove the class of the constant loop."""
        return self._raw({k: c for k, c in self.terms.items() if k}, self.rank)

    @classmethod
    def from_json(cls, data: list[dict], letter: str = "x") -> "LoopSum":
        return cls((parse_word(t["word"], letter), Fraction(t["coeff"])) for t in data)


def multiply(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    rank = a._check_rank(b)
    out: dict = {}
    for u, cu in a.terms.items():
        for v, cv in b.terms.items():
            w = reduce(u + v)
            val = out.get(w, 0) + cu * cv
            if val:
                out[w] = val
            else:
                out.pop(w, None)
    return GroupRingElement._raw(out, rank)


def augmentation(a: GroupRingElement) -> Coeff:
    return sum(a.terms.values(), 0)


def forget_basepoint(a: GroupRingElement) -> LoopSum:
    """Send each based word to its free homotopy class."""
    return LoopSum(((w, c) for w, c in a.terms.items()), rank=a.rank)


# -- random sampling --------------------------------------------------------


def random_word(rng: random.Random, rank: int, max_len: int, min_len: int = 0) -> Word:
    """Uniform-ish random reduced word with ``min_len <= len <= max_len``."""
    n = rng.randint(min_len, max_len)
    w: list[int] = []
    while len(w) < n:
        g = rng.choice([i for i in range(1, rank + 1)] + [-i for i in range(1, rank + 1)])
        if w and w[-1] == -g:
            continue
        w.append(g)
    return tuple(w)


def random_cyclic_word(rng: random.Random, rank: int, max_len: int, min_len: int = 1) -> Word:
    while True:
        w = cyclic_canonical(random_word(rng, rank, max_len, min_len))
        if len(w) >= min_len:
            return w


def random_element(rng: random.Random, rank: int, max_len: int, n_terms: int = 3,
                   coeffs: Sequence[int] = (-2, -1, 1, 2)) -> GroupRingElement:
    return GroupRingElement(((random_word(rng, rank, max_len), rng.choice(coeffs)) for _ in range(n_terms)),
                            rank=rank)
