"""Truncated noncommutative power series: a finite model of the completed group ring.

The free group on ``x_1 .. x_m`` embeds through ``x_i -> 1 + X_i``; the
powers of the augmentation ideal correspond to the minimal-degree
filtration, so computations modulo ``I^(N+1)`` are done on series with all
monomials of degree ``<= N``.  Monomials are tuples of positive generator
indices.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .words import Coeff, GroupRingElement, Word, format_coeff

Monomial = tuple


class NonTerminationError(RuntimeError):
    """An iterated series did not vanish within the allowed number of steps."""

    def __init__(self, msg: str, last_degree: int | None = None):
        super().__init__(msg)
        self.last_degree = last_degree


class TruncatedSeries:
    __slots__ = ("rank", "order", "terms")

    def __init__(self, rank: int, order: int, terms: Mapping | Iterable = ()):
        if rank < 1 or order < 0:
            raise ValueError("rank must be positive and order nonnegative")
        self.rank = rank
        self.order = order
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, c in items:
            mono = tuple(mono)
            if len(mono) > order:
                continue
            if any(not 1 <= i <= rank for i in mono):
                raise ValueError(f"monomial {mono} outside rank {rank}")
            acc[mono] = acc.get(mono, 0) + c
        self.terms = {k: v for k, v in acc.items() if v != 0}

    @classmethod
    def _raw(cls, rank, order, terms):
        obj = cls.__new__(cls)
        obj.rank, obj.order, obj.terms = rank, order, terms
        return obj

    @classmethod
    def zero(cls, rank: int, order: int) -> "TruncatedSeries":
        return cls._raw(rank, order, {})

    @classmethod
    def one(cls, rank: int, order: int) -> "TruncatedSeries":
        return cls._raw(rank, order, {(): 1})

    @classmethod
    def generator(cls, i: int, rank: int, order: int) -> "TruncatedSeries":
        return cls(rank, order, {(i,): 1})

    def _check(self, other: "TruncatedSeries"):
        if (self.rank, self.order) != (other.rank, other.order):
            raise ValueError(f"series mismatch: rank/order {self.rank}/{self.order} "
                             f"vs {other.rank}/{other.order}")

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.rank, self.order) == (other.rank, other.order) and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return self._raw(self.rank, self.order, out)

    def __neg__(self):
        return self._raw(self.rank, self.order, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: Coeff) -> "TruncatedSeries":
        if c == 0:
            return self.zero(self.rank, self.order)
        return self._raw(self.rank, self.order, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        return self._raw(self.rank, self.order, _mul_terms(self.terms, other.terms, self.order))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        out = self.one(self.rank, self.order)
        for _ in range(n):
            out = out * self
        return out

    @property
    def constant_term(self) -> Coeff:
        return self.terms.get((), 0)

    def min_degree(self) -> int:
        """Least degree with a nonzero coefficient; ``order + 1`` for zero."""
        return min((len(k) for k in self.terms), default=self.order + 1)

    def homogeneous(self, d: int) -> "TruncatedSeries":
        return self._raw(self.rank, self.order, {k: v for k, v in self.terms.items() if len(k) == d})

    def truncate(self, order: int) -> "TruncatedSeries":
        return self._raw(self.rank, order, {k: v for k, v in self.terms.items() if len(k) <= order})

    def agreement_degree(self, other: "TruncatedSeries") -> int:
        """Largest ``d`` such that the two series agree in all degrees ``<= d``
        (``order`` when equal)."""
        return (self - other).min_degree() - 1

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def to_json(self) -> dict:
        return {"rank": self.rank, "order": self.order,
                "terms": [{"monomial": list(k), "coeff": format_coeff(v)} for k, v in self.sorted_terms()]}

    @classmethod
    def from_json(cls, data: Mapping) -> "TruncatedSeries":
        return cls(data["rank"], data["order"],
                   ((tuple(t["monomial"]), Fraction(t["coeff"])) for t in data["terms"]))

    def format(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, v in self.sorted_terms():
            mono = "*".join(f"X{i}" for i in k) or "1"
            parts.append(f"{format_coeff(v)}*{mono}" if k else format_coeff(v))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"TruncatedSeries(rank={self.rank}, order={self.order}, {self.format()})"


def _by_degree(terms: Mapping) -> dict[int, list]:
    buckets: dict[int, list] = defaultdict(list)
    for k, v in terms.items():
        buckets[len(k)].append((k, v))
    return buckets


def _mul_terms(a: Mapping, b: Mapping, order: int) -> dict:
    out: dict = {}
    b_deg = _by_degree(b)
    degs = sorted(b_deg)
    for ka, va in a.items():
        room = order - len(ka)
        for d in degs:
            if d > room:
                break
            for kb, vb in b_deg[d]:
                k = ka + kb
                out[k] = out.get(k, 0) + va * vb
    return {k: v for k, v in out.items() if v}


# -- Magnus embedding -----------------------------------------------------------


def _letter_terms(g: int, order: int) -> dict:
    i = abs(g)
    if g > 0:
        return {(): 1, (i,): 1} if order >= 1 else {(): 1}
    return {(i,) * k: (-1) ** k for k in range(order + 1)}


@lru_cache(maxsize=200_000)
def _magnus_word(w: Word, order: int) -> dict:
    if not w:
        return {(): 1}
    if len(w) == 1:
        return _letter_terms(w[0], order)
    half = len(w) // 2
    return _mul_terms(_magnus_word(w[:half], order), _magnus_word(w[half:], order), order)


def magnus_embed(a: GroupRingElement | Sequence[int], order: int, rank: int) -> TruncatedSeries:
    """Image of a word or group-ring element under ``x_i -> 1 + X_i``, truncated."""
    if not isinstance(a, GroupRingElement):
        a = GroupRingElement.from_word(a)
    if a.rank is not None and a.rank != rank:
        raise ValueError(f"element has rank {a.rank}, target rank {rank}")
    out: dict = {}
    for w, c in a.terms.items():
        if w and max(abs(g) for g in w) > rank:
            raise ValueError(f"word {w} uses a generator beyond rank {rank}")
        for k, v in _magnus_word(w, order).items():
            out[k] = out.get(k, 0) + c * v
    return TruncatedSeries._raw(rank, order, {k: v for k, v in out.items() if v})


def ideal_degree(a: GroupRingElement | Sequence[int], order: int, rank: int) -> int:
    """Filtration degree of ``a`` in the augmentation-ideal powers.

    Returns ``order + 1`` when the truncated image vanishes, meaning "greater
    than ``order``".
    """
    return magnus_embed(a, order, rank).min_degree()


# -- log / exp ----------------------------------------------------------------


def log_series(s: TruncatedSeries) -> TruncatedSeries:
    if s.constant_term != 1:
        raise ValueError("log_series needs constant term 1")
    u = s - TruncatedSeries.one(s.rank, s.order)
    out = TruncatedSeries.zero(s.rank, s.order)
    power = TruncatedSeries.one(s.rank, s.order)
    for k in range(1, s.order + 1):
        power = power * u
        if not power:
            break
        out = out + power.scale(Fraction((-1) ** (k + 1), k))
    return out


def exp_series(s: TruncatedSeries) -> TruncatedSeries:
    if s.constant_term != 0:
        raise ValueError("exp_series needs constant term 0")
    out = TruncatedSeries.one(s.rank, s.order)
    term = TruncatedSeries.one(s.rank, s.order)
    for k in range(1, s.order + 1):
        term = (term * s).scale(Fraction(1, k))
        if not term:
            break
        out = out + term
    return out


# -- derivations and endomorphisms -------------------------------------------------


@dataclass
class DerivationRep:
    """A continuous derivation given by its values on the generators ``X_i``."""

    rank: int
    order: int
    images: dict

    def __post_init__(self):
        for i in range(1, self.rank + 1):
            img = self.images.setdefault(i, TruncatedSeries.zero(self.rank, self.order))
            if (img.rank, img.order) != (self.rank, self.order):
                raise ValueError(f"image of X{i} has mismatched rank/order")
            if img.constant_term != 0:
                raise ValueError(f"image of X{i} has a nonzero constant term")

    @classmethod
    def zero(cls, rank: int, order: int) -> "DerivationRep":
        return cls(rank, order, {})

    def __call__(self, s: TruncatedSeries) -> TruncatedSeries:
        return apply_derivation(self, s)

    def scale(self, c: Coeff) -> "DerivationRep":
        return DerivationRep(self.rank, self.order, {i: v.scale(c) for i, v in self.images.items()})

    def min_degree(self) -> int:
        return min(v.min_degree() for v in self.images.values())

    def to_json(self) -> dict:
        return {"rank": self.rank, "order": self.order,
                "images": {f"X{i}": self.images[i].to_json()["terms"] for i in sorted(self.images)}}


def apply_derivation(D: DerivationRep, s: TruncatedSeries) -> TruncatedSeries:
    """Leibniz extension of ``X_i -> D(X_i)`` applied to ``s``."""
    if (D.rank, D.order) != (s.rank, s.order):
        raise ValueError("derivation and series have mismatched rank/order")
    order = s.order
    images = {i: _by_degree(v.terms) for i, v in D.images.items()}
    out: dict = {}
    for mono, c in s.terms.items():
        n = len(mono)
        room = order - (n - 1)
        for t in range(n):
            left, right = mono[:t], mono[t + 1:]
            img = images[mono[t]]
            for d in sorted(img):
                if d > room:
                    break
                for k, v in img[d]:
                    key = left + k + right
                    out[key] = out.get(key, 0) + c * v
    return TruncatedSeries._raw(s.rank, order, {k: v for k, v in out.items() if v})


def exp_derivation(D: DerivationRep, s: TruncatedSeries, k_max: int | None = None) -> TruncatedSeries:
    """``sum_k D^k(s) / k!`` evaluated until the iterate vanishes in truncation."""
    if k_max is None:
        k_max = (s.order + 1) ** 2
    total = s
    term = s
    for k in range(1, k_max + 1):
        term = apply_derivation(D, term).scale(Fraction(1, k))
        if not term:
            return total
        total = total + term
    raise NonTerminationError(f"exp of derivation did not terminate within {k_max} steps",
                              last_degree=term.min_degree())


def substitute(images: Mapping[int, TruncatedSeries], s: TruncatedSeries) -> TruncatedSeries:
    """Apply the algebra endomorphism ``X_i -> images[i]`` (zero constant terms) to ``s``."""
    for i, v in images.items():
        if v.constant_term != 0:
            raise ValueError(f"image of X{i} has a nonzero constant term")
    order = s.order
    memo: dict = {(): {(): 1}}

    def img(mono):
        got = memo.get(mono)
        if got is None:
            got = _mul_terms(img(mono[:-1]), images[mono[-1]].terms, order)
            memo[mono] = got
        return got

    out: dict = {}
    for mono, c in sorted(s.terms.items(), key=lambda kv: len(kv[0])):
        for k, v in img(mono).items():
            out[k] = out.get(k, 0) + c * v
    return TruncatedSeries._raw(s.rank, order, {k: v for k, v in out.items() if v})


def automorphism_images(words: Mapping[int, Sequence[int]], rank: int, order: int) -> dict:
    """``X_i -> magnus(phi(x_i)) - 1`` for a group endomorphism given on generators."""
    one = TruncatedSeries.one(rank, order)
    return {i: magnus_embed(w, order, rank) - one for i, w in words.items()}
