"""Dehn twists along annulus curves of N_{g,1} and their logarithms.

For a cover word ``r`` whose free loop projects to a simple two-sided curve,
the twist on the base is the projection of ``t_c t_(tau c)^-1`` on the cover,
and its logarithm is the derivation ``sigma_tilde(L)`` with
``L = theta(c((log r)^2))``.  Everything is compared modulo ``I^(N+1)``
through the Magnus embedding.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Sequence

from .cover import (
    CoverPresentation,
    build_cover,
    end_sector,
    forgetful_c,
    lift,
    project,
    sigma_tilde,
    tau_word,
    theta,
)
from .magnus import (
    DerivationRep,
    NonTerminationError,
    TruncatedSeries,
    automorphism_images,
    exp_derivation,
    magnus_embed,
    substitute,
)
from .ribbon import NotSimpleError, is_simple, linked_pairs, path_crossings, twist_insert
from .words import GroupRingElement, LoopSum, Word, cyclic_canonical, format_word, parse_word, reduce

DEFAULT_ORDER = 5


def default_k_max(order: int) -> int:
    return (order + 1) ** 2


@dataclass(frozen=True)
class TwistProblem:
    cover: CoverPresentation
    r: Word
    order: int = DEFAULT_ORDER
    k_max: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "r", reduce(self.r))
        if self.order < 1:
            raise ValueError("truncation order must be at least 1")
        if self.k_max is None:
            object.__setattr__(self, "k_max", default_k_max(self.order))
        S = self.cover.surface
        if self.r and max(abs(s) for s in self.r) > self.cover.cover_rank:
            raise ValueError(f"r uses a letter beyond cover rank {self.cover.cover_rank}")
        if not is_simple(S, self.curve):
            raise NotSimpleError(f"c(r) = {format_word(self.curve, 'y')} is not simple on the cover")
        if self.curve and linked_pairs(S, self.curve, self.tau_curve):
            raise NotSimpleError("c(r) crosses its deck image, so its projection is not simple")

    @property
    def curve(self) -> Word:
        return cyclic_canonical(self.r)

    @property
    def tau_curve(self) -> Word:
        return cyclic_canonical(tau_word(self.cover, self.curve)) if self.curve else ()

    @property
    def degenerate(self) -> bool:
        return not self.curve or self.curve == self.tau_curve

    @property
    def base_curve(self) -> Word:
        return cyclic_canonical(project(self.cover, self.curve))


def load_preset(name: str, order: int = DEFAULT_ORDER, k_max: int | None = None) -> TwistProblem:
    """Shipped test curves: ``"N2,1"`` and ``"N3,1"``."""
    presets = json.loads(resources.files("twistlog.data").joinpath("presets.json").read_text())
    key = name.replace("_", ",")
    if key not in presets:
        raise KeyError(f"unknown preset {name!r}; known: {sorted(presets)}")
    spec = presets[key]
    return TwistProblem(build_cover(spec["genus"]), parse_word(spec["r"], "y"), order, k_max)


# -- the logarithm side ----------------------------------------------------------


def log_element(r: Sequence[int], order: int, rank: int | None = None) -> GroupRingElement:
    """``sum_(k<=order) (-1)^(k+1) (r - 1)^k / k`` as a finite group-ring element."""
    u = GroupRingElement.from_word(r, rank=rank) - GroupRingElement.one(rank)
    out = GroupRingElement.zero(rank)
    power = GroupRingElement.one(rank)
    for k in range(1, order + 1):
        power = power * u
        out = out + power.scale(Fraction((-1) ** (k + 1), k))
    return out


def build_L(P: TwistProblem) -> LoopSum:
    """``theta(c((log r)^2))`` with the class of the constant loop dropped."""
    rank = P.cover.cover_rank
    if not P.r:
        return LoopSum(rank=rank)
    lg = log_element(P.r, P.order, rank)
    return theta(P.cover, forgetful_c(lg * lg).drop_trivial())


def corrupt(L: LoopSum, index: int) -> LoopSum:
    """Flip the sign of one term (sorted order) of ``L``."""
    terms = L.sorted_terms()
    key, c = terms[index % len(terms)]
    return L - LoopSum.from_word(key, 2 * c, rank=L.rank)


class AugmentationError(ValueError):
    """The action of ``L`` on a generator has nonzero augmentation."""

    def __init__(self, gen: int, value):
        super().__init__(f"action of L on x{gen} has nonzero augmentation {value}")
        self.gen = gen


def action_images(P: TwistProblem, L: LoopSum) -> dict[int, TruncatedSeries]:
    """Magnus images of ``sigma_tilde(L)(a_i)`` for every base generator."""
    g, N = P.cover.base_rank, P.order
    return {i: magnus_embed(sigma_tilde(P.cover, L, (i,)), N, g) for i in range(1, g + 1)}


def derivation_of_L(P: TwistProblem, L: LoopSum, sign: int = 1,
                    images: dict[int, TruncatedSeries] | None = None) -> DerivationRep:
    if images is None:
        images = action_images(P, L)
    for i, img in images.items():
        if img.constant_term != 0:
            raise AugmentationError(i, img.constant_term)
    return DerivationRep(P.cover.base_rank, P.order, {i: v.scale(sign) for i, v in images.items()})


# -- the geometric side ---------------------------------------------------------------


def geometric_twist(P: TwistProblem, x: Sequence[int], flip: int | None = None) -> Word:
    """Image of a base word under the twist along the annulus below ``c(r)``.

    ``flip`` reverses one insertion (numbered over the insertions of ``c``
    followed by those of ``tau(c)``); see ``insertion_count``.
    """
    if P.degenerate:
        return reduce(x)
    par, w = lift(P.cover, x)
    end = end_sector(par)
    S = P.cover.surface
    n_c = len(path_crossings(S, P.curve, w, end=end))
    flip_c = flip if flip is not None and flip < n_c else None
    flip_tau = flip - n_c if flip is not None and flip >= n_c else None
    w = twist_insert(S, P.curve, w, end=end, flip=flip_c)
    w = twist_insert(S, P.tau_curve, w, end=end, power=-1, flip=flip_tau)
    return project(P.cover, w, par)


def insertion_count(P: TwistProblem, x: Sequence[int]) -> int:
    """Number of loop insertions ``geometric_twist`` makes on ``x``."""
    if P.degenerate:
        return 0
    par, w = lift(P.cover, x)
    end = end_sector(par)
    S = P.cover.surface
    w1 = twist_insert(S, P.curve, w, end=end)
    return len(path_crossings(S, P.curve, w, end=end)) + len(path_crossings(S, P.tau_curve, w1, end=end))


def twist_images(P: TwistProblem, flip: tuple[int, int] | None = None) -> dict[int, TruncatedSeries]:
    """``X_i -> magnus(t_A(a_i)) - 1``; ``flip=(i, k)`` corrupts insertion ``k`` on ``a_i``."""
    words = {i: geometric_twist(P, (i,), flip[1] if flip and flip[0] == i else None)
             for i in range(1, P.cover.base_rank + 1)}
    return automorphism_images(words, P.cover.base_rank, P.order)


def log_twist_series(P: TwistProblem, x: Sequence[int], images: dict | None = None) -> TruncatedSeries:
    """``-sum_i (1 - t_A)^i (x) / i`` in truncation."""
    g, N = P.cover.base_rank, P.order
    if images is None:
        images = twist_images(P)
    u = magnus_embed(x, N, g)
    out = TruncatedSeries.zero(g, N)
    for i in range(1, P.k_max + 1):
        u = u - substitute(images, u)
        if not u:
            return out
        out = out - u.scale(Fraction(1, i))
    raise NonTerminationError(f"log of the twist did not terminate within {P.k_max} steps",
                              last_degree=u.min_degree())


# -- verification -------------------------------------------------------------------


@dataclass
class GeneratorComparison:
    gen: int
    exp_side: TruncatedSeries
    twist_side: TruncatedSeries
    agree_through_degree: int
    log_agree_through_degree: int

    def to_json(self, full: bool = False) -> dict:
        out = {"gen": f"x{self.gen}", "agree_through_degree": self.agree_through_degree,
               "log_agree_through_degree": self.log_agree_through_degree}
        if full:
            out["exp_side"] = self.exp_side.to_json()
            out["twist_side"] = self.twist_side.to_json()
        return out


@dataclass
class TwistReport:
    surface: str
    r: str
    order: int
    verified: bool
    verified_sign: int | None
    signs_verifying: list[int]
    per_generator: list[GeneratorComparison]
    first_disagreement_degree: int | None
    timings: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_json(self, full: bool = False) -> dict:
        return {
            "surface": self.surface,
            "r": self.r,
            "order": self.order,
            "verified": self.verified,
            "verified_sign": self.verified_sign,
            "signs_verifying": self.signs_verifying,
            "first_disagreement_degree": self.first_disagreement_degree,
            "per_generator": [c.to_json(full) for c in self.per_generator],
            "timings": {k: round(v, 4) for k, v in self.timings.items()},
            "notes": self.notes,
        }


def verify_main_theorem(P: TwistProblem, L: LoopSum | None = None,
                        flip: tuple[int, int] | None = None) -> TwistReport:
    """Compare ``exp(sigma_tilde(+-L))`` with the geometric twist on every generator.

    Both comparisons (exponential against twist, logarithm of the twist
    against the derivation) must hold with the same sign.  ``L`` may be
    passed in to test a corrupted logarithm; ``flip`` corrupts the twist.
    """
    g, N = P.cover.base_rank, P.order
    timings = {}
    t0 = time.perf_counter()
    if L is None:
        L = build_L(P)
    timings["build_L"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    action = action_images(P, L)
    try:
        D = derivation_of_L(P, L, images=action)
    except AugmentationError:
        D = None
    timings["derivation"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    images = twist_images(P, flip)
    one = TruncatedSeries.one(g, N)
    twist_sides = {i: images[i] + one for i in images}
    timings["geometric_twist"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    log_sides = {}
    notes = []
    for i in range(1, g + 1):
        try:
            log_sides[i] = log_twist_series(P, (i,), images)
        except NonTerminationError as exc:
            notes.append(f"x{i}: {exc} (last nonzero degree {exc.last_degree})")
            log_sides[i] = exc
    timings["log_twist"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    per_sign = {}
    for sign in (1, -1):
        rows = []
        for i in range(1, g + 1):
            if isinstance(log_sides[i], NonTerminationError):
                log_agree = log_sides[i].last_degree - 1
            else:
                log_agree = log_sides[i].agreement_degree(action[i].scale(sign))
            if D is None:
                # a constant term cannot be exponentiated: disagreement in degree 0
                rows.append(GeneratorComparison(i, action[i].scale(sign), twist_sides[i], -1, log_agree))
                continue
            lhs = exp_derivation(D.scale(sign), magnus_embed((i,), N, g), P.k_max)
            rows.append(GeneratorComparison(
                i, lhs, twist_sides[i], lhs.agreement_degree(twist_sides[i]), log_agree))
        per_sign[sign] = rows
    timings["exp_derivation"] = time.perf_counter() - t0

    def score(rows):
        return min(min(c.agree_through_degree, c.log_agree_through_degree) for c in rows)

    verifying = [s for s in (1, -1) if score(per_sign[s]) >= N]
    best = max((1, -1), key=lambda s: (score(per_sign[s]), s))
    verified = len(verifying) >= 1
    first_bad = None if score(per_sign[best]) >= N else score(per_sign[best]) + 1
    return TwistReport(
        surface=f"N{g},1", r=format_word(P.r, "y"), order=N, verified=verified,
        verified_sign=verifying[0] if verifying else None,
        signs_verifying=verifying, per_generator=per_sign[best],
        first_disagreement_degree=first_bad, timings=timings, notes=notes)
