"""The non-orientable surface N_{g,1} and its orientation double cover.

The base group is free on ``a_1 .. a_g`` with boundary ``a_1^2 ... a_g^2``
and every generator reverses orientation.  The cover corresponds to the
even-length words; with transversal ``{1, a_1}`` its Schreier basis is

    y_1 = a_1 a_1,   y_(2i-2) = a_1 a_i,   y_(2i-1) = a_i a_1^-1   (2 <= i <= g).

The cover surface is built as a ribbon graph: the base vertex lifts to an
upper vertex (same cyclic order) and a lower vertex (reversed order), every
base edge is twisted so its two lifts swap sheets, and the lift of ``a_1``
leaving the upper vertex is contracted.  The two lifts of the base
basepoint become the sectors ``"u"`` and ``"d"``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .ribbon import (
    RibbonSurface,
    boundary_cycles,
    goldman_bracket,
    kk_action,
)
from .words import (
    EMPTY,
    GroupRingElement,
    LoopSum,
    Word,
    cyclic_canonical,
    format_word,
    inverse,
    reduce,
)

UPPER, LOWER = "u", "d"


class PresentationError(RuntimeError):
    pass


def _cover_end(kind: str, i: int, sheet: str) -> int | None:
    """Signed cover edge-end for the lift of base end ``(kind, i)`` on ``sheet``."""
    if i == 1:
        return {("in", UPPER): -1, ("out", LOWER): 1}.get((kind, sheet))
    if sheet == UPPER:
        return 2 * i - 1 if kind == "out" else -(2 * i - 2)
    return 2 * i - 2 if kind == "out" else -(2 * i - 1)


def _cover_surface(g: int) -> RibbonSurface:
    base = [(kind, i) for i in range(1, g + 1) for kind in ("out", "in")]
    n = 2 * g
    # cyclic item lists alternating end, corner; corner k sits after base[k]
    upper = []
    for k in range(n):
        upper += [("E", base[k], UPPER), ("C", k, UPPER)]
    rev = [base[0]] + base[:0:-1]
    lower = []
    for t in range(n):
        nxt = rev[(t + 1) % n]
        lower += [("E", rev[t], LOWER), ("C", base.index(nxt), LOWER)]
    iu = upper.index(("E", ("out", 1), UPPER))
    il = lower.index(("E", ("in", 1), LOWER))
    merged = upper[iu + 1:] + upper[:iu] + lower[il + 1:] + lower[:il]
    while merged[0][0] != "E":
        merged = merged[1:] + merged[:1]
    order: list[int] = []
    gaps: list[list] = []
    current: list = []
    for item in merged:
        if item[0] == "E":
            if order:
                gaps.append(current)
            order.append(_cover_end(item[1][0], item[1][1], item[2]))
            current = []
        else:
            current.append((item[1], item[2]))
    gaps.append(current)
    base_corner = n - 1  # between in_g and out_1: the boundary reads a_1^2 ... a_g^2
    sectors = {}
    for idx, gap in enumerate(gaps):
        for k, sheet in gap:
            if k == base_corner:
                sectors[sheet] = idx
    return RibbonSurface(rank=2 * g - 1, cyclic_order=tuple(order), basepoint_sector=sectors[UPPER],
                         sectors=sectors, name=f"cover of N{g},1")


@dataclass(frozen=True)
class CoverPresentation:
    genus: int

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError("genus must be at least 1")

    @property
    def base_rank(self) -> int:
        return self.genus

    @property
    def cover_rank(self) -> int:
        return 2 * self.genus - 1

    @cached_property
    def boundary(self) -> Word:
        return tuple(a for i in range(1, self.genus + 1) for a in (i, i))

    @cached_property
    def basis(self) -> tuple[Word, ...]:
        """Base-letter words of the cover generators ``y_1 .. y_(2g-1)``."""
        out: list[Word] = [(1, 1)]
        for i in range(2, self.genus + 1):
            out += [(1, i), (i, -1)]
        return tuple(out)

    @cached_property
    def surface(self) -> RibbonSurface:
        return _cover_surface(self.genus)

    @cached_property
    def _schreier(self) -> dict:
        # (coset, base letter) -> (cover letter or None, new coset)
        table = {}
        for i in range(1, self.genus + 1):
            up = 2 * i - 1 if i > 1 else None      # a_i a_1^-1
            down = 2 * i - 2 if i > 1 else 1       # a_1 a_i
            table[(0, i)] = (up, 1)
            table[(1, i)] = (down, 0)
            table[(0, -i)] = (-down, 1)
            table[(1, -i)] = (-up if up else None, 0)
        return table

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "base_rank": self.base_rank,
            "boundary": format_word(self.boundary, "x"),
            "orientation_character": {f"x{i}": 1 for i in range(1, self.genus + 1)},
            "deck_element": "x1",
            "transversal": ["e", "x1"],
            "basis": {f"y{k + 1}": format_word(w, "x") for k, w in enumerate(self.basis)},
            "surface": self.surface.to_json(),
            "boundary_cycles": [format_word(c, "y") for c in boundary_cycles(self.surface)],
        }


def build_cover(g: int) -> CoverPresentation:
    return CoverPresentation(g)


def lift(C: CoverPresentation, x: Sequence[int]) -> tuple[int, Word]:
    """Lift a base word starting at the upper basepoint.

    Returns ``(parity, w)``.  For even parity ``w`` is the closed loop in
    cover letters; for odd parity ``w`` is the cover word of ``x a_1^-1``,
    i.e. the path that ends in the lower basepoint sector.
    """
    coset = 0
    out = []
    for s in reduce(x):
        if abs(s) > C.genus:
            raise ValueError(f"letter {s} beyond base rank {C.genus}")
        letter, coset = C._schreier[(coset, s)]
        if letter is not None:
            out.append(letter)
    return coset, reduce(out)


def end_sector(parity: int) -> str:
    return LOWER if parity else UPPER


def project(C: CoverPresentation, w: Sequence[int], parity: int = 0) -> Word:
    """Base word of a cover word (with ``parity=1``, of the path to the lower basepoint)."""
    out: list[int] = []
    for s in w:
        b = C.basis[abs(s) - 1]
        out.extend(b if s > 0 else inverse(b))
    if parity:
        out.append(1)
    return reduce(out)


def project_element(C: CoverPresentation, a: GroupRingElement, parity: int = 0) -> GroupRingElement:
    return GroupRingElement(((project(C, w, parity), c) for w, c in a.terms.items()), rank=C.base_rank)


def project_loops(C: CoverPresentation, y: LoopSum) -> LoopSum:
    return LoopSum(((project(C, w), c) for w, c in y.terms.items()), rank=C.base_rank)


def rewrite_even(C: CoverPresentation, x: Sequence[int]) -> Word:
    par, w = lift(C, x)
    if par:
        raise PresentationError(f"{x} does not lie in the orientation subgroup")
    return w


def tau_word(C: CoverPresentation, w: Sequence[int]) -> Word:
    """Deck involution on cover words: conjugation by ``a_1``."""
    return rewrite_even(C, (1,) + project(C, w) + (-1,))


def tau_class(C: CoverPresentation, y: LoopSum) -> LoopSum:
    return LoopSum(((tau_word(C, w), c) for w, c in y.terms.items()), rank=y.rank)


def tau_element(C: CoverPresentation, a: GroupRingElement) -> GroupRingElement:
    return GroupRingElement(((tau_word(C, w), c) for w, c in a.terms.items()), rank=a.rank)


def theta(C: CoverPresentation, y: LoopSum) -> LoopSum:
    """The projector ``(id - tau) / 2``."""
    return (y - tau_class(C, y)).scale(Fraction(1, 2))


def forgetful_c(a: GroupRingElement) -> LoopSum:
    """Forget the basepoint: words to their free homotopy classes."""
    return LoopSum(((w, c) for w, c in a.terms.items()), rank=a.rank)


def cover_bracket(C: CoverPresentation, a: LoopSum, b: LoopSum) -> LoopSum:
    return goldman_bracket(C.surface, a, b)


def sigma_tilde(C: CoverPresentation, y: LoopSum, x: Sequence[int] | GroupRingElement,
                project_theta: bool = True) -> GroupRingElement:
    """Action of cover loops on the base group ring.

    Lifts ``x`` from the upper basepoint, lets ``theta(y)`` act by the
    oriented action on the cover with the path ending in the basepoint sector
    matching the lift's parity, and projects back down.
    """
    if isinstance(x, GroupRingElement):
        out = GroupRingElement.zero(C.base_rank)
        for w, c in x.terms.items():
            out = out + sigma_tilde(C, y, w, project_theta).scale(c)
        return out
    y = y.drop_trivial()
    if project_theta:
        y = theta(C, y)
    par, w = lift(C, x)
    acted = kk_action(C.surface, y, w, end=end_sector(par))
    return GroupRingElement(((project(C, v, par), c) for v, c in acted.terms.items()), rank=C.base_rank)
