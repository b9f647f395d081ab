"""One-vertex ribbon graphs: oriented surfaces with boundary.

The surface deformation retracts onto a single vertex with ``rank`` loops.
Edge-ends are signed edge ids: ``+i`` is the end through which ``x_i``
leaves the vertex and ``-i`` the end through which it comes back, so the
letter ``s`` departs through end ``s`` and arrives through end ``-s``.
``cyclic_order`` lists the ``2 * rank`` ends counterclockwise; this fixes
the orientation of the surface.  Corner ``k`` is the sector between
``cyclic_order[k]`` and ``cyclic_order[k + 1]``; basepoints sit in corners,
so they lie on the boundary.

Curves are handled in the universal cover, a planar tree whose ends form a
circle.  Every reduced word (optionally followed by a corner) names a point
of that circle, and the circle is cut open at the lift of the basepoint
corner at the root vertex.  Two geodesics cross exactly when their
endpoints interleave, which gives the linked pairs of two cyclic words and
the crossings of a closed curve with a based path.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from typing import Iterable, Mapping, Sequence

from .words import (
    EMPTY,
    GroupRingElement,
    LoopSum,
    Word,
    cyclic_canonical,
    cyclically_reduce,
    inverse,
    is_proper_power,
    is_reduced,
    reduce,
    rotate,
)

BASEPOINT = "*"


class NotSimpleError(ValueError):
    """Raised when a curve that must be simple has self-crossings."""


@dataclass(frozen=True)
class RibbonSurface:
    rank: int
    cyclic_order: tuple[int, ...]
    basepoint_sector: int = 0
    sectors: Mapping[str, int] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "cyclic_order", tuple(self.cyclic_order))
        expected = sorted([i for i in range(1, self.rank + 1)] + [-i for i in range(1, self.rank + 1)])
        if sorted(self.cyclic_order) != expected:
            raise ValueError("cyclic_order must list every edge-end +i, -i exactly once")
        n = len(self.cyclic_order)
        if not 0 <= self.basepoint_sector < n:
            raise ValueError("basepoint_sector out of range")
        sectors = {BASEPOINT: self.basepoint_sector}
        sectors.update(self.sectors)
        for k in sectors.values():
            if not 0 <= k < n:
                raise ValueError("sector out of range")
        object.__setattr__(self, "sectors", sectors)

    @cached_property
    def _pos(self) -> dict[int, int]:
        return {e: k for k, e in enumerate(self.cyclic_order)}

    @property
    def euler_characteristic(self) -> int:
        return 1 - self.rank

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic - len(self.faces)) // 2

    def sector(self, name: str | int | None) -> int:
        if name is None:
            return self.basepoint_sector
        if isinstance(name, int):
            return name
        return self.sectors[name]

    # -- faces --------------------------------------------------------------

    @cached_property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        """Corner cycles of the boundary components."""
        n = len(self.cyclic_order)
        seen = set()
        out = []
        for start in range(n):
            if start in seen:
                continue
            cyc = []
            k = start
            while k not in seen:
                seen.add(k)
                cyc.append(k)
                s = self.cyclic_order[(k + 1) % n]
                k = self._pos[-s]
            out.append(tuple(cyc))
        return tuple(out)

    def boundary_word(self, corner: int) -> Word:
        """The boundary loop read from ``corner`` around its face."""
        n = len(self.cyclic_order)
        word = []
        k = corner
        while True:
            s = self.cyclic_order[(k + 1) % n]
            word.append(s)
            k = self._pos[-s]
            if k == corner:
                return tuple(word)

    def face_of(self, corner: int) -> int:
        for idx, face in enumerate(self.faces):
            if corner in face:
                return idx
        raise ValueError(corner)

    # -- points on the circle at infinity --------------------------------------

    def point(self, letters: Sequence[int], corner: int | None = None) -> tuple[int, ...]:
        """Sort key of a boundary point of the universal cover.

        ``letters`` is a reduced path from the root vertex; with ``corner``
        the point is that corner at the final vertex, otherwise ``letters``
        is a (long enough) prefix of an end of the tree.
        """
        m4 = 2 * len(self.cyclic_order)
        pos = self._pos
        ref = 2 * self.basepoint_sector + 1
        out = []
        for s in letters:
            out.append((2 * pos[s] - ref) % m4)
            ref = 2 * pos[-s]
        if corner is not None:
            out.append((2 * corner + 1 - ref) % m4)
        return tuple(out)

    def end_point(self, prefix: Sequence[int], period: Sequence[int], length: int) -> tuple[int, ...]:
        """Key of the end ``prefix * period^infinity`` read to ``length`` letters."""
        reps = length // len(period) + 2
        return self.point((tuple(prefix) + tuple(period) * reps)[:max(length, len(prefix) + 1)])

    def to_json(self) -> dict:
        data = {"rank": self.rank, "cyclic_order": list(self.cyclic_order),
                "basepoint_sector": self.basepoint_sector}
        extra = {k: v for k, v in self.sectors.items() if k != BASEPOINT}
        if extra:
            data["sectors"] = extra
        if self.name:
            data["name"] = self.name
        return data

    @classmethod
    def from_json(cls, data: Mapping) -> "RibbonSurface":
        return cls(rank=int(data["rank"]), cyclic_order=tuple(data["cyclic_order"]),
                   basepoint_sector=int(data.get("basepoint_sector", 0)),
                   sectors=dict(data.get("sectors", {})), name=data.get("name", ""))


def load_surface(name: str) -> RibbonSurface:
    """Load a shipped surface preset (``torus1``, ``annulus``)."""
    text = resources.files("twistlog.data").joinpath(f"{name}.json").read_text()
    return RibbonSurface.from_json(json.loads(text))


def boundary_cycles(S: RibbonSurface) -> list[Word]:
    return sorted((cyclic_canonical(S.boundary_word(face[0])) for face in S.faces))


# -- crossings -----------------------------------------------------------------


@dataclass(frozen=True)
class IntersectionDatum:
    """A transverse crossing: positions in the two words and the local sign.

    For two cyclic words the positions are rotation offsets; for a curve and
    a based path ``first`` is the rotation of the curve and ``second`` the
    vertex index along the path where the lift first meets it.
    """

    first: int
    second: int
    sign: int


def _orientation(a_plus, b_plus, a_minus, b_minus) -> int:
    """+1 if the four points run counterclockwise as a+, b+, a-, b-; -1 for
    a+, b-, a-, b+; 0 if the pairs do not interleave."""
    pts = [a_plus, b_plus, a_minus, b_minus]
    if len(set(pts)) < 4:
        return 0
    order = sorted(range(4), key=lambda k: pts[k])
    k0 = order.index(0)
    order = order[k0:] + order[:k0]
    if order == [0, 1, 2, 3]:
        return 1
    if order == [0, 3, 2, 1]:
        return -1
    return 0


def _check_cyclic(w: Sequence[int]) -> Word:
    w = tuple(w)
    if not w or cyclically_reduce(w) != w:
        raise ValueError(f"expected a nonempty cyclically reduced word, got {w}")
    return w


def linked_pairs(S: RibbonSurface, alpha: Sequence[int], beta: Sequence[int]) -> list[IntersectionDatum]:
    """Crossings of two closed curves given by cyclically reduced words.

    Each crossing corresponds to a pair of rotations ``(i, j)`` whose axes
    through the root cross and whose common segment starts at the root when
    read along ``alpha``.  The sign is +1 when ``(alpha', beta')`` is a
    positive frame.
    """
    alpha = _check_cyclic(alpha)
    beta = _check_cyclic(beta)
    length = 2 * (len(alpha) + len(beta)) + 2
    beta_rots = []
    for j in range(len(beta)):
        b = rotate(beta, j)
        beta_rots.append((j, b, b[0], -b[-1],
                          S.end_point((), b, length), S.end_point((), inverse(b), length)))
    out = []
    for i in range(len(alpha)):
        a = rotate(alpha, i)
        back = -a[-1]
        a_plus = S.end_point((), a, length)
        a_minus = S.end_point((), inverse(a), length)
        for j, b, b_first, b_back, b_plus, b_minus in beta_rots:
            if back == b_first or back == b_back:
                continue
            eps = _orientation(a_plus, b_plus, a_minus, b_minus)
            if eps:
                out.append(IntersectionDatum(i, j, eps))
    return out


def is_simple(S: RibbonSurface, c: Sequence[int]) -> bool:
    """No self-crossings and not a multiply traversed loop."""
    c = cyclically_reduce(c)
    return not c or (not is_proper_power(c) and not linked_pairs(S, c, c))


def goldman_bracket(S: RibbonSurface, a: LoopSum, b: LoopSum) -> LoopSum:
    """Goldman bracket of two linear combinations of free loops."""
    rank = a._check_rank(b)
    acc: dict = {}
    for alpha, ca in a.terms.items():
        if not alpha:
            continue
        for beta, cb in b.terms.items():
            if not beta:
                continue
            for d in linked_pairs(S, alpha, beta):
                key = cyclic_canonical(rotate(alpha, d.first) + rotate(beta, d.second))
                acc[key] = acc.get(key, 0) + d.sign * ca * cb
    return LoopSum._raw({k: v for k, v in acc.items() if v}, rank)


@dataclass(frozen=True)
class PathCrossing:
    vertex: int       # index along the path of the first shared vertex
    rotation: int     # rotation of the curve word
    sign: int
    conjugate: Word   # based loop: path to the crossing, once around, back
    entry: tuple      # sort key of the first endpoint of the lift (nesting order)


def path_crossings(S: RibbonSurface, alpha: Sequence[int], x: Sequence[int],
                   end: str | int | None = None, start: str | int | None = None) -> list[PathCrossing]:
    """Crossings of the closed curve ``alpha`` with the based path ``x``.

    The path runs from corner ``start`` at the root to corner ``end`` at the
    vertex ``x`` (both default to the basepoint).  Lifts of ``alpha`` are
    enumerated at the first vertex of ``x`` they pass through; a lift crosses
    the path exactly when its endpoints separate the two corner points.
    """
    alpha = _check_cyclic(alpha)
    x = tuple(x)
    if not is_reduced(x):
        raise ValueError("path word must be reduced")
    start_key = S.point((), S.sector(start))
    end_key = S.point(x, S.sector(end))
    length = 2 * (len(alpha) + len(x)) + 2
    rots = [rotate(alpha, j) for j in range(len(alpha))]
    out = []
    for k in range(len(x) + 1):
        prefix = x[:k]
        prev = -x[k - 1] if k else None
        for j, a in enumerate(rots):
            if prev is not None and (a[0] == prev or -a[-1] == prev):
                continue
            a_plus = S.end_point(prefix, a, length + k)
            a_minus = S.end_point(prefix, inverse(a), length + k)
            eps = _orientation(a_plus, end_key, a_minus, start_key)
            if eps:
                gamma = prefix + a + inverse(prefix)
                out.append(PathCrossing(k, j, eps, gamma, min(a_plus, a_minus)))
    return out


def kk_action(S: RibbonSurface, y: LoopSum, x: Sequence[int], end: str | int | None = None,
              start: str | int | None = None) -> GroupRingElement:
    """The Kawazumi-Kuno action of free loops on a based path.

    Each crossing ``q`` of a loop with the path contributes
    ``sign(q) * x_{*q} y_q x_{q*}``.
    """
    x = reduce(x)
    if x == EMPTY and S.sector(end) == S.sector(start):
        return GroupRingElement.zero()
    acc: dict = {}
    for alpha, c in y.terms.items():
        if not alpha:
            continue
        for q in path_crossings(S, alpha, x, end=end, start=start):
            w = reduce(q.conjugate + x)
            acc[w] = acc.get(w, 0) + q.sign * c
    return GroupRingElement._raw({k: v for k, v in acc.items() if v}, None)


def kk_action_element(S: RibbonSurface, y: LoopSum, a: GroupRingElement) -> GroupRingElement:
    """Linear extension of ``kk_action`` to group-ring elements (basepoint to basepoint)."""
    out = GroupRingElement.zero(a.rank)
    for w, c in a.terms.items():
        out = out + kk_action(S, y, w).scale(c)
    return out


def twist_insert(S: RibbonSurface, c: Sequence[int], x: Sequence[int], end: str | int | None = None,
                 power: int = 1, flip: int | None = None) -> Word:
    """Image of the based path ``x`` under the right-handed Dehn twist along ``c``.

    At each crossing, in order along ``x``, the loop ``c^(+-1)`` is inserted
    with exponent ``power * sign``.  ``power=-1`` gives the inverse twist.
    ``flip`` reverses the insertion at the crossing of that index; it exists
    to check that the comparison harness detects a single wrong insertion.
    """
    c = cyclically_reduce(c)
    x = reduce(x)
    if not c:
        return x
    if not is_simple(S, c):
        raise NotSimpleError(f"curve {c} is not simple")
    crossings = sorted(path_crossings(S, c, x, end=end), key=lambda q: q.entry)
    letters: list[int] = []
    for idx, q in enumerate(crossings):
        e = q.sign * power * (-1 if flip == idx else 1)
        letters.extend(q.conjugate if e > 0 else inverse(q.conjugate))
    return reduce(tuple(letters) + x)
