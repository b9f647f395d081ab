"""Randomized property suites over exact arithmetic.

Each suite draws its cases from a seeded ``random.Random`` and returns a
``SuiteResult``; nothing here is approximate, a case either holds exactly
or it is recorded as a failure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import magnus as mg
from .cover import (
    CoverPresentation,
    build_cover,
    cover_bracket,
    lift,
    project,
    project_loops,
    sigma_tilde,
    tau_class,
    tau_word,
    theta,
)
from .ribbon import RibbonSurface, boundary_cycles, goldman_bracket
from .words import (
    GroupRingElement,
    LoopSum,
    cyclic_canonical,
    forget_basepoint,
    parity,
    random_cyclic_word,
    random_word,
    reduce,
)


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: int = 0
    first_failure: str | None = None
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failures == 0 and self.cases > 0

    def record(self, holds: bool, describe: Callable[[], str]):
        self.cases += 1
        if not holds:
            self.failures += 1
            if self.first_failure is None:
                self.first_failure = describe()

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f" first failure: {self.first_failure}" if self.first_failure else ""
        return f"{status} {self.name}: {self.cases - self.failures}/{self.cases}{extra}"

    def to_json(self) -> dict:
        return {"name": self.name, "cases": self.cases, "failures": self.failures,
                "first_failure": self.first_failure}


def _loops(rng: random.Random, rank: int, max_len: int, n_terms: int = 1) -> LoopSum:
    return LoopSum(((random_cyclic_word(rng, rank, max_len), rng.choice((-2, -1, 1, 2)))
                    for _ in range(n_terms)), rank=rank)


def _act(C: CoverPresentation, y: LoopSum, x: GroupRingElement) -> GroupRingElement:
    return sigma_tilde(C, y, x)


# -- identities of the action on the non-orientable surface -------------------------------


def identity_suite(C: CoverPresentation, cases: int, seed: int = 0, max_len: int = 3) -> list[SuiteResult]:
    rng = random.Random(seed)
    m, g = C.cover_rank, C.base_rank
    names = ["leibniz", "tau_negates_action", "tau_antihomomorphism", "theta_idempotent",
             "theta_bracket", "commutator_lemma", "module_law"]
    res = {n: SuiteResult(f"{n} [N{g},1]") for n in names}
    br = lambda a, b: cover_bracket(C, a, b)
    th = lambda a: theta(C, a)
    for _ in range(cases):
        y1 = _loops(rng, m, max_len, rng.randint(1, 2))
        y2 = _loops(rng, m, max_len, rng.randint(1, 2))
        x1 = random_word(rng, g, max_len)
        x2 = random_word(rng, g, max_len)
        X1 = GroupRingElement.from_word(x1, rank=g)
        X2 = GroupRingElement.from_word(x2, rank=g)

        lhs = sigma_tilde(C, y1, reduce(x1 + x2))
        rhs = sigma_tilde(C, y1, x1) * X2 + X1 * sigma_tilde(C, y1, x2)
        res["leibniz"].record(lhs == rhs, lambda: f"y={y1} x1={x1} x2={x2}")

        res["tau_negates_action"].record(
            sigma_tilde(C, y1, x1) == -sigma_tilde(C, tau_class(C, y1), x1), lambda: f"y={y1} x={x1}")

        res["tau_antihomomorphism"].record(
            tau_class(C, br(y1, y2)) == -br(tau_class(C, y1), tau_class(C, y2)), lambda: f"{y1}, {y2}")

        res["theta_idempotent"].record(th(th(y1)) == th(y1), lambda: f"{y1}")

        t12 = br(th(y1), th(y2))
        four = [t12, th(br(y1, th(y2))), th(br(th(y1), y2)), th(t12)]
        res["theta_bracket"].record(all(v == t12 for v in four), lambda: f"{y1}, {y2}")

        lhs = _act(C, y1, _act(C, y2, X1)) - _act(C, y2, _act(C, y1, X1))
        forms = [br(th(y1), y2), br(y1, th(y2)), br(th(y1), th(y2))]
        res["commutator_lemma"].record(all(_act(C, f, X1) == lhs for f in forms),
                                       lambda: f"a={y1} b={y2} r={x1}")

        a, b = th(y1), th(y2)
        lhs = _act(C, a, _act(C, b, X1)) - _act(C, b, _act(C, a, X1))
        res["module_law"].record(lhs == _act(C, br(a, b), X1), lambda: f"a={y1} b={y2} r={x1}")
    return list(res.values())


# -- Goldman Lie algebra on the cover --------------------------------------------------------


def goldman_suite(S: RibbonSurface, triples: int, boundary_cases: int, seed: int = 0,
                  max_len: int = 4, label: str = "") -> list[SuiteResult]:
    rng = random.Random(seed)
    m = S.rank
    anti = SuiteResult(f"antisymmetry{label}")
    jac = SuiteResult(f"jacobi{label}")
    bdry = SuiteResult(f"boundary_central{label}")
    br = lambda a, b: goldman_bracket(S, a, b)
    for _ in range(triples):
        a, b, c = (LoopSum.from_word(random_cyclic_word(rng, m, max_len)) for _ in range(3))
        anti.record(br(a, b) == -br(b, a), lambda: f"{a}, {b}")
        total = br(a, br(b, c)) + br(b, br(c, a)) + br(c, br(a, b))
        jac.record(total == 0, lambda: f"{a}, {b}, {c}")
    cycles = [LoopSum.from_word(w) for w in boundary_cycles(S)]
    for _ in range(boundary_cases):
        b = LoopSum.from_word(random_cyclic_word(rng, m, max_len))
        bdry.record(all(br(d, b) == 0 for d in cycles), lambda: f"{b}")
    return [anti, jac, bdry]


# -- filtration ---------------------------------------------------------------------------------


def _ideal_power(rng: random.Random, rank: int, power: int, max_len: int) -> GroupRingElement:
    """A random product of ``power`` elements ``(w - 1)``, w nontrivial."""
    out = GroupRingElement.one(rank)
    for _ in range(power):
        w = random_word(rng, rank, max_len, min_len=1)
        out = out * (GroupRingElement.from_word(w, rank=rank) - GroupRingElement.one(rank))
    return out


def filtration_suite(C: CoverPresentation, order: int, cases: int, seed: int = 0,
                     max_len: int = 2) -> list[SuiteResult]:
    rng = random.Random(seed)
    m, g = C.cover_rank, C.base_rank
    shift = SuiteResult(f"filtration_shift [N{g},1, N={order}]")
    unit = SuiteResult(f"sigma_of_one_vanishes [N{g},1]")
    pairs = [(i, j) for i in range(1, order + 1) for j in range(1, order + 1) if i + j <= order]
    for k in range(cases):
        i, j = pairs[k % len(pairs)]
        y = forget_basepoint(_ideal_power(rng, m, i, max_len))
        x = _ideal_power(rng, g, j, max_len)
        deg = mg.ideal_degree(sigma_tilde(C, y, x), order, g)
        shift.record(deg >= i + j - 2, lambda: f"i={i} j={j} degree={deg}")
        unit.record(sigma_tilde(C, y, ()) == 0, lambda: f"y={y}")
    return [shift, unit]


# -- Magnus machinery -------------------------------------------------------------------------


def _random_series(rng: random.Random, rank: int, order: int, constant: int | None, n_terms: int = 4):
    terms = {}
    for _ in range(n_terms):
        d = rng.randint(1, order)
        mono = tuple(rng.randint(1, rank) for _ in range(d))
        terms[mono] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    if constant is not None:
        terms[()] = constant
    return mg.TruncatedSeries(rank, order, terms)


def magnus_suite(cases: int, seed: int = 0, max_order: int = 5, rank: int = 3) -> list[SuiteResult]:
    rng = random.Random(seed)
    mult = SuiteResult("magnus_multiplicative")
    inv = SuiteResult("log_exp_inverse")
    leib = SuiteResult("derivation_leibniz")
    endo = SuiteResult("exp_derivation_endomorphism")
    for _ in range(cases):
        N = rng.randint(1, max_order)
        a = random_word(rng, rank, 5)
        b = random_word(rng, rank, 5)
        mult.record(mg.magnus_embed(reduce(a + b), N, rank)
                    == mg.magnus_embed(a, N, rank) * mg.magnus_embed(b, N, rank), lambda: f"{a} {b} N={N}")

        s = _random_series(rng, rank, N, 0)
        group_like = mg.magnus_embed(a, N, rank)
        ok = mg.log_series(mg.exp_series(s)) == s and mg.exp_series(mg.log_series(group_like)) == group_like
        inv.record(ok, lambda: f"s={s} w={a}")

        # degree-raising derivation plus a nilpotent degree-preserving part
        images = {i: _random_series(rng, rank, N, 0, 3) for i in range(1, rank + 1)}
        for i in images:
            images[i] = mg.TruncatedSeries(rank, N, {k: v for k, v in images[i].terms.items() if len(k) >= 2})
        if N >= 1 and rank >= 2:
            images[1] = images[1] + mg.TruncatedSeries(rank, N, {(2,): rng.randint(-2, 2)})
        D = mg.DerivationRep(rank, N, images)
        s1 = _random_series(rng, rank, N, rng.randint(-2, 2))
        s2 = _random_series(rng, rank, N, rng.randint(-2, 2))
        leib.record(D(s1 * s2) == D(s1) * s2 + s1 * D(s2), lambda: f"D={D} s={s1} t={s2}")
        e = lambda t: mg.exp_derivation(D, t)
        endo.record(e(s1 * s2) == e(s1) * e(s2), lambda: f"D={D} s={s1} t={s2}")
    return [mult, inv, leib, endo]


# -- cover contract -----------------------------------------------------------------------------


def _even_word(rng: random.Random, g: int, max_len: int):
    while True:
        w = random_word(rng, g, max_len)
        if parity(w) == 0:
            return w


def cover_suite(g: int, cases: int, seed: int = 0, max_len: int = 6) -> list[SuiteResult]:
    rng = random.Random(seed)
    C = build_cover(g)
    S = C.surface
    contract = SuiteResult(f"cover_contract [N{g},1]")
    cycles = boundary_cycles(S)
    projected = sorted(cyclic_canonical(project(C, c)) for c in cycles)
    expected = sorted([cyclic_canonical(C.boundary), cyclic_canonical(tuple(-s for s in reversed(C.boundary)))])
    contract.record(C.cover_rank == 2 * g - 1, lambda: f"rank {C.cover_rank}")
    contract.record(len(cycles) == 2, lambda: f"{len(cycles)} boundary cycles")
    contract.record(projected == expected, lambda: f"projections {projected}")
    contract.record(S.euler_characteristic == 2 - 2 * g, lambda: f"chi {S.euler_characteristic}")
    contract.record(all(parity(b) == 0 for b in C.basis), lambda: "odd basis word")
    contract.record(S.face_of(S.sector("u")) != S.face_of(S.sector("d")), lambda: "basepoints on one face")

    tau2 = SuiteResult(f"tau_involution [N{g},1]")
    ptau = SuiteResult(f"projection_tau_invariant [N{g},1]")
    roundtrip = SuiteResult(f"project_lift_identity [N{g},1]")
    for _ in range(cases):
        x = _even_word(rng, g, max_len)
        par, w = lift(C, x)
        roundtrip.record(par == 0 and project(C, w) == x, lambda: f"{x}")
        y = LoopSum.from_word(random_cyclic_word(rng, C.cover_rank, 4))
        tau2.record(tau_class(C, tau_class(C, y)) == y, lambda: f"{y}")
        ptau.record(project_loops(C, tau_class(C, y)) == project_loops(C, y), lambda: f"{y}")
        tw = tau_word(C, w)
        tau2.record(cyclic_canonical(tau_word(C, tw)) == cyclic_canonical(w), lambda: f"based {w}")
    return [contract, tau2, ptau, roundtrip]


def run_all(seed: int = 0, scale: float = 1.0, order: int = 5) -> list[SuiteResult]:
    """Every suite at (a fraction of) the sizes used by the acceptance tests."""
    n = lambda k: max(1, int(k * scale))
    out: list[SuiteResult] = []
    for g in (2, 3):
        out += identity_suite(build_cover(g), n(200), seed)
    out += goldman_suite(build_cover(2).surface, n(100), n(50), seed, label=" [cover N2,1]")
    out += goldman_suite(build_cover(3).surface, n(100), n(50), seed, label=" [cover N3,1]")
    out += filtration_suite(build_cover(2), order, n(100), seed)
    out += magnus_suite(n(500), seed)
    for g in (1, 2, 3):
        out += cover_suite(g, n(100), seed)
    return out
