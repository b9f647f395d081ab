import json
from fractions import Fraction
from importlib import resources
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import loop_sums, words
from twistlog.cover import (
    PresentationError,
    build_cover,
    cover_bracket,
    forgetful_c,
    lift,
    project,
    project_loops,
    rewrite_even,
    sigma_tilde,
    tau_class,
    tau_word,
    theta,
)
from twistlog.ribbon import boundary_cycles
from twistlog.words import GroupRingElement, LoopSum, cyclic_canonical, inverse, parity, reduce

GOLDEN = json.loads((Path(__file__).parent / "golden" / "golden.json").read_text())
COVERS = {g: build_cover(g) for g in (1, 2, 3)}


def covers_and(strategy):
    return st.sampled_from([COVERS[2], COVERS[3]]).flatmap(lambda C: st.tuples(st.just(C), strategy(C)))


class TestContract:
    @pytest.mark.parametrize("g", [1, 2, 3])
    def test_contract(self, g):
        C = COVERS[g]
        S = C.surface
        assert C.cover_rank == S.rank == 2 * g - 1
        assert S.euler_characteristic == 2 - 2 * g
        cycles = boundary_cycles(S)
        assert len(cycles) == 2
        d = C.boundary
        assert sorted(cyclic_canonical(project(C, c)) for c in cycles) == \
            sorted([cyclic_canonical(d), cyclic_canonical(inverse(d))])

    def test_genus_one_is_annulus(self):
        C = COVERS[1]
        assert C.basis == ((1, 1),)
        assert C.surface.rank == 1

    def test_genus_two_basis(self):
        assert COVERS[2].basis == ((1, 1), (1, 2), (2, -1))

    def test_basis_is_even(self):
        for C in COVERS.values():
            assert all(parity(b) == 0 for b in C.basis)

    @pytest.mark.parametrize("g", [2, 3])
    def test_shipped_dump_matches(self, g):
        text = resources.files("twistlog.data").joinpath(f"cover_N{g}_1.json").read_text()
        assert json.loads(text) == json.loads(json.dumps(COVERS[g].to_json()))

    def test_upper_lift_reads_boundary(self):
        # the upper basepoint sees the lift of a1^2 ... ag^2 as its boundary word
        for g in (1, 2, 3):
            C = COVERS[g]
            S = C.surface
            assert project(C, S.boundary_word(S.sector("u"))) == C.boundary


class TestLift:
    def test_examples(self):
        C = COVERS[2]
        assert lift(C, (1, 1)) == (0, (1,))
        par, w = lift(C, (1,))
        assert par == 1 and project(C, w, 1) == (1,)
        assert project(C, (2,)) == (1, 2)

    def test_rewrite_rejects_odd(self):
        with pytest.raises(PresentationError):
            rewrite_even(COVERS[2], (2,))

    @given(covers_and(lambda C: words(C.base_rank, 8)))
    def test_project_lift(self, data):
        C, x = data
        par, w = lift(C, x)
        assert par == parity(x)
        assert project(C, w, par) == x

    @given(covers_and(lambda C: words(C.cover_rank, 6)))
    def test_lift_project(self, data):
        C, w = data
        assert lift(C, project(C, w)) == (0, w)


class TestDeck:
    @given(covers_and(lambda C: words(C.cover_rank, 6)))
    def test_tau_is_conjugation(self, data):
        C, w = data
        assert project(C, tau_word(C, w)) == reduce((1,) + project(C, w) + (-1,))
        # tau^2 is conjugation by a1^2 = y1 on based words
        assert tau_word(C, tau_word(C, w)) == reduce((1,) + w + (-1,))

    @given(covers_and(lambda C: loop_sums(C.cover_rank, 5)))
    def test_involution(self, data):
        C, y = data
        assert tau_class(C, tau_class(C, y)) == y
        assert project_loops(C, tau_class(C, y)) == project_loops(C, y)

    @given(covers_and(lambda C: loop_sums(C.cover_rank, 4)))
    def test_theta(self, data):
        C, y = data
        assert theta(C, theta(C, y)) == theta(C, y)
        assert theta(C, y + tau_class(C, y)) == 0

    @given(covers_and(lambda C: st.tuples(loop_sums(C.cover_rank, 3), loop_sums(C.cover_rank, 3))))
    def test_tau_reverses_bracket(self, data):
        C, (a, b) = data
        br = lambda u, v: cover_bracket(C, u, v)
        assert tau_class(C, br(a, b)) == -br(tau_class(C, a), tau_class(C, b))

    def test_forgetful(self):
        a = GroupRingElement.from_word((2, 1, -2), 3, rank=3) + GroupRingElement.one(3)
        assert forgetful_c(a) == LoopSum([((1,), 3), ((), 1)], rank=3)


class TestAction:
    def test_unit(self):
        C = COVERS[2]
        assert sigma_tilde(C, LoopSum.from_word((2,)), ()) == 0

    def test_golden(self):
        C = COVERS[2]
        y = LoopSum.from_word((2,))
        assert sigma_tilde(C, y, (2,)).to_json("x") == GOLDEN["act_N2,1"]["y2_on_x2"]
        assert sigma_tilde(C, y, (1,)).to_json("x") == GOLDEN["act_N2,1"]["y2_on_x1"]

    def test_tau_invariant_class_acts_trivially(self):
        C = COVERS[2]
        y = LoopSum.from_word((2,)) + tau_class(C, LoopSum.from_word((2,)))
        for x in [(1,), (2,), (1, 2, -1)]:
            assert sigma_tilde(C, y, x) == 0

    @given(covers_and(lambda C: st.tuples(loop_sums(C.cover_rank, 3), words(C.base_rank, 4),
                                         words(C.base_rank, 4))))
    def test_leibniz(self, data):
        C, (y, x1, x2) = data
        lhs = sigma_tilde(C, y, reduce(x1 + x2))
        rhs = sigma_tilde(C, y, x1) * GroupRingElement.from_word(x2) + \
            GroupRingElement.from_word(x1) * sigma_tilde(C, y, x2)
        assert lhs == rhs

    @given(covers_and(lambda C: st.tuples(loop_sums(C.cover_rank, 3), loop_sums(C.cover_rank, 3),
                                         words(C.base_rank, 3))))
    def test_commutator_lemma(self, data):
        C, (a, b, r) = data
        R = GroupRingElement.from_word(r)
        act = lambda y, e: sigma_tilde(C, y, e)
        lhs = act(a, act(b, R)) - act(b, act(a, R))
        for form in (cover_bracket(C, theta(C, a), b), cover_bracket(C, a, theta(C, b)),
                     cover_bracket(C, theta(C, a), theta(C, b))):
            assert act(form, R) == lhs

    def test_not_a_module_without_theta(self):
        # the unprojected bracket does not act as the commutator
        C = COVERS[2]
        a, b = LoopSum.from_word((1,)), LoopSum.from_word((3,))
        R = GroupRingElement.from_word((1,))
        act = lambda y, e: sigma_tilde(C, y, e)
        assert act(a, act(b, R)) - act(b, act(a, R)) == 0
        assert act(cover_bracket(C, a, b), R) == GroupRingElement.from_word((1, 1, 2), -Fraction(1, 2))
