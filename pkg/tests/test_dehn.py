import json
import random
from pathlib import Path

import pytest

from twistlog.cover import build_cover, sigma_tilde, theta
from twistlog.dehn import (
    TwistProblem,
    build_L,
    corrupt,
    derivation_of_L,
    geometric_twist,
    insertion_count,
    load_preset,
    log_twist_series,
    verify_main_theorem,
)
from twistlog.magnus import NonTerminationError, TruncatedSeries, exp_derivation, magnus_embed
from twistlog.ribbon import NotSimpleError
from twistlog.words import cyclic_canonical, format_word, parse_word, random_word, reduce

GOLDEN = json.loads((Path(__file__).parent / "golden" / "golden.json").read_text())


@pytest.fixture(scope="module", params=["N2,1", "N3,1"])
def preset(request):
    return load_preset(request.param, order=4)


class TestProblem:
    def test_presets_are_non_degenerate(self, preset):
        assert not preset.degenerate
        assert preset.curve != preset.tau_curve
        # the twist moves at least one generator
        g = preset.cover.base_rank
        assert any(geometric_twist(preset, (i,)) != (i,) for i in range(1, g + 1))

    def test_base_curves(self):
        assert load_preset("N2,1").base_curve == (1, 2)
        assert load_preset("N3,1").base_curve == (1, 3)

    def test_rejects_curve_crossing_its_deck_image(self):
        with pytest.raises(NotSimpleError):
            TwistProblem(build_cover(3), (1, 2))

    def test_rejects_non_simple(self):
        with pytest.raises(NotSimpleError):
            TwistProblem(build_cover(2), (2, 2, 3, 3))

    def test_unknown_preset(self):
        with pytest.raises(KeyError):
            load_preset("N7,1")


class TestL:
    def test_golden(self, preset):
        key = f"N{preset.cover.base_rank},1"
        L = build_L(preset)
        assert L.to_json("y") == GOLDEN[key]["L"]
        assert derivation_of_L(preset, L).to_json() == GOLDEN[key]["derivation"]

    def test_theta_fixes_L(self, preset):
        L = build_L(preset)
        assert theta(preset.cover, L) == L
        assert L.coeff(()) == 0

    def test_empty_r(self):
        P = TwistProblem(build_cover(2), ())
        assert build_L(P) == 0
        assert P.degenerate
        D = derivation_of_L(P, build_L(P))
        assert all(not v for v in D.images.values())

    def test_deck_invariant_curve(self):
        # y1 = a1 a1 is its own deck image, so theta kills it
        P = TwistProblem(build_cover(2), (1,), order=4)
        assert P.degenerate and build_L(P) == 0
        assert geometric_twist(P, (2, 1)) == (2, 1)
        assert verify_main_theorem(P).verified

    def test_corrupt_flips_one_term(self, preset):
        L = build_L(preset)
        bad = corrupt(L, 2)
        diff = L - bad
        assert len(diff) == 1
        key, c = diff.sorted_terms()[0]
        assert c == 2 * L.coeff(key)


class TestGeometricTwist:
    def test_golden(self, preset):
        key = f"N{preset.cover.base_rank},1"
        g = preset.cover.base_rank
        got = {f"x{i}": format_word(geometric_twist(preset, (i,))) for i in range(1, g + 1)}
        assert got == GOLDEN[key]["geometric_twist"]

    def test_fixes_boundary(self, preset):
        d = preset.cover.boundary
        assert geometric_twist(preset, d) == d

    def test_fixes_core_curve(self, preset):
        c = preset.base_curve
        assert cyclic_canonical(geometric_twist(preset, c)) == c

    def test_homomorphism(self, preset):
        rng = random.Random(3)
        g = preset.cover.base_rank
        for _ in range(30):
            x, y = random_word(rng, g, 4), random_word(rng, g, 4)
            assert geometric_twist(preset, reduce(x + y)) == \
                reduce(geometric_twist(preset, x) + geometric_twist(preset, y))

    def test_insertion_count(self, preset):
        g = preset.cover.base_rank
        counts = [insertion_count(preset, (i,)) for i in range(1, g + 1)]
        assert sum(counts) > 0
        for i, n in enumerate(counts, 1):
            for k in range(n):
                assert geometric_twist(preset, (i,), flip=k) != geometric_twist(preset, (i,))


class TestLogTwist:
    def test_fixed_word(self, preset):
        assert log_twist_series(preset, preset.base_curve) == 0

    def test_degenerate(self):
        P = TwistProblem(build_cover(2), (), order=3)
        assert log_twist_series(P, (1, 2)) == 0

    def test_matches_action(self, preset):
        L = build_L(preset)
        g, N = preset.cover.base_rank, preset.order
        for i in range(1, g + 1):
            assert log_twist_series(preset, (i,)) == magnus_embed(sigma_tilde(preset.cover, L, (i,)), N, g)

    def test_non_termination(self):
        P = load_preset("N2,1", order=4, k_max=1)
        with pytest.raises(NonTerminationError) as info:
            log_twist_series(P, (1,))
        assert info.value.last_degree is not None


class TestVerify:
    def test_presets_verify_with_one_sign(self, preset):
        report = verify_main_theorem(preset)
        assert report.verified and report.signs_verifying == [1]
        assert report.first_disagreement_degree is None
        for row in report.per_generator:
            assert row.agree_through_degree == row.log_agree_through_degree == preset.order

    def test_random_words(self, preset):
        # the exponential is an endomorphism, so words follow from generators; check anyway
        L = build_L(preset)
        D = derivation_of_L(preset, L)
        g, N = preset.cover.base_rank, preset.order
        rng = random.Random(11)
        for _ in range(10):
            x = random_word(rng, g, 4)
            assert exp_derivation(D, magnus_embed(x, N, g)) == magnus_embed(geometric_twist(preset, x), N, g)

    def test_corrupted_L(self, preset):
        report = verify_main_theorem(preset, L=corrupt(build_L(preset), 0))
        assert not report.verified
        assert 0 <= report.first_disagreement_degree <= preset.order

    def test_flipped_insertion(self, preset):
        g = preset.cover.base_rank
        gen = next(i for i in range(1, g + 1) if insertion_count(preset, (i,)))
        report = verify_main_theorem(preset, flip=(gen, 0))
        assert not report.verified
        assert 0 <= report.first_disagreement_degree <= preset.order

    def test_report_json(self, preset):
        data = verify_main_theorem(preset).to_json(full=True)
        assert set(data) >= {"verified", "verified_sign", "per_generator", "timings"}
        row = data["per_generator"][0]
        assert row["gen"] == "x1" and "agree_through_degree" in row
        assert TruncatedSeries.from_json(row["exp_side"]) == TruncatedSeries.from_json(row["twist_side"])

    @pytest.mark.parametrize("g, text", [
        (2, "y2^-1"), (2, "y1 y3"), (3, "y4"), (3, "y1 y5"), (3, "y3 y4"), (3, "y1 y2 y3"),
        (3, "y2 y5 y4^-1"), (3, "y1 y3 y4 y5"),
    ])
    def test_other_curves(self, g, text):
        P = TwistProblem(build_cover(g), parse_word(text, "y"), order=3)
        assert not P.degenerate
        assert verify_main_theorem(P).signs_verifying == [1]

    def test_proper_power_rejected(self):
        with pytest.raises(NotSimpleError):
            TwistProblem(build_cover(2), (2, 2))
