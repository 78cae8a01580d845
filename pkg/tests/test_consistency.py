"""Cross-checks that pit independent implementations against each other:
the variety chain (abelian inside representable inside all l-groups)
must make verdicts monotone, and the branching order-extension procedure
must agree with a direct enumeration of every truncated cone of F(2)."""

import itertools

import pytest

from ordcalc import abelian as ab
from ordcalc import freegroup as fg
from ordcalc import rightorder as ro
from ordcalc.witnesses import TruncatedRightOrder


def _corpus(max_size):
    pool = [u for u in fg.ball(2, 2) if not u.is_identity]
    for size in range(1, max_size + 1):
        yield from itertools.combinations(pool, size)


def test_variety_chain_on_corpus():
    for subset in _corpus(3):
        subset = list(subset)
        lg = ro.decide_lg_cs(subset, 2).status
        rg = ro.decide_rg(subset, 2).status
        abelian_status = ab.validity_abelian(subset, 2).status

        if lg == "VALID":
            assert rg != "INVALID", subset
            assert abelian_status == "VALID", subset
        if rg == "VALID":
            assert abelian_status == "VALID", subset
        if abelian_status == "INVALID":
            assert rg == "INVALID", subset
            assert lg == "INVALID", subset


def test_rg_invalid_iff_separator_on_corpus():
    for subset in _corpus(3):
        subset = list(subset)
        verdict = ro.decide_rg(subset, 2)
        vectors = [fg.abelianize(u, 2) for u in subset]
        separator = ab.find_separator(vectors)
        if verdict.status == "INVALID":
            assert separator is not None
        if separator is None:
            assert verdict.status != "INVALID"


def test_procedures_agree_on_random_arity3_sets(rng):
    from ordcalc import calculus as ca

    alphabet = [c for g in (1, 2, 3) for c in (g, -g)]

    def random_word():
        letters = []
        target = rng.randint(1, 2)
        while len(letters) < target:
            code = rng.choice(alphabet)
            if letters and letters[-1] == -code:
                continue
            letters.append(code)
        return fg.ReducedWord(tuple(letters))

    for _ in range(120):
        subset = list({random_word() for _ in range(rng.randint(1, 3))})
        cs = ro.decide_lg_cs(subset, 3)
        hm = ro.decide_lg_hm(subset, 3)
        assert cs.status == hm.status, [fg.word_to_text(u) for u in subset]
        if cs.status == "VALID":
            goal = ca.hypersequent_of_words(subset)
            assert ca.check(ca.CalculusId.GLGSTAR, cs.certificate, goal).ok
            assert ca.check(ca.CalculusId.GLGSTAR, hm.certificate, goal).ok
        else:
            assert cs.certificate.verify()


def test_random_conjugate_pairs_are_rg_valid(rng):
    from ordcalc import calculus as ca

    def random_word(max_length):
        letters = []
        target = rng.randint(1, max_length)
        while len(letters) < target:
            code = rng.choice((1, -1, 2, -2))
            if letters and letters[-1] == -code:
                continue
            letters.append(code)
        return fg.ReducedWord(tuple(letters))

    checked = 0
    while checked < 40:
        base = random_word(4)
        left = fg.conjugate(random_word(2), base)
        right = fg.conjugate(random_word(2), fg.inv(base))
        if left == fg.inv(right):
            continue  # would collapse to a plain inverse pair
        pair = [left, right]
        verdict = ro.decide_rg(pair, 2, conjugator_bound=4)
        assert verdict.status == "VALID", [fg.word_to_text(u) for u in pair]
        goal = ca.hypersequent_of_words(pair)
        assert ca.check(ca.CalculusId.GRGSTAR, verdict.certificate, goal).ok
        checked += 1


def _is_truncated_cone(elements, level):
    for s in elements:
        for t in elements:
            p = fg.mul(s, t)
            if p.is_identity:
                return False
            if len(p) <= level and p not in elements:
                return False
    return True


@pytest.fixture(scope="module")
def level2_cones():
    """Every 2-truncated right order of F(2), by direct enumeration.

    Totality forces exactly one member of each length-1 inverse pair;
    the twelve length-2 words are free bits, filtered by closure.
    """
    length_two = [u for u in fg.ball(2, 2) if len(u) == 2]
    assert len(length_two) == 12
    cones = []
    for x_choice in (fg.word_from_text("x"), fg.word_from_text("x'")):
        for y_choice in (fg.word_from_text("y"), fg.word_from_text("y'")):
            for bits in range(1 << 12):
                extra = [length_two[i] for i in range(12) if bits >> i & 1]
                cone = frozenset((x_choice, y_choice, *extra))
                if _is_truncated_cone(cone, 2):
                    cones.append(cone)
    assert cones
    return cones


def test_extension_agrees_with_cone_enumeration(level2_cones):
    for subset in _corpus(3):
        subset_set = frozenset(subset)
        level = max(len(u) for u in subset)
        if level == 1:
            # no products fit below the level; only inverse pairs obstruct
            extends_by_enumeration = not any(
                fg.inv(u) in subset_set for u in subset_set
            )
        else:
            extends_by_enumeration = any(
                subset_set <= cone for cone in level2_cones
            )
        outcome = ro.extend_right_order(list(subset), 2)
        assert isinstance(outcome, TruncatedRightOrder) == extends_by_enumeration, (
            sorted(fg.word_to_text(u) for u in subset_set)
        )
