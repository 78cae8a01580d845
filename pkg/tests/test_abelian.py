import itertools

import pytest

from conftest import words
from ordcalc import abelian as ab
from ordcalc import calculus as ca
from ordcalc import freegroup as fg


def _exhaustive_combination(vectors, bound):
    n = len(vectors)
    for lam in itertools.product(range(bound + 1), repeat=n):
        if any(lam) and ab.verify_combination(vectors, lam):
            return lam
    return None


def test_combination_example_matches_small_search():
    vectors = [(2, 0), (0, 2), (-1, -1)]
    certificate = ab.decide_abelian(vectors)
    assert isinstance(certificate, ab.Combination)
    assert ab.verify_combination(vectors, certificate.multipliers)
    assert _exhaustive_combination(vectors, 3) == (1, 1, 2)


def test_separator_examples():
    certificate = ab.decide_abelian([(1, 0)])
    assert isinstance(certificate, ab.Separator)
    assert ab.verify_separator([(1, 0)], certificate.functional)

    certificate = ab.decide_abelian([(1,), (-1,)])
    assert isinstance(certificate, ab.Combination)
    assert certificate.multipliers == (1, 1)


def test_zero_vector_forces_combination():
    certificate = ab.decide_abelian([(3, -1), (0, 0), (1, 2)])
    assert certificate == ab.Combination((0, 1, 0))


def test_scaling_invariance(rng):
    for _ in range(200):
        n = rng.randint(1, 4)
        k = rng.randint(1, 3)
        vectors = [tuple(rng.randint(-4, 4) for _ in range(k)) for _ in range(n)]
        scale = rng.randint(2, 5)
        scaled = [tuple(scale * c for c in v) for v in vectors]
        assert type(ab.decide_abelian(vectors)) is type(ab.decide_abelian(scaled))


def test_exclusivity_on_small_random_instances(rng):
    for _ in range(300):
        n = rng.randint(1, 4)
        k = rng.randint(1, 3)
        vectors = [tuple(rng.randint(-3, 3) for _ in range(k)) for _ in range(n)]
        certificate = ab.decide_abelian(vectors)
        small_lam = _exhaustive_combination(vectors, 4)
        if isinstance(certificate, ab.Combination):
            assert ab.verify_combination(vectors, certificate.multipliers)
        else:
            assert ab.verify_separator(vectors, certificate.functional)
            # a verified separator excludes every nonnegative combination
            assert small_lam is None


def test_validity_abelian_valid_pair():
    joins = words("x y'", "y x'")
    verdict = ab.validity_abelian(joins, 2)
    assert verdict.status == "VALID"
    goal = ca.hypersequent_of_words(joins)
    assert ca.check(ca.CalculusId.GA, verdict.certificate, goal).ok


def test_validity_abelian_single_generator_countermodel():
    verdict = ab.validity_abelian(words("x"), 1)
    assert verdict.status == "INVALID"
    y = verdict.certificate.functional
    # the separator is a Z-countermodel: every joinand evaluates negatively
    assert fg.evaluate_word(fg.word_from_text("x"), y) < 0


def test_validity_abelian_on_branching_example_set():
    joins = words("xx", "yy", "x'y'")
    verdict = ab.validity_abelian(joins, 2)
    assert verdict.status == "VALID"
    goal = ca.hypersequent_of_words(joins)
    assert ca.check(ca.CalculusId.GA, verdict.certificate, goal).ok


def test_soundness_sampling_of_verdicts(rng):
    for _ in range(100):
        k = rng.randint(1, 3)
        joins = [
            fg.reduce(
                [rng.choice([c for g in range(1, k + 1) for c in (g, -g)])
                 for _ in range(rng.randint(1, 4))]
            )
            for _ in range(rng.randint(1, 3))
        ]
        joins = [w for w in joins if not w.is_identity] or words("x")
        verdict = ab.validity_abelian(joins, k)
        if verdict.status == "VALID":
            for _ in range(50):
                assignment = [rng.randint(-8, 8) for _ in range(k)]
                assert max(fg.evaluate_word(u, assignment) for u in joins) >= 0
        else:
            y = verdict.certificate.functional
            assert all(fg.evaluate_word(u, y) < 0 for u in joins)


def test_decide_abelian_input_validation():
    with pytest.raises(ValueError):
        ab.decide_abelian([])
    with pytest.raises(ValueError):
        ab.decide_abelian([(1, 2), (1,)])
