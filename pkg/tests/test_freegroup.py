import pytest

from conftest import random_reduced_word, w, words
from ordcalc import freegroup as fg


def test_reduce_examples():
    assert fg.reduce([1, -1]) == fg.IDENTITY
    assert fg.reduce([1, 2, -2, 1]) == w("x x")
    # hand cancellation: x y x' x y' = x
    assert fg.reduce([1, 2, -1, 1, -2]) == w("x")


def test_reduce_is_fixpoint_of_one_step_cancellation(rng):
    for _ in range(300):
        letters = [rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(0, 12))]
        reduced = fg.reduce(letters)
        for i in range(len(reduced.letters) - 1):
            assert reduced.letters[i] != -reduced.letters[i + 1]
        assert fg.reduce(reduced.letters) == reduced


def test_reduced_word_rejects_unreduced():
    with pytest.raises(ValueError):
        fg.ReducedWord((1, -1))
    with pytest.raises(ValueError):
        fg.ReducedWord((0,))


def test_mul_inv_conjugate_examples():
    assert fg.mul(w("x y"), w("y' x")) == w("x x")
    assert fg.conjugate(w("y"), w("x")) == w("y x y'")
    assert fg.conjugate(w("x"), w("x")) == w("x")
    assert fg.inv(w("x y'")) == w("y x'")


def test_group_laws_on_random_triples(rng):
    for _ in range(10_000):
        a = random_reduced_word(rng, 3, 6)
        b = random_reduced_word(rng, 3, 6)
        c = random_reduced_word(rng, 3, 6)
        assert fg.mul(fg.mul(a, b), c) == fg.mul(a, fg.mul(b, c))
        assert fg.inv(fg.mul(a, b)) == fg.mul(fg.inv(b), fg.inv(a))
        assert fg.inv(fg.inv(a)) == a
        assert len(fg.mul(a, b)) <= len(a) + len(b)
        assert fg.mul(a, fg.inv(a)) == fg.IDENTITY


def _ball_oracle(arity, radius):
    # breadth-first closure under right multiplication by single literals
    alphabet = [c for g in range(1, arity + 1) for c in (g, -g)]
    seen = {fg.IDENTITY}
    frontier = {fg.IDENTITY}
    for _ in range(radius):
        frontier = {
            fg.mul(u, fg.ReducedWord((c,)))
            for u in frontier
            for c in alphabet
        } - seen
        seen |= frontier
    return seen


def test_ball_examples():
    b21 = fg.ball(2, 1)
    assert set(b21) == set(words("e", "x", "x'", "y", "y'"))
    assert len(b21) == 5
    assert len(fg.ball(2, 2)) == 17
    for radius in range(5):
        assert len(fg.ball(1, radius)) == 2 * radius + 1


def test_ball_matches_bfs_oracle():
    for arity in (1, 2, 3):
        for radius in range(5):
            assert set(fg.ball(arity, radius)) == _ball_oracle(arity, radius)


def test_ball_is_shortlex_sorted():
    for arity in (1, 2):
        b = fg.ball(arity, 3)
        assert list(b) == sorted(b)


def test_abelianize_examples():
    assert fg.abelianize(w("x y x' y'"), 2) == (0, 0)
    assert fg.abelianize(w("x x"), 2) == (2, 0)
    assert fg.abelianize(w("x y' y' x"), 2) == (2, -2)


def test_abelianize_is_homomorphism(rng):
    for _ in range(2000):
        a = random_reduced_word(rng, 3, 6)
        b = random_reduced_word(rng, 3, 6)
        left = fg.abelianize(fg.mul(a, b), 3)
        right = tuple(
            x + y for x, y in zip(fg.abelianize(a, 3), fg.abelianize(b, 3))
        )
        assert left == right


def test_word_text_round_trip(rng):
    assert fg.word_to_text(fg.IDENTITY) == "e"
    assert fg.word_from_text("e") == fg.IDENTITY
    assert fg.word_from_text("xx") == w("x x")
    assert fg.word_from_text("x'y'") == w("x' y'")
    assert fg.word_from_text("x1 x2") == w("x y")
    for _ in range(500):
        word = random_reduced_word(rng, 3, 8)
        assert fg.word_from_text(fg.word_to_text(word)) == word


def test_word_text_errors():
    with pytest.raises(fg.WordSyntaxError):
        fg.word_from_text("x $ y")
    with pytest.raises(fg.WordSyntaxError):
        fg.word_from_text("q")
    with pytest.raises(fg.WordSyntaxError):
        fg.word_from_text("y", arity=1)
    with pytest.raises(fg.WordSyntaxError):
        fg.word_from_text("e'")


def test_evaluate_word():
    assert fg.evaluate_word(w("x y'"), [3, 5]) == -2
    assert fg.evaluate_word(fg.IDENTITY, [7]) == 0
