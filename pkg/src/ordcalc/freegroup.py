"""Exact arithmetic in finitely generated free groups.

Words are stored fully reduced (cancellation-free).  A literal is encoded
as a nonzero int: ``+g`` is the g-th generator, ``-g`` its inverse, with
generators numbered from 1.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

_GEN_NAMES = "xyzuvw"


class Literal(NamedTuple):
    """A generator or inverse generator occurrence."""

    generator: int
    sign: int

    def encoded(self) -> int:
        return self.generator * self.sign


def literal_of(code: int) -> Literal:
    if code == 0:
        raise ValueError("literal code must be nonzero")
    return Literal(abs(code), 1 if code > 0 else -1)


def literal_rank(code: int) -> int:
    """Position of a literal in the fixed order x < x' < y < y' < ...

    Generators come first by index; within a generator the positive
    literal precedes the inverse.
    """
    if code == 0:
        raise ValueError("literal code must be nonzero")
    return 2 * (abs(code) - 1) + (0 if code > 0 else 1)


@functools.total_ordering
@dataclass(frozen=True)
class ReducedWord:
    """An element of F(k) as a cancellation-free literal sequence."""

    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        prev = 0
        for code in self.letters:
            if code == 0:
                raise ValueError("literal code must be nonzero")
            if code == -prev:
                raise ValueError(f"word is not reduced: {self.letters}")
            prev = code

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def shortlex_key(self) -> tuple:
        return (len(self.letters), tuple(literal_rank(c) for c in self.letters))

    def __lt__(self, other: "ReducedWord") -> bool:
        return self.shortlex_key() < other.shortlex_key()

    def prefix(self, length: int) -> "ReducedWord":
        return ReducedWord(self.letters[:length])

    def max_generator(self) -> int:
        return max((abs(c) for c in self.letters), default=0)

    def __repr__(self) -> str:
        return f"ReducedWord({word_to_text(self)!r})"


IDENTITY = ReducedWord()


def reduce(seq: Iterable[int]) -> ReducedWord:
    """Cancel all adjacent inverse pairs in a literal sequence."""
    stack: list[int] = []
    for code in seq:
        if code == 0:
            raise ValueError("literal code must be nonzero")
        if stack and stack[-1] == -code:
            stack.pop()
        else:
            stack.append(code)
    return ReducedWord(tuple(stack))


def mul(a: ReducedWord, b: ReducedWord) -> ReducedWord:
    """Product in F(k); only the boundary between a and b can cancel."""
    left = list(a.letters)
    right = list(b.letters)
    i = 0
    while left and i < len(right) and left[-1] == -right[i]:
        left.pop()
        i += 1
    return ReducedWord(tuple(left) + tuple(right[i:]))


def inv(a: ReducedWord) -> ReducedWord:
    return ReducedWord(tuple(-c for c in reversed(a.letters)))


def conjugate(q: ReducedWord, t: ReducedWord) -> ReducedWord:
    """q * t * q' reduced."""
    return mul(mul(q, t), inv(q))


def length(a: ReducedWord) -> int:
    return len(a.letters)


def product(words: Iterable[ReducedWord]) -> ReducedWord:
    acc = IDENTITY
    for w in words:
        acc = mul(acc, w)
    return acc


def bar(seq: Iterable[int]) -> tuple[int, ...]:
    """Inverse of a raw literal sequence (reverse and invert each literal)."""
    return tuple(-c for c in reversed(tuple(seq)))


def ball(arity: int, radius: int) -> tuple[ReducedWord, ...]:
    """All reduced words of length <= radius over the given arity, ShortLex sorted."""
    if arity < 1:
        raise ValueError("arity must be >= 1")
    if radius < 0:
        raise ValueError("radius must be >= 0")
    alphabet = sorted((c for g in range(1, arity + 1) for c in (g, -g)), key=literal_rank)
    out: list[ReducedWord] = [IDENTITY]
    layer: list[tuple[int, ...]] = [()]
    for _ in range(radius):
        nxt: list[tuple[int, ...]] = []
        for letters in layer:
            last = letters[-1] if letters else 0
            for code in alphabet:
                if code != -last:
                    nxt.append(letters + (code,))
        layer = nxt
        out.extend(ReducedWord(letters) for letters in layer)
    return tuple(out)


def abelianize(a: ReducedWord, arity: int) -> tuple[int, ...]:
    """Signed generator counts; a homomorphism onto Z^arity."""
    counts = [0] * arity
    for code in a.letters:
        g = abs(code)
        if g > arity:
            raise ValueError(f"generator {g} exceeds arity {arity}")
        counts[g - 1] += 1 if code > 0 else -1
    return tuple(counts)


def evaluate_word(a: ReducedWord, assignment: Iterable[int]) -> int:
    """Value of the word in the additive l-group Z under the assignment."""
    values = tuple(assignment)
    total = 0
    for code in a.letters:
        g = abs(code)
        if g > len(values):
            raise ValueError(f"generator {g} has no assigned value")
        total += values[g - 1] if code > 0 else -values[g - 1]
    return total


def generator_name(index: int) -> str:
    if index < 1:
        raise ValueError("generator index must be >= 1")
    if index <= len(_GEN_NAMES):
        return _GEN_NAMES[index - 1]
    return f"x{index}"


def literal_text(code: int) -> str:
    return generator_name(abs(code)) + ("'" if code < 0 else "")


def word_to_text(a: ReducedWord | Iterable[int]) -> str:
    letters = a.letters if isinstance(a, ReducedWord) else tuple(a)
    if not letters:
        return "e"
    return " ".join(literal_text(c) for c in letters)


class WordSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _generator_index(name: str, digits: str, position: int) -> int:
    if digits:
        if name not in ("x", "g"):
            raise WordSyntaxError(f"unknown generator {name}{digits!r}", position)
        index = int(digits)
        if index < 1:
            raise WordSyntaxError("generator index must be >= 1", position)
        return index
    if name in _GEN_NAMES:
        return _GEN_NAMES.index(name) + 1
    raise WordSyntaxError(f"unknown generator {name!r}", position)


def scan_literals(text: str, arity: int | None = None) -> tuple[int, ...]:
    """Parse a raw literal sequence.

    Literals are a letter, optional digits, and optional primes; they may
    be juxtaposed or separated by whitespace, ``*`` or commas.  ``e``
    denotes the empty sequence.
    """
    letters: list[int] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace() or ch in "*,":
            i += 1
            continue
        if not ch.isalpha():
            raise WordSyntaxError(f"unexpected character {ch!r}", i)
        start = i
        i += 1
        digits = ""
        while i < n and text[i].isdigit():
            digits += text[i]
            i += 1
        primes = 0
        while i < n and text[i] == "'":
            primes += 1
            i += 1
        if ch == "e" and not digits:
            if primes:
                raise WordSyntaxError("identity cannot be inverted in word syntax", start)
            continue
        index = _generator_index(ch, digits, start)
        if arity is not None and index > arity:
            raise WordSyntaxError(f"generator index {index} exceeds arity {arity}", start)
        code = index if primes % 2 == 0 else -index
        letters.append(code)
    return tuple(letters)


def word_from_text(text: str, arity: int | None = None) -> ReducedWord:
    return reduce(scan_literals(text, arity))
