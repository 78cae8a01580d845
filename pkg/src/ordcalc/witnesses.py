"""Witness objects exchanged between the decision procedures and the proof layer.

Everything here is a plain value with an explicit verifier, so emitted
certificates can be re-checked independently of the search that found them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from . import freegroup
from .freegroup import ReducedWord


@dataclass(frozen=True)
class Factorization:
    """Indices into a generator list whose ordered product reduces to e."""

    factors: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.factors:
            raise ValueError("factorization must be nonempty")

    def product(self, generators: tuple[ReducedWord, ...]) -> ReducedWord:
        return freegroup.product(generators[i] for i in self.factors)


@dataclass(frozen=True)
class ConjugateEntry:
    conjugator: ReducedWord
    base: int
    sign: int


@dataclass(frozen=True)
class ConjugateProduct:
    """Conjugates of listed generators whose ordered product reduces to e."""

    entries: tuple[ConjugateEntry, ...]

    def __post_init__(self) -> None:
        if not self.entries:
            raise ValueError("conjugate product must be nonempty")

    def product(self, generators: tuple[ReducedWord, ...]) -> ReducedWord:
        acc = freegroup.IDENTITY
        for entry in self.entries:
            base = generators[entry.base]
            if entry.sign < 0:
                base = freegroup.inv(base)
            acc = freegroup.mul(acc, freegroup.conjugate(entry.conjugator, base))
        return acc


@dataclass(frozen=True)
class RefutationLeaf:
    witness: Union[Factorization, ConjugateProduct]


@dataclass(frozen=True)
class RefutationBranch:
    pivot: ReducedWord
    positive: "RefutationTree"
    negative: "RefutationTree"


RefutationTree = Union[RefutationLeaf, RefutationBranch]


@dataclass(frozen=True)
class SignAssignment:
    """Signs chosen for pivot words; the failing evidence on the invalid side."""

    signs: tuple[tuple[ReducedWord, int], ...]

    def as_dict(self) -> dict[ReducedWord, int]:
        return dict(self.signs)


@dataclass(frozen=True)
class BoundsReport:
    """Search limits that were exhausted without a refutation."""

    conjugator_bound: int
    pivots: tuple[ReducedWord, ...]


@dataclass(frozen=True)
class TruncatedRightOrder:
    """Positive-cone fragment: product-closed within the ball and total below it."""

    arity: int
    level: int
    elements: frozenset[ReducedWord]

    def violations(self) -> list[str]:
        issues = []
        elems = self.elements
        if freegroup.IDENTITY in elems:
            issues.append("identity is in the cone")
        for w in elems:
            if len(w) > self.level:
                issues.append(f"element {freegroup.word_to_text(w)} exceeds level")
        for s in elems:
            for t in elems:
                st = freegroup.mul(s, t)
                if len(st) <= self.level and st not in elems:
                    issues.append(
                        "closure gap: %s * %s"
                        % (freegroup.word_to_text(s), freegroup.word_to_text(t))
                    )
        for w in freegroup.ball(self.arity, self.level - 1):
            if w.is_identity:
                continue
            if w not in elems and freegroup.inv(w) not in elems:
                issues.append(f"undetermined element {freegroup.word_to_text(w)}")
        return issues

    def verify(self) -> bool:
        return not self.violations()


def _signed(word: ReducedWord, sign: int) -> ReducedWord:
    return word if sign > 0 else freegroup.inv(word)


def verify_refutation_tree(
    words: tuple[ReducedWord, ...],
    tree: RefutationTree,
    conjugate: bool = False,
) -> str | None:
    """Check leaf products and pivot sanity; None means the tree verifies.

    ``words`` is the root generator list; leaf indices address it followed
    by the signed pivots along the path.
    """

    def walk(node: RefutationTree, path: tuple[tuple[ReducedWord, int], ...]) -> str | None:
        if isinstance(node, RefutationBranch):
            if node.pivot.is_identity:
                return "branch pivot is the identity"
            if (err := walk(node.positive, path + ((node.pivot, 1),))) is not None:
                return err
            return walk(node.negative, path + ((node.pivot, -1),))
        witness = node.witness
        if conjugate:
            # Conjugate entries address unsigned base words and carry the sign.
            generators = words + tuple(p for p, _ in path)
            if not isinstance(witness, ConjugateProduct):
                return "leaf carries no conjugate product"
            for entry in witness.entries:
                if not 0 <= entry.base < len(generators):
                    return f"conjugate base index {entry.base} out of range"
                if entry.base < len(words):
                    if entry.sign != 1:
                        return "root generators may only occur positively"
                elif entry.sign != path[entry.base - len(words)][1]:
                    return "pivot sign disagrees with the branch path"
        else:
            generators = words + tuple(_signed(p, s) for p, s in path)
            if not isinstance(witness, Factorization):
                return "leaf carries no factorization"
            if any(not 0 <= i < len(generators) for i in witness.factors):
                return "factor index out of range"
        if not witness.product(generators).is_identity:
            return "leaf product does not reduce to the identity"
        return None

    return walk(tree, ())
