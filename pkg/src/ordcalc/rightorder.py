"""Order-extension engines for free groups and the decisions built on them.

Three procedures share the witness vocabulary: truncated-cone branching
(close under bounded products, then case-split on the sign of each
undetermined short element), pivot branching over closed initial
subterms with exact subsemigroup membership at every node, and a bounded
variant for total orders that closes the generators under conjugation up
to a conjugator length bound before testing membership.
"""

from __future__ import annotations

from typing import Iterable, Sequence, Union

from . import abelian, biorder, calculus, freegroup, membership
from .calculus import CalculusId
from .freegroup import ReducedWord
from .verdicts import INVALID, UNKNOWN, VALID, Verdict
from .witnesses import (
    BoundsReport,
    ConjugateEntry,
    ConjugateProduct,
    Factorization,
    RefutationBranch,
    RefutationLeaf,
    RefutationTree,
    SignAssignment,
    TruncatedRightOrder,
)

DEFAULT_CONJUGATOR_BOUND = 3

_Prov = tuple
_GEN, _PROD = "gen", "prod"


def _dedupe(words: Iterable[ReducedWord]) -> tuple[ReducedWord, ...]:
    return tuple(dict.fromkeys(words))


def _signed(word: ReducedWord, sign: int) -> ReducedWord:
    return word if sign > 0 else freegroup.inv(word)


def initial_subterms(words: Iterable[ReducedWord]) -> frozenset[ReducedWord]:
    """All prefixes of the input words, the empty prefix included."""
    out = {freegroup.IDENTITY}
    for w in words:
        out.update(w.prefix(i) for i in range(1, len(w) + 1))
    return frozenset(out)


def cis(words: Iterable[ReducedWord]) -> frozenset[ReducedWord]:
    """Nonidentity quotients s' * t of initial subterms; closed under inversion."""
    prefixes = initial_subterms(words)
    out = set()
    for s in prefixes:
        s_inv = freegroup.inv(s)
        for t in prefixes:
            w = freegroup.mul(s_inv, t)
            if not w.is_identity:
                out.add(w)
    return frozenset(out)


def _pivot_representatives(pool: Iterable[ReducedWord]) -> tuple[ReducedWord, ...]:
    reps = {min(w, freegroup.inv(w)) for w in pool}
    return tuple(sorted(reps))


# ---------------------------------------------------------------------------
# truncated-cone closure


def _close(
    elements: dict[ReducedWord, _Prov],
    additions: Sequence[tuple[ReducedWord, _Prov]],
    bound: int,
):
    """Close under products of length <= bound.

    Returns ("ok", elems) or ("dead", (a, b), elems) where a * b reduces to
    the identity; elems maps each element to its provenance.
    """
    elems = dict(elements)
    queue: list[ReducedWord] = []
    for w, prov in additions:
        if w not in elems:
            elems[w] = prov
            queue.append(w)
    while queue:
        w = queue.pop()
        for v in list(elems):
            for a, b in ((w, v), (v, w)):
                p = freegroup.mul(a, b)
                if p.is_identity:
                    return ("dead", (a, b), elems)
                if len(p) <= bound and p not in elems:
                    elems[p] = (_PROD, a, b)
                    queue.append(p)
    return ("ok", elems)


def _death_factors(
    elems: dict[ReducedWord, _Prov], pair: tuple[ReducedWord, ReducedWord]
) -> Factorization:
    memo: dict[ReducedWord, tuple[int, ...]] = {}

    def flat(w: ReducedWord) -> tuple[int, ...]:
        if w not in memo:
            prov = elems[w]
            if prov[0] == _GEN:
                memo[w] = (prov[1],)
            else:
                memo[w] = flat(prov[1]) + flat(prov[2])
        return memo[w]

    return Factorization(flat(pair[0]) + flat(pair[1]))


def close_truncated(
    words: Iterable[ReducedWord], max_length: int
) -> frozenset[ReducedWord]:
    """Least superset closed under products that stay within the length bound."""
    words = _dedupe(words)
    for w in words:
        if w.is_identity:
            raise ValueError("the identity cannot generate a truncated cone")
        if len(w) > max_length:
            raise ValueError("generator exceeds the length bound")
    result = _close({}, [(w, (_GEN, i)) for i, w in enumerate(words)], max_length)
    return frozenset(result[1])


def extend_right_order(
    words: Iterable[ReducedWord], arity: int, level: int | None = None
) -> Union[TruncatedRightOrder, RefutationTree]:
    """Either a truncated right order containing the words, or a refutation tree.

    The truncation level defaults to the maximal input length, which is
    already decisive; a deeper level may be requested for diagnostics and
    never changes the verdict.  Pivots run over the shorter ball in
    ShortLex order, positive sign first.
    """
    words = _dedupe(words)
    if not words:
        raise ValueError("at least one word is required")
    for i, w in enumerate(words):
        if w.is_identity:
            return RefutationLeaf(Factorization((i,)))
    natural = max(len(w) for w in words)
    if level is None:
        level = natural
    elif level < natural:
        raise ValueError("truncation level is below the longest input word")
    pivot_space = [w for w in freegroup.ball(arity, level - 1) if not w.is_identity]
    witness_memo: dict[frozenset[ReducedWord], TruncatedRightOrder] = {}

    outcome = _close({}, [(w, (_GEN, i)) for i, w in enumerate(words)], level)
    if outcome[0] == "dead":
        return RefutationLeaf(_death_factors(outcome[2], outcome[1]))

    def search(elems: dict[ReducedWord, _Prov], depth: int):
        key = frozenset(elems)
        if key in witness_memo:
            return ("witness", witness_memo[key])
        pivot = next(
            (
                w
                for w in pivot_space
                if w not in elems and freegroup.inv(w) not in elems
            ),
            None,
        )
        if pivot is None:
            witness = TruncatedRightOrder(arity, level, frozenset(elems))
            witness_memo[key] = witness
            return ("witness", witness)
        subtrees = {}
        for sign in (1, -1):
            candidate = _signed(pivot, sign)
            result = _close(
                elems, [(candidate, (_GEN, len(words) + depth))], level
            )
            if result[0] == "dead":
                subtrees[sign] = RefutationLeaf(
                    _death_factors(result[2], result[1])
                )
                continue
            deeper = search(result[1], depth + 1)
            if deeper[0] == "witness":
                return deeper
            subtrees[sign] = deeper[1]
        return ("tree", RefutationBranch(pivot, subtrees[1], subtrees[-1]))

    verdict = search(outcome[1], 0)
    return verdict[1]


# ---------------------------------------------------------------------------
# membership with fast negative certificates


def _root_functional(words, arity: int) -> tuple[int, ...] | None:
    """Integer functional strictly positive on all words, when one exists."""
    separator = abelian.find_separator(
        [freegroup.abelianize(w, arity) for w in words]
    )
    if separator is None:
        return None
    return tuple(-c for c in separator)


def _refinement_positive(
    generators, arity: int, functional: tuple[int, ...], tie: int
) -> bool:
    """All generators strictly positive in the order that ranks by the
    functional first and breaks its kernel by the bi-order sign."""
    for w in generators:
        if w.is_identity:
            return False
        value = sum(
            a * b for a, b in zip(functional, freegroup.abelianize(w, arity))
        )
        if value < 0:
            return False
        if value == 0 and biorder.magnus_sign(w) != tie:
            return False
    return True


def _one_sided(
    generators, arity: int, functional: tuple[int, ...] | None
) -> bool:
    """Sound negative certificate: the set sits inside the cone of a
    bi-invariant order, so no nonempty product (of conjugates) reduces to e."""
    if biorder.uniform_sign(generators) is not None:
        return True
    if functional is not None:
        for tie in (1, -1):
            if _refinement_positive(generators, arity, functional, tie):
                return True
            flipped = tuple(-c for c in functional)
            if _refinement_positive(generators, arity, flipped, tie):
                return True
    return False


def _guided_sign(
    pivot: ReducedWord,
    arity: int,
    functional: tuple[int, ...] | None,
    side: int,
) -> int:
    """Sign choice keeping the pivot on the words' side of the order."""
    if functional is not None:
        value = sum(
            a * b for a, b in zip(functional, freegroup.abelianize(pivot, arity))
        )
        if value:
            return 1 if value > 0 else -1
        return biorder.magnus_sign(pivot)
    return side * biorder.magnus_sign(pivot)


def _semigroup_identity(
    generators: tuple[ReducedWord, ...],
    arity: int,
    functional: tuple[int, ...] | None = None,
) -> tuple[bool, Factorization | None]:
    for i, w in enumerate(generators):
        if w.is_identity:
            return True, Factorization((i,))
    if _one_sided(generators, arity, functional):
        return False, None
    # a separating functional for this very set also settles it
    vectors = [freegroup.abelianize(w, arity) for w in generators]
    if abelian.find_separator(vectors) is not None:
        return False, None
    return membership.contains_identity(generators)


# ---------------------------------------------------------------------------
# decision via truncated-cone branching


def decide_lg_cs(words: Iterable[ReducedWord], arity: int) -> Verdict:
    """l-group validity via right-order extension of the joinand set."""
    words = _dedupe(words)
    if not words:
        raise ValueError("at least one joinand is required")
    if any(w.is_identity for w in words):
        return Verdict(VALID, calculus.gv_axiom(words, CalculusId.GLGSTAR))
    outcome = extend_right_order(words, arity)
    if isinstance(outcome, TruncatedRightOrder):
        return Verdict(INVALID, outcome)
    return Verdict(VALID, calculus.derive_glgstar(words, outcome))


# ---------------------------------------------------------------------------
# decision via initial-subterm sign branching


def decide_lg_hm(words: Iterable[ReducedWord], arity: int) -> Verdict:
    """l-group validity by sign branching over closed initial subterms.

    Every inverse pair of cis(words) contributes one pivot; a branch is
    closed as soon as the signed generators already reach the identity,
    and a full assignment that never does is the invalid-side witness.
    """
    words = _dedupe(words)
    if not words:
        raise ValueError("at least one joinand is required")
    if any(w.is_identity for w in words):
        return Verdict(VALID, calculus.gv_axiom(words, CalculusId.GLGSTAR))
    reps = _pivot_representatives(cis(words))
    side = biorder.uniform_sign(words) or 1
    functional = _root_functional(words, arity)

    def search(path: tuple[tuple[ReducedWord, int], ...]):
        generators = words + tuple(_signed(p, s) for p, s in path)
        found, factorization = _semigroup_identity(generators, arity, functional)
        if found:
            return RefutationLeaf(factorization)
        if len(path) == len(reps):
            return SignAssignment(path)
        pivot = reps[len(path)]
        # explore the branch consistent with the words' side of the
        # order first: on invalid instances it is the failing one
        guided = _guided_sign(pivot, arity, functional, side)
        first = search(path + ((pivot, guided),))
        if isinstance(first, SignAssignment):
            return first
        second = search(path + ((pivot, -guided),))
        if isinstance(second, SignAssignment):
            return second
        positive, negative = (first, second) if guided > 0 else (second, first)
        return RefutationBranch(pivot, positive, negative)

    result = search(())
    if isinstance(result, SignAssignment):
        return Verdict(INVALID, result)
    return Verdict(VALID, calculus.derive_glgstar(words, result))


# ---------------------------------------------------------------------------
# bounded refutation for the representable case


def _conjugate_generators(
    base: Sequence[tuple[ReducedWord, int]], arity: int, bound: int
):
    conjugators = freegroup.ball(arity, bound)
    generators: list[ReducedWord] = []
    meta: list[tuple[ReducedWord, int, int]] = []
    seen: set[ReducedWord] = set()
    for index, (word, sign) in enumerate(base):
        effective = _signed(word, sign)
        for q in conjugators:
            value = freegroup.conjugate(q, effective)
            if value in seen:
                continue
            seen.add(value)
            generators.append(value)
            meta.append((q, index, sign))
    return tuple(generators), meta


def _normal_identity(
    base: Sequence[tuple[ReducedWord, int]],
    arity: int,
    bound: int,
    functional: tuple[int, ...] | None = None,
) -> tuple[bool, ConjugateProduct | None]:
    for index, (word, sign) in enumerate(base):
        if word.is_identity:
            entry = ConjugateEntry(freegroup.IDENTITY, index, sign)
            return True, ConjugateProduct((entry,))
    effective = tuple(_signed(w, s) for w, s in base)
    # Conjugation preserves the bi-order sign and the abelianization, so
    # the one-sided and separating certificates transfer to the whole
    # conjugate-closed set.
    if _one_sided(effective, arity, functional):
        return False, None
    vectors = [freegroup.abelianize(w, arity) for w in effective]
    if abelian.find_separator(vectors) is not None:
        return False, None
    generators, meta = _conjugate_generators(base, arity, bound)
    found, factorization = membership.contains_identity(generators)
    if not found:
        return False, None
    entries = tuple(ConjugateEntry(*meta[i]) for i in factorization.factors)
    return True, ConjugateProduct(entries)


def rg_refute_bounded(
    words: Iterable[ReducedWord],
    arity: int,
    conjugator_bound: int = DEFAULT_CONJUGATOR_BOUND,
    pivots: Sequence[ReducedWord] | None = None,
) -> RefutationTree | None:
    """Sign-branching refutation over conjugate-closed generator sets.

    A returned tree proves validity in the representable variety; None
    proves nothing beyond the bounds being exhausted.
    """
    if conjugator_bound < 0:
        raise ValueError("conjugator bound must be >= 0")
    words = _dedupe(words)
    if not words:
        raise ValueError("at least one joinand is required")
    for i, w in enumerate(words):
        if w.is_identity:
            entry = ConjugateEntry(freegroup.IDENTITY, i, 1)
            return RefutationLeaf(ConjugateProduct((entry,)))
    if pivots is not None and any(p.is_identity for p in pivots):
        raise ValueError("pivot words must be nonidentity")
    reps = (
        _pivot_representatives(pivots)
        if pivots is not None
        else _pivot_representatives(cis(words))
    )
    roots = [(w, 1) for w in words]
    side = biorder.uniform_sign(words) or 1
    functional = _root_functional(words, arity)

    def search(path: tuple[tuple[ReducedWord, int], ...]):
        base = roots + list(path)
        found, witness = _normal_identity(base, arity, conjugator_bound, functional)
        if found:
            return RefutationLeaf(witness)
        if len(path) == len(reps):
            return None
        pivot = reps[len(path)]
        guided = _guided_sign(pivot, arity, functional, side)
        first = search(path + ((pivot, guided),))
        if first is None:
            return None
        second = search(path + ((pivot, -guided),))
        if second is None:
            return None
        positive, negative = (first, second) if guided > 0 else (second, first)
        return RefutationBranch(pivot, positive, negative)

    return search(())


def decide_rg(
    words: Iterable[ReducedWord],
    arity: int,
    conjugator_bound: int = DEFAULT_CONJUGATOR_BOUND,
    pivots: Sequence[ReducedWord] | None = None,
) -> Verdict:
    """Three-valued verdict for the representable variety."""
    words = _dedupe(words)
    if not words:
        raise ValueError("at least one joinand is required")
    if any(w.is_identity for w in words):
        return Verdict(VALID, calculus.gv_axiom(words, CalculusId.GRGSTAR))
    tree = rg_refute_bounded(words, arity, conjugator_bound, pivots)
    if tree is not None:
        return Verdict(VALID, calculus.derive_grgstar(words, tree))
    vectors = [freegroup.abelianize(w, arity) for w in words]
    separator = abelian.find_separator(vectors)
    if separator is not None:
        return Verdict(INVALID, abelian.Separator(separator))
    reps = (
        _pivot_representatives(pivots)
        if pivots is not None
        else _pivot_representatives(cis(words))
    )
    return Verdict(UNKNOWN, BoundsReport(conjugator_bound, reps))
