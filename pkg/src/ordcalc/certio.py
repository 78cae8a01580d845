"""Certificate file schemas: canonical JSON for proofs and witnesses.

Serialization is deterministic (sorted keys, fixed indent, trailing
newline) so golden certificate files can be compared byte for byte.
"""

from __future__ import annotations

import json
from typing import Any, Sequence

from . import freegroup
from .calculus import (
    CalculusId,
    Derivation,
    Hypersequent,
    RuleInstance,
    Sequent,
)
from .freegroup import ReducedWord
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
    verify_refutation_tree,
)

SCHEMA_VERSION = 1


class CertificateFormatError(ValueError):
    pass


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateFormatError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise CertificateFormatError("certificate file must hold one object")
    return doc


def _require(doc: dict, key: str, kind: type) -> Any:
    if key not in doc:
        raise CertificateFormatError(f"missing field {key!r}")
    value = doc[key]
    if not isinstance(value, kind):
        raise CertificateFormatError(f"field {key!r} has the wrong type")
    return value


def _check_schema(doc: dict, kind: str) -> None:
    if _require(doc, "schema_version", int) != SCHEMA_VERSION:
        raise CertificateFormatError("unsupported schema version")
    if _require(doc, "kind", str) != kind:
        raise CertificateFormatError(f"expected kind {kind!r}, got {doc['kind']!r}")


def _raw_text(raw: Sequence[int]) -> str:
    return freegroup.word_to_text(tuple(raw))


def _parse_raw(text: str) -> tuple[int, ...]:
    if not isinstance(text, str):
        raise CertificateFormatError("literal sequences must be strings")
    try:
        return freegroup.scan_literals(text)
    except freegroup.WordSyntaxError as exc:
        raise CertificateFormatError(str(exc)) from None


def _parse_word(text: str) -> ReducedWord:
    return freegroup.reduce(_parse_raw(text))


def _word_list(words) -> list[str]:
    return [freegroup.word_to_text(w) for w in words]


# ---------------------------------------------------------------------------
# derivations


def derivation_to_node(derivation: Derivation) -> dict:
    return {
        "rule": derivation.instance.rule,
        "certificates": {
            name: _raw_text(raw) for name, raw in derivation.instance.certificates
        },
        "conclusion": [_raw_text(s.raw) for s in derivation.conclusion.sequents],
        "premises": [derivation_to_node(p) for p in derivation.premises],
    }


def node_to_derivation(node: dict) -> Derivation:
    if not isinstance(node, dict):
        raise CertificateFormatError("derivation nodes must be objects")
    rule = _require(node, "rule", str)
    certs = _require(node, "certificates", dict)
    conclusion = _require(node, "conclusion", list)
    premises = _require(node, "premises", list)
    instance = RuleInstance(
        rule, tuple(sorted((k, _parse_raw(v)) for k, v in certs.items()))
    )
    try:
        hyper = Hypersequent.of(Sequent(_parse_raw(s)) for s in conclusion)
    except ValueError as exc:
        raise CertificateFormatError(str(exc)) from None
    return Derivation(
        hyper, instance, tuple(node_to_derivation(p) for p in premises)
    )


def proof_doc(
    calculus: CalculusId,
    conjuncts: Sequence[tuple[Hypersequent, Derivation]],
) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "proof",
        "calculus": calculus.value,
        "conjuncts": [
            {
                "goal": [_raw_text(s.raw) for s in goal.sequents],
                "derivation": derivation_to_node(derivation),
            }
            for goal, derivation in conjuncts
        ],
    }


def load_proof(doc: dict) -> tuple[CalculusId, list[tuple[Hypersequent, Derivation]]]:
    _check_schema(doc, "proof")
    name = _require(doc, "calculus", str)
    try:
        calculus = CalculusId(name)
    except ValueError:
        raise CertificateFormatError(f"unknown calculus {name!r}") from None
    conjuncts = []
    for entry in _require(doc, "conjuncts", list):
        if not isinstance(entry, dict):
            raise CertificateFormatError("conjunct entries must be objects")
        goal_raws = [_parse_raw(s) for s in _require(entry, "goal", list)]
        try:
            goal = Hypersequent.of(Sequent(raw) for raw in goal_raws)
        except ValueError as exc:
            raise CertificateFormatError(str(exc)) from None
        conjuncts.append((goal, node_to_derivation(_require(entry, "derivation", dict))))
    if not conjuncts:
        raise CertificateFormatError("proof file has no conjuncts")
    return calculus, conjuncts


# ---------------------------------------------------------------------------
# witnesses


def truncated_order_doc(witness: TruncatedRightOrder) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "truncated_right_order",
        "arity": witness.arity,
        "level": witness.level,
        "elements": sorted(_word_list(witness.elements)),
    }


def separator_doc(words, arity: int, functional: Sequence[int]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "separator",
        "arity": arity,
        "functional": list(functional),
        "words": _word_list(words),
    }


def abelian_order_doc(words, arity: int, functional: Sequence[int]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "abelian_order_witness",
        "arity": arity,
        "functional": list(functional),
        "words": _word_list(words),
    }


def sign_assignment_doc(words, arity: int, assignment: SignAssignment) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "sign_assignment",
        "arity": arity,
        "words": _word_list(words),
        "signs": [
            {"pivot": freegroup.word_to_text(p), "sign": s}
            for p, s in assignment.signs
        ],
    }


def bounds_doc(report: BoundsReport) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "bounds_exhausted",
        "conjugator_bound": report.conjugator_bound,
        "pivots": _word_list(report.pivots),
    }


def _tree_to_node(tree: RefutationTree, conjugate: bool) -> dict:
    if isinstance(tree, RefutationBranch):
        return {
            "kind": "branch",
            "pivot": freegroup.word_to_text(tree.pivot),
            "positive": _tree_to_node(tree.positive, conjugate),
            "negative": _tree_to_node(tree.negative, conjugate),
        }
    if conjugate:
        assert isinstance(tree.witness, ConjugateProduct)
        factors = [
            {
                "conjugator": freegroup.word_to_text(e.conjugator),
                "base": e.base,
                "sign": e.sign,
            }
            for e in tree.witness.entries
        ]
    else:
        assert isinstance(tree.witness, Factorization)
        factors = list(tree.witness.factors)
    return {"kind": "leaf", "factors": factors}


def _node_to_tree(node: dict, conjugate: bool) -> RefutationTree:
    if not isinstance(node, dict):
        raise CertificateFormatError("tree nodes must be objects")
    kind = _require(node, "kind", str)
    if kind == "branch":
        return RefutationBranch(
            _parse_word(_require(node, "pivot", str)),
            _node_to_tree(_require(node, "positive", dict), conjugate),
            _node_to_tree(_require(node, "negative", dict), conjugate),
        )
    if kind != "leaf":
        raise CertificateFormatError(f"unknown tree node kind {kind!r}")
    factors = _require(node, "factors", list)
    if conjugate:
        entries = []
        for item in factors:
            if not isinstance(item, dict):
                raise CertificateFormatError("conjugate factors must be objects")
            entries.append(
                ConjugateEntry(
                    _parse_word(_require(item, "conjugator", str)),
                    _require(item, "base", int),
                    _require(item, "sign", int),
                )
            )
        return RefutationLeaf(ConjugateProduct(tuple(entries)))
    if not all(isinstance(i, int) for i in factors):
        raise CertificateFormatError("factor indices must be integers")
    return RefutationLeaf(Factorization(tuple(factors)))


def refutation_doc(words, arity: int, tree: RefutationTree, flavor: str) -> dict:
    if flavor not in ("right_order", "order"):
        raise ValueError("flavor must be right_order or order")
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "refutation",
        "flavor": flavor,
        "arity": arity,
        "words": _word_list(words),
        "tree": _tree_to_node(tree, conjugate=flavor == "order"),
    }


# ---------------------------------------------------------------------------
# verification of loaded witness files


def verify_witness_doc(doc: dict) -> list[str]:
    """Re-assert the invariants a witness file claims; empty list means good."""
    kind = _require(doc, "kind", str)
    if kind == "truncated_right_order":
        _check_schema(doc, kind)
        witness = TruncatedRightOrder(
            _require(doc, "arity", int),
            _require(doc, "level", int),
            frozenset(_parse_word(w) for w in _require(doc, "elements", list)),
        )
        return witness.violations()
    if kind == "separator":
        _check_schema(doc, kind)
        arity = _require(doc, "arity", int)
        y = _require(doc, "functional", list)
        issues = []
        for text in _require(doc, "words", list):
            vector = freegroup.abelianize(_parse_word(text), arity)
            if sum(a * b for a, b in zip(y, vector)) >= 0:
                issues.append(f"functional is not negative on {text!r}")
        return issues
    if kind == "abelian_order_witness":
        _check_schema(doc, kind)
        arity = _require(doc, "arity", int)
        y = _require(doc, "functional", list)
        issues = []
        for text in _require(doc, "words", list):
            vector = freegroup.abelianize(_parse_word(text), arity)
            if sum(a * b for a, b in zip(y, vector)) <= 0:
                issues.append(f"functional is not positive on {text!r}")
        return issues
    if kind == "sign_assignment":
        _check_schema(doc, kind)
        from . import membership

        words = [_parse_word(w) for w in _require(doc, "words", list)]
        signed = []
        for item in _require(doc, "signs", list):
            pivot = _parse_word(_require(item, "pivot", str))
            sign = _require(item, "sign", int)
            signed.append(pivot if sign > 0 else freegroup.inv(pivot))
        found, _ = membership.contains_identity(tuple(words) + tuple(signed))
        return ["signed generators reach the identity"] if found else []
    if kind == "refutation":
        _check_schema(doc, kind)
        flavor = _require(doc, "flavor", str)
        words = tuple(_parse_word(w) for w in _require(doc, "words", list))
        tree = _node_to_tree(_require(doc, "tree", dict), conjugate=flavor == "order")
        error = verify_refutation_tree(words, tree, conjugate=flavor == "order")
        return [error] if error else []
    if kind == "bounds_exhausted":
        _check_schema(doc, kind)
        return []
    raise CertificateFormatError(f"unknown witness kind {kind!r}")
