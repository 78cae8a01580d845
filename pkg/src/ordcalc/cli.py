"""Command line front end.

Verbs: decide, prove (decide with a required proof file), order-extend,
check-proof, crosscheck.  Exit codes: 0 VALID/YES, 1 INVALID/NO,
2 UNKNOWN, 3 usage or input errors, 4 internal errors.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from typing import Sequence

from . import abelian, calculus, certio, freegroup, rightorder, term
from .calculus import CalculusId, Hypersequent, Sequent
from .freegroup import ReducedWord
from .verdicts import INVALID, VALID, Verdict, combine, exit_code_for
from .witnesses import BoundsReport, SignAssignment, TruncatedRightOrder

EXIT_USAGE = 3
EXIT_INTERNAL = 4

_CALCULUS_FOR_VARIETY = {
    "abelian": CalculusId.GA,
    "lgroup": CalculusId.GLGSTAR,
    "representable": CalculusId.GRGSTAR,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep argparse away from exit code 2
        raise UsageError(message)


def _parse_goals(text: str, arity: int | None):
    """Return (conjunct goals, inferred arity).

    A conjunct goal is a Hypersequent; input is either ``e <=`` followed by
    a term, or sequents separated by ``|``.
    """
    stripped = text.strip()
    if not stripped:
        raise UsageError("empty hypersequent")
    if stripped.replace(" ", "").startswith("e<="):
        body = stripped.split("<=", 1)[1]
        parsed = term.parse_term(body, arity)
        normal = term.normalize(parsed)
        inferred = max(normal.max_generator(), 1)
        goals = [
            Hypersequent.of(calculus.canonical_sequent(w) for w in joinands)
            for joinands in normal.conjuncts
        ]
        return goals, (arity or inferred)
    raws = [freegroup.scan_literals(part, arity) for part in stripped.split("|")]
    inferred = max((abs(c) for raw in raws for c in raw), default=1)
    goal = Hypersequent.of(Sequent(raw) for raw in raws)
    return [goal], (arity or inferred)


def _parse_words(text: str, arity: int | None):
    words = []
    for part in text.replace(",", " ").split():
        words.append(freegroup.word_from_text(part, arity))
    if not words:
        raise UsageError("no words given")
    inferred = max((w.max_generator() for w in words), default=1) or 1
    return words, (arity or inferred)


def _decide_conjunct(args, words: Sequence[ReducedWord], arity: int) -> Verdict:
    if args.variety == "abelian":
        return abelian.validity_abelian(words, arity)
    if args.variety == "lgroup":
        if args.procedure == "hm":
            return rightorder.decide_lg_hm(words, arity)
        return rightorder.decide_lg_cs(words, arity)
    pivots = None
    if args.pivots:
        pivots = [freegroup.word_from_text(p, arity) for p in args.pivots.split(",")]
    return rightorder.decide_rg(words, arity, args.bound_L, pivots)


def _witness_doc(words, arity: int, verdict: Verdict) -> dict:
    certificate = verdict.certificate
    if isinstance(certificate, TruncatedRightOrder):
        return certio.truncated_order_doc(certificate)
    if isinstance(certificate, abelian.Separator):
        return certio.separator_doc(words, arity, certificate.functional)
    if isinstance(certificate, SignAssignment):
        return certio.sign_assignment_doc(words, arity, certificate)
    if isinstance(certificate, BoundsReport):
        return certio.bounds_doc(certificate)
    raise UsageError("this verdict carries no witness to write")


def _write(path: str, doc: dict) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(certio.dumps(doc))


def _verify_witness_file(path: str) -> None:
    with open(path, encoding="utf-8") as handle:
        doc = certio.loads(handle.read())
    issues = certio.verify_witness_doc(doc)
    if issues:
        raise RuntimeError(
            "witness file failed verification: " + "; ".join(issues)
        )
    print(f"witness file verified: {path}")


def _cmd_decide(args) -> int:
    if args.procedure and args.variety != "lgroup":
        raise UsageError("--procedure applies to the lgroup variety only")
    if args.variety != "representable" and (
        args.bound_L != rightorder.DEFAULT_CONJUGATOR_BOUND or args.pivots
    ):
        raise UsageError("--bound-L/--pivots apply to the representable variety only")
    if args.verify_witness and not args.witness:
        raise UsageError("--verify-witness requires --witness")
    goals, arity = _parse_goals(args.input, args.arity)
    verdicts = []
    for index, goal in enumerate(goals):
        words = sorted(goal.words)
        verdict = _decide_conjunct(args, words, arity)
        verdicts.append((goal, words, verdict))
        print(f"conjunct {index + 1}/{len(goals)}: {verdict.status}")
    overall = combine([v.status for _, _, v in verdicts])
    print(overall)

    if args.proof:
        if overall == VALID:
            doc = certio.proof_doc(
                _CALCULUS_FOR_VARIETY[args.variety],
                [(goal, v.certificate) for goal, _, v in verdicts],
            )
            _write(args.proof, doc)
            print(f"proof written: {args.proof}")
        else:
            print("no proof written: verdict is not VALID", file=sys.stderr)
    if args.witness:
        bad = next(((g, w, v) for g, w, v in verdicts if v.status != VALID), None)
        if bad is None:
            print("no witness written: verdict is VALID", file=sys.stderr)
        else:
            _write(args.witness, _witness_doc(bad[1], arity, bad[2]))
            print(f"witness written: {args.witness}")
            if args.verify_witness:
                _verify_witness_file(args.witness)
    return exit_code_for(overall)


def _cmd_order_extend(args) -> int:
    if args.verify_witness and not args.witness:
        raise UsageError("--verify-witness requires --witness")
    words, arity = _parse_words(args.words, args.arity)
    if any(w.is_identity for w in words):
        raise UsageError("the identity cannot be ordered strictly positive")
    words = list(dict.fromkeys(words))
    if args.kind == "right":
        outcome = rightorder.extend_right_order(words, arity)
        if isinstance(outcome, TruncatedRightOrder):
            print("YES: the set extends to a right order")
            if args.witness:
                _write(args.witness, certio.truncated_order_doc(outcome))
                if args.verify_witness:
                    _verify_witness_file(args.witness)
            return 0
        print("NO: the set does not extend to a right order")
        if args.witness:
            _write(
                args.witness,
                certio.refutation_doc(words, arity, outcome, "right_order"),
            )
            if args.verify_witness:
                _verify_witness_file(args.witness)
        return 1

    tree = rightorder.rg_refute_bounded(words, arity, args.bound_L)
    if tree is not None:
        print("NO: the set does not extend to an order")
        if args.witness:
            _write(args.witness, certio.refutation_doc(words, arity, tree, "order"))
            if args.verify_witness:
                _verify_witness_file(args.witness)
        return 1
    vectors = [freegroup.abelianize(w, arity) for w in words]
    separator = abelian.find_separator(vectors)
    if separator is not None:
        functional = tuple(-c for c in separator)
        print("YES: the set extends to an order (abelian-quotient witness)")
        if args.witness:
            _write(args.witness, certio.abelian_order_doc(words, arity, functional))
            if args.verify_witness:
                _verify_witness_file(args.witness)
        return 0
    print("UNKNOWN: search bounds exhausted")
    if args.witness:
        reps = rightorder._pivot_representatives(rightorder.cis(words))
        _write(args.witness, certio.bounds_doc(BoundsReport(args.bound_L, reps)))
    return 2


def _cmd_check_proof(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as handle:
            doc = certio.loads(handle.read())
        declared, conjuncts = certio.load_proof(doc)
    except (OSError, certio.CertificateFormatError) as exc:
        print(f"proof file rejected: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.calculus:
        try:
            effective = CalculusId(args.calculus)
        except ValueError:
            raise UsageError(f"unknown calculus {args.calculus!r}") from None
    else:
        effective = declared
    for index, (goal, derivation) in enumerate(conjuncts):
        result = calculus.check(effective, derivation, goal)
        if not result:
            path = "/".join(map(str, result.path)) or "root"
            print(
                f"REJECTED conjunct {index + 1} at node {path}: {result.message}"
            )
            return 1
    print(f"accepted: {len(conjuncts)} conjunct(s) in {effective.value}")
    return 0


def _soundness_sample(goal_words, rng: random.Random, rounds: int) -> bool:
    arity = max((w.max_generator() for w in goal_words), default=1) or 1
    for _ in range(rounds):
        assignment = [rng.randint(-10, 10) for _ in range(arity)]
        if max(freegroup.evaluate_word(w, assignment) for w in goal_words) < 0:
            return False
    return True


_COUNTERS = (
    "instances",
    "valid",
    "invalid",
    "disagreements",
    "checker_rejections",
    "witness_failures",
    "soundness_failures",
)


def _crosscheck_instance(payload) -> dict:
    """Run one corpus instance; instances share nothing, so workers can fan out."""
    letters, arity, samples, seed = payload
    instance_words = [ReducedWord(tuple(l)) for l in letters]
    counts = dict.fromkeys(_COUNTERS, 0)
    counts["instances"] = 1
    cs = rightorder.decide_lg_cs(instance_words, arity)
    hm = rightorder.decide_lg_hm(instance_words, arity)
    outcome = rightorder.extend_right_order(instance_words, arity)
    extends = isinstance(outcome, TruncatedRightOrder)
    if not (cs.status == hm.status and extends == (cs.status == INVALID)):
        counts["disagreements"] = 1
        return counts
    if cs.status == VALID:
        counts["valid"] = 1
        goal = Hypersequent.of(
            calculus.canonical_sequent(w) for w in instance_words
        )
        for verdict in (cs, hm):
            if not calculus.check(CalculusId.GLGSTAR, verdict.certificate, goal):
                counts["checker_rejections"] += 1
        rng = random.Random(f"{seed}:{letters}")
        if not _soundness_sample(list(goal.words), rng, samples):
            counts["soundness_failures"] = 1
    else:
        counts["invalid"] = 1
        if not cs.certificate.verify():
            counts["witness_failures"] = 1
    return counts


def _cmd_crosscheck(args) -> int:
    from itertools import combinations

    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    seed = int(os.environ.get("ORDCALC_SEED", "271828"))
    pool = [
        w
        for w in freegroup.ball(args.arity, args.max_length)
        if not w.is_identity
    ]
    payloads = []
    for size in range(1, args.max_size + 1):
        payloads.extend(
            (tuple(w.letters for w in subset), args.arity, args.samples, seed)
            for subset in combinations(pool, size)
        )
    if args.jobs == 1:
        results = map(_crosscheck_instance, payloads)
    else:
        from concurrent.futures import ProcessPoolExecutor

        executor = ProcessPoolExecutor(max_workers=args.jobs)
        results = executor.map(_crosscheck_instance, payloads, chunksize=16)
    counts = dict.fromkeys(_COUNTERS, 0)
    for result in results:
        for key, value in result.items():
            counts[key] += value
    if args.jobs > 1:
        executor.shutdown()
    width = max(len(k) for k in counts)
    for key, value in counts.items():
        print(f"{key.ljust(width)}  {value}")
    failed = (
        counts["disagreements"]
        or counts["checker_rejections"]
        or counts["witness_failures"]
        or counts["soundness_failures"]
    )
    return 1 if failed else 0


def _add_decide_arguments(sub: argparse.ArgumentParser, proof_required: bool) -> None:
    sub.add_argument("input", help="hypersequent 'G1 | G2 | ...' or 'e <= TERM'")
    sub.add_argument(
        "--variety",
        required=True,
        choices=("abelian", "lgroup", "representable"),
    )
    sub.add_argument("--arity", type=int, default=None)
    sub.add_argument("--proof", required=proof_required, help="write the derivation file here")
    sub.add_argument("--witness", help="write the countermodel/witness file here")
    sub.add_argument("--verify-witness", action="store_true")
    sub.add_argument("--procedure", choices=("cs", "hm"), default=None)
    sub.add_argument(
        "--bound-L",
        type=int,
        default=rightorder.DEFAULT_CONJUGATOR_BOUND,
        help="conjugator length bound (representable only)",
    )
    sub.add_argument("--pivots", help="comma-separated pivot words (representable only)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ordcalc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    decide = sub.add_parser("decide", help="decide validity in a variety")
    _add_decide_arguments(decide, proof_required=False)
    decide.set_defaults(handler=_cmd_decide)

    prove = sub.add_parser("prove", help="decide and write the proof file")
    _add_decide_arguments(prove, proof_required=True)
    prove.set_defaults(handler=_cmd_decide)

    extend = sub.add_parser("order-extend", help="order extension queries")
    extend.add_argument("words", help="comma or space separated words")
    extend.add_argument("--kind", required=True, choices=("right", "total"))
    extend.add_argument("--arity", type=int, default=None)
    extend.add_argument("--witness", help="write the witness file here")
    extend.add_argument("--verify-witness", action="store_true")
    extend.add_argument(
        "--bound-L", type=int, default=rightorder.DEFAULT_CONJUGATOR_BOUND
    )
    extend.set_defaults(handler=_cmd_order_extend)

    checkp = sub.add_parser("check-proof", help="verify a derivation file")
    checkp.add_argument("file")
    checkp.add_argument("--calculus", help="check under this calculus instead")
    checkp.set_defaults(handler=_cmd_check_proof)

    cross = sub.add_parser("crosscheck", help="run the procedure-agreement corpus")
    cross.add_argument("--arity", type=int, default=2)
    cross.add_argument("--max-length", type=int, default=2)
    cross.add_argument("--max-size", type=int, default=3)
    cross.add_argument(
        "--samples", type=int, default=50, help="soundness samples per valid instance"
    )
    cross.add_argument(
        "--jobs", type=int, default=1, help="worker processes for the corpus"
    )
    cross.set_defaults(handler=_cmd_crosscheck)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (
        freegroup.WordSyntaxError,
        term.TermSyntaxError,
        certio.CertificateFormatError,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
