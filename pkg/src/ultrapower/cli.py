"""Command line front end.

Each subcommand reads JSON documents, runs one construction and prints a
JSON report. The exit status is 0 when the outcome is verified; other codes
are listed in :mod:`ultrapower.errors`.
"""

from __future__ import annotations

import argparse
import datetime
import random
import sys
import time
from pathlib import Path

from . import documents as docs
from .epset import DEFAULT_PERIOD_CAP, EPSet, period_cap
from .errors import EXIT_CERTIFICATE, EXIT_OK, CertificateError, DescriptorMismatch, DocumentError, UltrapowerError
from .hyper import compare_with_certificate, hyper_cmp, index_set_eq, index_set_lt, standard_part
from .random_objects import random_epset
from .ultrafilter import UltrafilterTrace, cover_select, frechet_contains
from .witnesses import (
    collapse_cover,
    cantor_witness,
    density_counterexample,
    finite_collapse,
    inf_refuter,
    open_cantor_witness,
    sup_refuter,
)


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--selector", default="zero", help="zero | minus-one | random:<seed> | table:<file>")
    common.add_argument("--period-cap", type=_positive, default=DEFAULT_PERIOD_CAP, help="largest index-set period")
    common.add_argument("--no-timestamp", action="store_true", help="omit wall time and timestamp from the report")
    common.add_argument("-o", "--output", help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="ultrapower", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compare", parents=[common], help="order two eventually periodic sequences")
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("cantor", parents=[common], help="common point of a nested interval chain")
    p.add_argument("chain")
    p.add_argument("--open", action="store_true", help="treat the intervals as open (needs a dense carrier)")
    p.add_argument("--depth", type=_positive, help="use only the first DEPTH levels")

    p = sub.add_parser("refute", parents=[common], help="show a bound of the constants t_k is not least")
    p.add_argument("mode", choices=["sup", "inf"])
    p.add_argument("values")
    p.add_argument("bound")
    p.add_argument("--depth", type=_positive)

    p = sub.add_parser("collapse", parents=[common], help="constant class of a sequence over a finite chain")
    p.add_argument("sequence")

    p = sub.add_parser("check-axioms", parents=[common], help="randomized ultrafilter axiom check")
    p.add_argument("--samples", type=_positive, default=1000)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("counterexample", parents=[common], help="empty open hyper-interval of a non-dense set")
    p.add_argument("set")
    p.add_argument("--depth", type=_positive, default=3)

    p = sub.add_parser("verify", parents=[common], help="re-check the certificates of a saved report or trace")
    p.add_argument("document")
    return parser


def _selector_from_args(args) -> UltrafilterTrace:
    return UltrafilterTrace(docs.selector_from_spec(args.selector))


def _verify_all(u, certs):
    results, ok = [], True
    for c in certs:
        try:
            results.append(compare_with_certificate(u, c).to_dict())
        except CertificateError as exc:
            ok = False
            results.append({"label": c.label, "relation": c.relation, "verified": False, "error": str(exc)})
    return results, ok


def cmd_compare(args, u):
    left = docs.read_epseq(docs.load(args.left, "epseq"), args.left)
    right = docs.read_epseq(docs.load(args.right, "epseq"), args.right)
    if left.descriptor != right.descriptor:
        raise DocumentError(f"carriers differ: {left.descriptor} vs {right.descriptor}", source=args.right)
    verdict = hyper_cmp(u, left, right)
    deciding = {
        "Less": ("left < right", index_set_lt(left, right)),
        "Equal": ("left == right", index_set_eq(left, right)),
        "Greater": ("left > right", index_set_lt(right, left)),
    }[verdict.name.title()]
    d = left.descriptor
    outcome = {
        "verdict": verdict.name.title(),
        "deciding_relation": deciding[0],
        "deciding_set": deciding[1].to_dict(),
        "standard_parts": [d.encode(standard_part(u, left)), d.encode(standard_part(u, right))],
    }
    inputs = {"left": left.to_dict(), "right": right.to_dict()}
    return inputs, outcome, [], True


def cmd_cantor(args, u):
    chain = docs.read_chain(docs.load(args.chain, "chain"), args.chain)
    if args.depth:
        chain = chain.truncated(args.depth)
    if args.open or chain.strictness == "open":
        trace = open_cantor_witness(u, chain)
    else:
        trace = cantor_witness(u, chain)
    results, ok = _verify_all(u, trace.certificates)
    outcome = {"trace": docs.trace_to_dict(trace, u)}
    return {"chain": docs.chain_to_dict(chain)}, outcome, results, ok


def cmd_refute(args, u):
    d, values = docs.read_values(docs.load(args.values, "values"), args.values)
    bound = docs.read_epseq(docs.load(args.bound, "epseq"), args.bound)
    if bound.descriptor != d:
        raise DocumentError(f"bound lives in {bound.descriptor}, values in {d}", source=args.bound)
    run = sup_refuter if args.mode == "sup" else inf_refuter
    trace = run(u, values, bound, args.depth)
    results, ok = _verify_all(u, trace.certificates)
    outcome = {"mode": args.mode, "trace": docs.trace_to_dict(trace, u)}
    inputs = {"values": docs.values_to_dict(d, values[: trace.depth]), "bound": bound.to_dict()}
    return inputs, outcome, results, ok


def cmd_collapse(args, u):
    seq = docs.read_epseq(docs.load(args.sequence, "epseq"), args.sequence)
    t = finite_collapse(u, seq)
    cover = collapse_cover(seq)
    d = seq.descriptor
    outcome = {
        "element": d.encode(t),
        "selected_index": cover_select(u, cover),
        "cover": [{"element": d.encode(x), "indices": s.to_dict()} for x, s in zip(d.elements(), cover)],
    }
    return {"sequence": seq.to_dict()}, outcome, [], True


def cmd_check_axioms(args, u):
    rng = random.Random(args.seed)
    names = ["upward_closed", "intersections", "infinite_members", "ultra", "frechet_inside"]
    violations = {k: 0 for k in names}
    checked = {k: 0 for k in names}
    for _ in range(args.samples):
        k, l, extra = random_epset(rng), random_epset(rng), random_epset(rng)
        inside = k in u
        sup = k | extra
        checked["upward_closed"] += inside
        violations["upward_closed"] += inside and sup not in u
        both = inside and l in u
        checked["intersections"] += both
        violations["intersections"] += both and (k & l) not in u
        checked["infinite_members"] += 1
        violations["infinite_members"] += inside and not k.is_infinite
        checked["ultra"] += 1
        violations["ultra"] += inside == ((~k) in u)
        cof = EPSet.cofinite(rng.sample(range(40), rng.randint(0, 8)))
        checked["frechet_inside"] += 1
        violations["frechet_inside"] += frechet_contains(cof) and cof not in u
    summary = {
        n: {"checked": checked[n], "violations": violations[n], "passed": violations[n] == 0} for n in names
    }
    ok = all(v == 0 for v in violations.values())
    return {"samples": args.samples, "seed": args.seed}, {"axioms": summary, "passed": ok}, [], ok


def cmd_counterexample(args, u):
    d = docs.read_descriptor(docs.load(args.set, "set"), args.set)
    found = density_counterexample(d, depth=args.depth)
    if found is None:
        outcome = {"dense": True, "counterexample": None}
    else:
        outcome = {
            "dense": False,
            "counterexample": {
                "p": d.encode(found.p),
                "q": d.encode(found.q),
                "chain": docs.chain_to_dict(found.chain),
                "emptiness_check": found.method,
                "sequences_checked": found.checked,
            },
        }
    return {"set": d.to_dict()}, outcome, [], True


def cmd_verify(args, u):
    doc = docs.load(args.document)
    trace = doc.get("outcome", {}).get("trace") if doc.get("type") == "report" else doc
    if not isinstance(trace, dict):
        raise DocumentError("no trace found", source=args.document)
    t_u, certs = docs.read_trace_certificates(trace, args.document)
    results, ok = _verify_all(t_u, certs)
    return {"document_digest": docs.digest(trace)}, {"certificates": len(certs), "all_verified": ok}, results, ok


COMMANDS = {
    "compare": cmd_compare,
    "cantor": cmd_cantor,
    "refute": cmd_refute,
    "collapse": cmd_collapse,
    "check-axioms": cmd_check_axioms,
    "counterexample": cmd_counterexample,
    "verify": cmd_verify,
}


def run(args) -> tuple[dict, int]:
    started = time.perf_counter()
    with period_cap(args.period_cap):
        u = _selector_from_args(args)
        inputs, outcome, results, ok = COMMANDS[args.command](args, u)
    report = docs.stamp(
        "report",
        {
            "command": args.command,
            "inputs": inputs,
            "inputs_digest": docs.digest(inputs),
            "selector": u.selector.to_dict(),
            "period_cap": args.period_cap,
            "outcome": outcome,
            "certificates": results,
            "verified": ok,
        },
    )
    if not args.no_timestamp:
        report["wall_time_s"] = round(time.perf_counter() - started, 6)
        report["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    return report, EXIT_OK if ok else EXIT_CERTIFICATE


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = run(args)
    except DescriptorMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DocumentError.exit_code
    except UltrapowerError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    text = docs.dumps(report)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
