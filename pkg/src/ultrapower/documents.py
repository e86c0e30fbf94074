"""JSON documents read and written by the command line tool.

Every top-level document carries ``"schema": "ultrapower/1"`` and a
``"type"``. Nested objects (an EPSeq inside a chain, an EPSet inside a
certificate) omit both.

========== ===================================================================
type       payload
========== ===================================================================
set        ``{"set": <descriptor>}`` or the descriptor itself
epseq      ``{"set": <descriptor>, "prefix": [...], "cycle": [...]}``
chain      ``{"set": ..., "strictness": "closed", "levels": [{"a": .., "b": ..}]}``
values     ``{"set": ..., "values": [...]}``
selector   ``{"pairs": [[p, r], ...]}``
trace      written by the tool; re-checked by ``verify``
report     written by the tool
========== ===================================================================
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .epset import EPSet
from .errors import DescriptorMismatch, DocumentError, IncompatibleSelector
from .hyper import Certificate, EPSeq, OpaqueSeq, compare_with_certificate
from .orders import OrderedSet, descriptor_from_dict
from .ultrafilter import (
    MinusOneSelector,
    ProfiniteSelector,
    ResidueSelector,
    TableSelector,
    UltrafilterTrace,
    ZeroSelector,
)
from .witnesses import ChainDescriptor, WitnessTrace

SCHEMA = "ultrapower/1"


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def digest(doc) -> str:
    blob = json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return "sha256:" + hashlib.sha256(blob.encode()).hexdigest()


def stamp(doc_type: str, payload: dict) -> dict:
    return {"schema": SCHEMA, "type": doc_type, **payload}


def load(path, expected: str | None = None) -> dict:
    """Read a JSON document, reporting syntax errors with their line."""
    source = str(path)
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read: {exc.strerror}", source=source) from None
    return loads(text, expected, source=source)


def loads(text: str, expected: str | None = None, *, source=None) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, source=source, line=exc.lineno) from None
    if not isinstance(doc, dict):
        raise DocumentError("top level must be an object", source=source, line=1)
    schema = doc.get("schema", SCHEMA)
    if schema != SCHEMA:
        raise DocumentError(f"unsupported schema {schema!r} (expected {SCHEMA!r})", source=source)
    kind = doc.get("type")
    if expected is not None and kind is not None and kind != expected:
        raise DocumentError(f"expected a {expected!r} document, got {kind!r}", source=source)
    return doc


class _Reader:
    """Converts low-level errors into :class:`DocumentError` with a path."""

    def __init__(self, source=None):
        self.source = source

    def fail(self, path, exc):
        return DocumentError(str(exc), source=self.source, path=path)

    def descriptor(self, doc, path="set") -> OrderedSet:
        try:
            return descriptor_from_dict(doc)
        except (ValueError, TypeError) as exc:
            raise self.fail(path, exc) from None

    def epseq(self, doc, descriptor=None, path="$") -> EPSeq:
        if not isinstance(doc, dict):
            raise self.fail(path, "expected an object with 'prefix' and 'cycle'")
        if descriptor is None:
            if "set" not in doc:
                raise self.fail(path, "missing 'set'")
            descriptor = self.descriptor(doc["set"], f"{path}.set")
        try:
            return EPSeq.from_dict(doc, descriptor)
        except (ValueError, TypeError, DescriptorMismatch) as exc:
            raise self.fail(path, exc) from None

    def epset(self, doc, path="$") -> EPSet:
        try:
            return EPSet.from_dict(doc)
        except (ValueError, TypeError, KeyError) as exc:
            raise self.fail(path, exc) from None


def read_descriptor(doc, source=None) -> OrderedSet:
    r = _Reader(source)
    return r.descriptor(doc["set"] if "set" in doc else doc)


def read_epseq(doc, source=None) -> EPSeq:
    return _Reader(source).epseq(doc)


def read_epset(doc, source=None) -> EPSet:
    return _Reader(source).epset(doc)


def read_chain(doc, source=None) -> ChainDescriptor:
    r = _Reader(source)
    if "set" not in doc:
        raise r.fail("$", "missing 'set'")
    d = r.descriptor(doc["set"])
    levels = doc.get("levels")
    if not isinstance(levels, list) or not levels:
        raise r.fail("levels", "expected a non-empty list")
    pairs = []
    for i, level in enumerate(levels):
        if not isinstance(level, dict) or "a" not in level or "b" not in level:
            raise r.fail(f"levels[{i}]", "expected an object with 'a' and 'b'")
        pairs.append((r.epseq(level["a"], d, f"levels[{i}].a"), r.epseq(level["b"], d, f"levels[{i}].b")))
    strictness = doc.get("strictness", "closed")
    if strictness not in ("closed", "open"):
        raise r.fail("strictness", f"must be 'closed' or 'open', not {strictness!r}")
    return ChainDescriptor(d, tuple(pairs), strictness)


def chain_to_dict(chain: ChainDescriptor) -> dict:
    return {
        "set": chain.descriptor.to_dict(),
        "strictness": chain.strictness,
        "levels": [{"a": a.to_dict(False), "b": b.to_dict(False)} for a, b in chain.levels],
    }


def read_values(doc, source=None) -> tuple[OrderedSet, list]:
    r = _Reader(source)
    if "set" not in doc:
        raise r.fail("$", "missing 'set'")
    d = r.descriptor(doc["set"])
    values = doc.get("values")
    if not isinstance(values, list):
        raise r.fail("values", "expected a list")
    out = []
    for i, v in enumerate(values):
        try:
            out.append(d.decode(v))
        except DescriptorMismatch as exc:
            raise r.fail(f"values[{i}]", exc) from None
    return d, out


def values_to_dict(d: OrderedSet, values) -> dict:
    return {"set": d.to_dict(), "values": [d.encode(x) for x in values]}


# -- selectors ------------------------------------------------------------

def read_selector_table(doc, source=None) -> TableSelector:
    pairs = doc.get("pairs") if isinstance(doc, dict) else doc
    if not isinstance(pairs, list):
        raise DocumentError("a selector table lists 'pairs' of [p, r]", source=source)
    clean = []
    for i, pair in enumerate(pairs):
        if (
            not isinstance(pair, (list, tuple))
            or len(pair) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in pair)
        ):
            raise DocumentError(f"entry {i} is not an integer pair", source=source, path=f"pairs[{i}]")
        clean.append(tuple(pair))
    try:
        return TableSelector(clean)
    except IncompatibleSelector as exc:
        raise IncompatibleSelector(f"{source}: {exc}" if source else str(exc)) from None


def selector_from_spec(spec: str) -> ResidueSelector:
    """Parse ``zero``, ``minus-one``, ``random:<seed>`` or ``table:<file>``."""
    if spec == "zero":
        return ZeroSelector()
    if spec == "minus-one":
        return MinusOneSelector()
    kind, _, arg = spec.partition(":")
    if kind == "random" and arg:
        try:
            return ProfiniteSelector(int(arg))
        except ValueError:
            raise DocumentError(f"bad seed in selector {spec!r}") from None
    if kind == "table" and arg:
        return read_selector_table(load(arg, "selector"), source=arg)
    raise DocumentError(f"unknown selector {spec!r}; use zero, minus-one, random:<seed> or table:<file>")


def selector_from_dict(doc) -> ResidueSelector:
    kind = doc.get("kind")
    if kind == "zero":
        return ZeroSelector()
    if kind == "minus-one":
        return MinusOneSelector()
    if kind == "random":
        return ProfiniteSelector(int(doc["seed"]))
    if kind == "table":
        return read_selector_table(doc)
    raise DocumentError(f"unknown selector kind {kind!r}")


# -- traces ---------------------------------------------------------------

def trace_to_dict(trace: WitnessTrace, u: UltrafilterTrace) -> dict:
    """Serialize a trace with its named points and certificates.

    The witness is written as its eventually periodic materialization, so
    the document can be re-checked exactly without re-running anything.
    """
    d = trace.witness.descriptor
    points = trace.points
    names = {id(p): name for name, p in points.items()}
    names[id(trace.witness)] = "c"
    table = {name: p.to_dict(False) for name, p in points.items()}
    table["c"] = trace.witness_ep.to_dict(False)

    def name_of(p):
        try:
            return names[id(p)]
        except KeyError:
            raise KeyError(f"unnamed point {p!r} in certificate") from None

    return {
        "kind": trace.kind,
        "set": d.to_dict(),
        "selector": u.selector.to_dict(),
        "depth": trace.depth,
        "points": table,
        "D_sets": {str(k): s.to_dict() for k, s in trace.D_sets.items()},
        "alpha": [trace.alpha[n] for n in sorted(trace.alpha)],
        "witness": "c",
        "certificates": [
            {
                "label": c.label,
                "relation": c.relation,
                "left": name_of(c.left),
                "right": name_of(c.right),
                "support": c.support.to_dict(),
            }
            for c in trace.certificates
        ],
        "log": list(trace.report),
    }


def read_trace_certificates(doc, source=None) -> tuple[UltrafilterTrace, list[Certificate]]:
    r = _Reader(source)
    try:
        d = r.descriptor(doc["set"])
        u = UltrafilterTrace(selector_from_dict(doc["selector"]))
        points = {name: r.epseq(p, d, f"points.{name}") for name, p in doc["points"].items()}
        certs = [
            Certificate(c["relation"], points[c["left"]], points[c["right"]], r.epset(c["support"]), c.get("label", ""))
            for c in doc["certificates"]
        ]
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, DocumentError):
            raise
        raise DocumentError(f"malformed trace: {exc}", source=source) from None
    return u, certs


def verify_trace(doc, source=None) -> list:
    u, certs = read_trace_certificates(doc, source)
    return [compare_with_certificate(u, c) for c in certs]


def point_to_dict(p) -> dict:
    if isinstance(p, OpaqueSeq):
        raise TypeError("opaque sequences have no document form")
    return p.to_dict()
