"""The ultrapower: classes of sequences modulo an ultrafilter.

Two kinds of sequence stand for points of the ultrapower:

* :class:`EPSeq`, an eventually periodic sequence. Every index set built from
  finitely many of them is an :class:`~ultrapower.epset.EPSet`, so equality
  and order of their classes are decidable.
* :class:`OpaqueSeq`, an arbitrary total function ``n -> element``. Claims
  about an opaque point are only accepted through a :class:`Certificate`
  whose support is an ultrafilter member on which the claim holds pointwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

from .epset import EPSet, check_period
from .errors import (
    DescriptorMismatch,
    FalsifiedCertificate,
    InvalidCertificate,
    UndecidableWithoutCertificate,
)
from .orders import OrderedSet, Ordering, descriptor_from_dict
from .ultrafilter import UltrafilterTrace

__all__ = [
    "EPSeq",
    "OpaqueSeq",
    "HyperPoint",
    "Certificate",
    "VerificationReport",
    "RELATIONS",
    "index_set",
    "index_set_leq",
    "index_set_lt",
    "index_set_eq",
    "hyper_equal",
    "hyper_cmp",
    "standard_part",
    "embed_constant",
    "compare_with_certificate",
]

RELATIONS: dict[str, Callable[[int], bool]] = {
    "leq": lambda o: o <= 0,
    "lt": lambda o: o < 0,
    "eq": lambda o: o == 0,
}
SYMBOLS = {"leq": "<=", "lt": "<", "eq": "=="}


class EPSeq:
    """``prefix[n]`` for ``n < len(prefix)``, then ``cycle`` repeated forever.

    Kept canonical: shortest cycle, then shortest prefix.

    >>> from ultrapower.orders import Integers
    >>> EPSeq(Integers(), [0, 1, 0, 1], [0, 1])
    EPSeq(Z, prefix=[], cycle=[0, 1])
    """

    __slots__ = ("descriptor", "prefix", "cycle", "_hash")

    def __init__(self, descriptor: OrderedSet, prefix: Sequence = (), cycle: Sequence = ()):
        cycle = list(cycle)
        if not cycle:
            raise ValueError("the cycle of an eventually periodic sequence must be non-empty")
        prefix = list(prefix)
        for x in prefix + cycle:
            descriptor.check(x)
        length = len(cycle)
        for d in range(1, length + 1):
            if length % d == 0 and all(cycle[i] == cycle[i % d] for i in range(d, length)):
                cycle = cycle[:d]
                break
        while prefix and prefix[-1] == cycle[-1]:
            prefix.pop()
            cycle = cycle[-1:] + cycle[:-1]
        self.descriptor = descriptor
        self.prefix = tuple(prefix)
        self.cycle = tuple(cycle)
        self._hash = hash((descriptor, self.prefix, self.cycle))

    @classmethod
    def constant(cls, descriptor: OrderedSet, t) -> "EPSeq":
        return cls(descriptor, (), (t,))

    @property
    def offset(self) -> int:
        return len(self.prefix)

    @property
    def period(self) -> int:
        return len(self.cycle)

    def at(self, n: int):
        if n < len(self.prefix):
            return self.prefix[n]
        return self.cycle[(n - len(self.prefix)) % len(self.cycle)]

    __getitem__ = at
    __call__ = at

    def is_constant(self) -> bool:
        return not self.prefix and len(self.cycle) == 1

    def __eq__(self, other):
        if not isinstance(other, EPSeq):
            return NotImplemented
        return (self.descriptor, self.prefix, self.cycle) == (other.descriptor, other.prefix, other.cycle)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        d = self.descriptor
        return (
            f"EPSeq({d}, prefix={[d.encode(x) for x in self.prefix]}, "
            f"cycle={[d.encode(x) for x in self.cycle]})"
        )

    def describe(self) -> str:
        d = self.descriptor
        head = " ".join(d.format(x) for x in self.prefix)
        tail = " ".join(d.format(x) for x in self.cycle)
        return f"{head} ({tail})*".strip() if head else f"({tail})*"

    def to_dict(self, with_set: bool = True) -> dict:
        d = self.descriptor
        doc = {"prefix": [d.encode(x) for x in self.prefix], "cycle": [d.encode(x) for x in self.cycle]}
        if with_set:
            doc = {"set": d.to_dict(), **doc}
        return doc

    @classmethod
    def from_dict(cls, doc: dict, descriptor: OrderedSet | None = None) -> "EPSeq":
        if descriptor is None:
            descriptor = descriptor_from_dict(doc.get("set"))
        elif "set" in doc and descriptor_from_dict(doc["set"]) != descriptor:
            raise DescriptorMismatch("sequence carrier differs from the enclosing document's")
        prefix = doc.get("prefix", [])
        cycle = doc.get("cycle")
        if not isinstance(prefix, list) or not isinstance(cycle, list):
            raise ValueError("'prefix' and 'cycle' must be lists")
        return cls(descriptor, [descriptor.decode(v) for v in prefix], [descriptor.decode(v) for v in cycle])


@dataclass(frozen=True, eq=False)
class OpaqueSeq:
    """A sequence known only through a total, effect-free function.

    ``sample_bound`` caps how many eventual indices a certificate check may
    evaluate.
    """

    descriptor: OrderedSet
    fn: Callable[[int], object]
    sample_bound: int = 4096
    name: str = "opaque"

    def at(self, n: int):
        return self.fn(n)

    __getitem__ = at
    __call__ = at

    def __repr__(self):
        return f"OpaqueSeq({self.name!r} over {self.descriptor})"


HyperPoint = Union[EPSeq, OpaqueSeq]


def _same_carrier(a: HyperPoint, b: HyperPoint) -> OrderedSet:
    if a.descriptor != b.descriptor:
        raise DescriptorMismatch(f"{a.descriptor} vs {b.descriptor}")
    return a.descriptor


def _require_ep(*points: HyperPoint):
    for p in points:
        if not isinstance(p, EPSeq):
            raise UndecidableWithoutCertificate(f"{p!r} can only be compared through a certificate")


def index_set(a: EPSeq, b: EPSeq, relation: str) -> EPSet:
    """``{n : a_n R b_n}`` for ``R`` one of ``leq``, ``lt``, ``eq``."""
    d = _same_carrier(a, b)
    _require_ep(a, b)
    rel = RELATIONS[relation]
    offset = max(a.offset, b.offset)
    period = check_period(math.lcm(a.period, b.period))
    return EPSet.from_window(offset, period, lambda n: rel(d._cmp(a.at(n), b.at(n))))


def index_set_leq(a: EPSeq, b: EPSeq) -> EPSet:
    return index_set(a, b, "leq")


def index_set_lt(a: EPSeq, b: EPSeq) -> EPSet:
    return index_set(a, b, "lt")


def index_set_eq(a: EPSeq, b: EPSeq) -> EPSet:
    return index_set(a, b, "eq")


def hyper_equal(u: UltrafilterTrace, a: HyperPoint, b: HyperPoint) -> bool:
    return index_set_eq(a, b) in u


def hyper_cmp(u: UltrafilterTrace, a: HyperPoint, b: HyperPoint) -> Ordering:
    eq = index_set_eq(a, b) in u
    lt = index_set_lt(a, b) in u
    gt = index_set_lt(b, a) in u
    # the three index sets partition the naturals, so exactly one is accepted
    assert eq + lt + gt == 1, (a, b)
    if eq:
        return Ordering.EQUAL
    return Ordering.LESS if lt else Ordering.GREATER


def hyper_leq(u: UltrafilterTrace, a: HyperPoint, b: HyperPoint) -> bool:
    return index_set_leq(a, b) in u


def hyper_lt(u: UltrafilterTrace, a: HyperPoint, b: HyperPoint) -> bool:
    return index_set_lt(a, b) in u


def standard_part(u: UltrafilterTrace, a: EPSeq):
    """The element ``t`` whose constant class equals the class of ``a``.

    An eventually periodic sequence is constant on the selected residue
    class modulo its cycle length, and that class lies in the ultrafilter.
    """
    _require_ep(a)
    r = u.residue(a.period)
    n = a.offset + (r - a.offset) % a.period
    return a.at(n)


def embed_constant(descriptor: OrderedSet, t) -> EPSeq:
    return EPSeq.constant(descriptor, t)


@dataclass(frozen=True, eq=False)
class Certificate:
    """Claim ``left R right`` backed by an ultrafilter member ``support``."""

    relation: str
    left: HyperPoint
    right: HyperPoint
    support: EPSet
    label: str = ""

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")
        _same_carrier(self.left, self.right)

    def holds_at(self, n: int) -> bool:
        d = self.left.descriptor
        return RELATIONS[self.relation](d._cmp(self.left.at(n), self.right.at(n)))

    def describe(self) -> str:
        return self.label or f"left {SYMBOLS[self.relation]} right"


@dataclass(frozen=True)
class VerificationReport:
    label: str
    relation: str
    verified: bool
    exact: bool
    support: EPSet
    checked: int
    sample_bound: int | None = None
    indices: tuple = field(default=(), repr=False)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "relation": self.relation,
            "verified": self.verified,
            "mode": "exact" if self.exact else "sampled",
            "support": self.support.to_dict(),
            "checked_indices": self.checked,
            "sample_bound": self.sample_bound,
        }


def certificate_sample(u: UltrafilterTrace, cert: Certificate) -> tuple[list[int], int | None]:
    """Indices a sampled check evaluates, and the bound applied to them.

    All prefix members of the support, then the support members among the
    first three full periods of its tail, the selected residue class first,
    capped by the smallest declared bound of the opaque points involved.
    """
    s = cert.support
    head = [n for n in range(s.offset) if n in s]
    window = range(s.offset, s.offset + 3 * s.period)
    r = u.residue(s.period)
    selected = [n for n in window if n % s.period == r]
    rest = [n for n in window if n % s.period != r and n in s]
    bounds = [p.sample_bound for p in (cert.left, cert.right) if isinstance(p, OpaqueSeq)]
    bound = min(bounds) if bounds else None
    tail = selected + rest
    if bound is not None:
        tail = tail[:bound]
    return head + tail, bound


def compare_with_certificate(u: UltrafilterTrace, cert: Certificate) -> VerificationReport:
    """Check a certificate; raises on rejection, returns the report otherwise.

    Between two eventually periodic points the support is compared against
    the exact index set of the claim. Otherwise the claim is evaluated at the
    indices chosen by :func:`certificate_sample`.
    """
    label = cert.describe()
    if cert.support not in u:
        raise InvalidCertificate(f"{label}: support {cert.support.describe()} is not in the ultrafilter")
    if isinstance(cert.left, EPSeq) and isinstance(cert.right, EPSeq):
        holds = index_set(cert.left, cert.right, cert.relation)
        bad = cert.support - holds
        if bad != EPSet.empty():
            raise FalsifiedCertificate(bad.first_from(0), f"{label}: claim fails at index {bad.first_from(0)}")
        return VerificationReport(label, cert.relation, True, True, cert.support, cert.support.offset + cert.support.period)
    indices, bound = certificate_sample(u, cert)
    for n in indices:
        if not cert.holds_at(n):
            raise FalsifiedCertificate(n, f"{label}: claim fails at index {n}")
    return VerificationReport(label, cert.relation, True, False, cert.support, len(indices), bound, tuple(indices))
